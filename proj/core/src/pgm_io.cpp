// Copyright 2026 The ICNNM Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cctype>
#include <cmath>
#include <fstream>

#include "icnnm/io.hpp"

namespace icnnm {

namespace {

// Reads the next whitespace-separated token, skipping '#' comment lines.
int next_pnm_int(std::istream& is) {
  for (;;) {
    int c = is.get();
    if (c == EOF) throw std::runtime_error("PGM: truncated header");
    if (std::isspace(c)) continue;
    if (c == '#') {
      while (c != '\n' && c != EOF) c = is.get();
      continue;
    }
    int value = 0;
    bool any = false;
    while (c != EOF && std::isdigit(c)) {
      value = value * 10 + (c - '0');
      any = true;
      c = is.get();
    }
    if (!any) throw std::runtime_error("PGM: malformed header token");
    return value;
  }
}

}  // namespace

DenseTensor read_pgm(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open file: " + path);
  char m0 = 0, m1 = 0;
  is.get(m0);
  is.get(m1);
  if (m0 != 'P' || m1 != '5')
    throw std::runtime_error("PGM: bad magic in " + path + " (want P5)");
  const int width = next_pnm_int(is);
  const int height = next_pnm_int(is);
  const int maxval = next_pnm_int(is);
  if (width < 1 || height < 1 || maxval < 1 || maxval > 65535)
    throw std::runtime_error("PGM: invalid dimensions or maxval");
  // single whitespace byte after maxval already consumed by the tokenizer

  DenseTensor t(Dims{height, width});
  const Index count = t.size();
  const double scale = 1.0 / static_cast<double>(maxval);
  if (maxval < 256) {
    std::vector<unsigned char> buf(static_cast<std::size_t>(count));
    is.read(reinterpret_cast<char*>(buf.data()), count);
    if (!is) throw std::runtime_error("PGM: truncated pixel data");
    for (Index i = 0; i < count; ++i) t[i] = buf[static_cast<std::size_t>(i)] * scale;
  } else {
    std::vector<unsigned char> buf(static_cast<std::size_t>(count) * 2);
    is.read(reinterpret_cast<char*>(buf.data()), count * 2);
    if (!is) throw std::runtime_error("PGM: truncated pixel data");
    for (Index i = 0; i < count; ++i) {
      const unsigned hi = buf[static_cast<std::size_t>(2 * i)];
      const unsigned lo = buf[static_cast<std::size_t>(2 * i + 1)];
      t[i] = static_cast<double>((hi << 8) | lo) * scale;
    }
  }
  return t;
}

void write_pgm(const std::string& path, const DenseTensor& t, int maxval) {
  if (t.order() != 2) throw std::invalid_argument("write_pgm: order-2 tensors only");
  if (maxval < 1 || maxval > 65535)
    throw std::invalid_argument("write_pgm: maxval out of range");
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot create file: " + path);
  const Index h = t.dims()[0];
  const Index w = t.dims()[1];
  os << "P5\n" << w << " " << h << "\n" << maxval << "\n";
  auto quantize = [&](double v) {
    const long q = std::lround(std::clamp(v, 0.0, 1.0) * maxval);
    return static_cast<unsigned>(q);
  };
  if (maxval < 256) {
    for (Index i = 0; i < t.size(); ++i)
      os.put(static_cast<char>(quantize(t[i]) & 0xff));
  } else {
    for (Index i = 0; i < t.size(); ++i) {
      const unsigned q = quantize(t[i]);
      os.put(static_cast<char>((q >> 8) & 0xff));
      os.put(static_cast<char>(q & 0xff));
    }
  }
  if (!os) throw std::runtime_error("write failed: " + path);
}

}  // namespace icnnm
