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

#include <cstring>
#include <fstream>

#include "icnnm/io.hpp"

namespace icnnm {

namespace {

// Host is assumed little-endian (x86/arm64); static_assert guards the
// fixed-width raw writes below.
static_assert(sizeof(double) == 8);

void put_u32(std::ostream& os, std::uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v & 0xff),
                        static_cast<unsigned char>((v >> 8) & 0xff),
                        static_cast<unsigned char>((v >> 16) & 0xff),
                        static_cast<unsigned char>((v >> 24) & 0xff)};
  os.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32(std::istream& is) {
  unsigned char b[4];
  is.read(reinterpret_cast<char*>(b), 4);
  if (!is) throw std::runtime_error("truncated header");
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) |
         (static_cast<std::uint32_t>(b[3]) << 24);
}

void put_f64(std::ostream& os, const double* data, Index count) {
  os.write(reinterpret_cast<const char*>(data), count * 8);
}

void get_f64(std::istream& is, double* data, Index count) {
  is.read(reinterpret_cast<char*>(data), count * 8);
  if (!is) throw std::runtime_error("truncated payload");
}

std::ifstream open_in(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open file: " + path);
  return is;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot create file: " + path);
  return os;
}

void expect_magic(std::istream& is, const char* magic, const std::string& path) {
  char buf[4];
  is.read(buf, 4);
  if (!is || std::memcmp(buf, magic, 4) != 0)
    throw std::runtime_error("bad magic in " + path + " (expected " + magic + ")");
}

Dims read_dims(std::istream& is) {
  const std::uint32_t n = get_u32(is);
  if (n == 0 || n > 16) throw std::runtime_error("implausible tensor order");
  Dims dims(n);
  for (std::uint32_t j = 0; j < n; ++j) {
    dims[j] = get_u32(is);
    if (dims[j] < 1) throw std::runtime_error("zero dimension");
  }
  return dims;
}

}  // namespace

void write_tnsr(const std::string& path, const DenseTensor& t) {
  std::ofstream os = open_out(path);
  os.write("TNSR", 4);
  put_u32(os, static_cast<std::uint32_t>(t.order()));
  for (Index d : t.dims()) put_u32(os, static_cast<std::uint32_t>(d));
  put_f64(os, t.values().data(), t.size());
  if (!os) throw std::runtime_error("write failed: " + path);
}

DenseTensor read_tnsr(const std::string& path) {
  std::ifstream is = open_in(path);
  expect_magic(is, "TNSR", path);
  Dims dims = read_dims(is);
  DenseTensor t(dims);
  get_f64(is, t.values().data(), t.size());
  return t;
}

void write_ebas(const std::string& path, const EigenBasis& basis) {
  basis.validate();
  std::ofstream os = open_out(path);
  os.write("EBAS", 4);
  put_u32(os, static_cast<std::uint32_t>(basis.kernel_shape.order()));
  for (Index d : basis.kernel_shape.dims) put_u32(os, static_cast<std::uint32_t>(d));
  put_f64(os, basis.eigenvalues.data(), basis.eigenvalues.size());
  // Eigen matrices are column-major by default; columns stream contiguously.
  put_f64(os, basis.K.data(), basis.K.size());
  if (!os) throw std::runtime_error("write failed: " + path);
}

EigenBasis read_ebas(const std::string& path) {
  std::ifstream is = open_in(path);
  expect_magic(is, "EBAS", path);
  EigenBasis basis;
  basis.kernel_shape.dims = read_dims(is);
  const Index k = basis.kernel_shape.count();
  basis.eigenvalues.resize(k);
  get_f64(is, basis.eigenvalues.data(), k);
  basis.K.resize(k, k);
  get_f64(is, basis.K.data(), k * k);
  basis.validate();
  return basis;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream os = open_out(path);
  os << text;
  if (!os) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream is = open_in(path);
  return std::string(std::istreambuf_iterator<char>(is),
                     std::istreambuf_iterator<char>());
}

}  // namespace icnnm
