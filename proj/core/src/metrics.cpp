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

#include "icnnm/metrics.hpp"

#include <cmath>
#include <limits>

namespace icnnm {

namespace {
void check_same_dims(const DenseTensor& a, const DenseTensor& b) {
  if (!a.same_dims(b)) throw std::invalid_argument("metrics: dim mismatch");
}
}  // namespace

double mse(const DenseTensor& ref, const DenseTensor& est) {
  check_same_dims(ref, est);
  return (ref.values() - est.values()).squaredNorm() /
         static_cast<double>(ref.size());
}

double psnr(const DenseTensor& ref, const DenseTensor& est, double peak) {
  const double e = mse(ref, est);
  if (e == 0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(peak * peak / e);
}

double ssim(const DenseTensor& ref, const DenseTensor& est, double peak) {
  check_same_dims(ref, est);
  if (ref.order() != 2) throw std::invalid_argument("ssim: order-2 tensors only");
  const Index h = ref.dims()[0];
  const Index w = ref.dims()[1];
  const Index win = 8;
  if (h < win || w < win) throw std::invalid_argument("ssim: image smaller than window");
  const double c1 = (0.01 * peak) * (0.01 * peak);
  const double c2 = (0.03 * peak) * (0.03 * peak);

  double total = 0;
  Index count = 0;
  for (Index y = 0; y + win <= h; y += win) {
    for (Index x = 0; x + win <= w; x += win) {
      double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
      for (Index dy = 0; dy < win; ++dy) {
        for (Index dx = 0; dx < win; ++dx) {
          const double a = ref[(y + dy) * w + (x + dx)];
          const double b = est[(y + dy) * w + (x + dx)];
          sx += a; sy += b; sxx += a * a; syy += b * b; sxy += a * b;
        }
      }
      const double n = static_cast<double>(win * win);
      const double mx = sx / n, my = sy / n;
      const double vx = sxx / n - mx * mx;
      const double vy = syy / n - my * my;
      const double cxy = sxy / n - mx * my;
      total += ((2 * mx * my + c1) * (2 * cxy + c2)) /
               ((mx * mx + my * my + c1) * (vx + vy + c2));
      ++count;
    }
  }
  return total / static_cast<double>(count);
}

MetricsReport compute_metrics(const DenseTensor& ref, const DenseTensor& est,
                              double peak) {
  MetricsReport r;
  r.mse = mse(ref, est);
  r.psnr = psnr(ref, est, peak);
  if (ref.order() == 2 && ref.dims()[0] >= 8 && ref.dims()[1] >= 8)
    r.ssim = ssim(ref, est, peak);
  if (ref.order() == 3) {
    const Index frames = ref.dims()[0];
    const Index per = ref.size() / frames;
    Dims fd(ref.dims().begin() + 1, ref.dims().end());
    for (Index f = 0; f < frames; ++f) {
      DenseTensor a(fd, ref.values().segment(f * per, per));
      DenseTensor b(fd, est.values().segment(f * per, per));
      r.per_frame_psnr.push_back(psnr(a, b, peak));
    }
  }
  return r;
}

}  // namespace icnnm
