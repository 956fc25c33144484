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

#pragma once

#include <optional>
#include <vector>

#include "icnnm/tensor.hpp"

namespace icnnm {

struct MetricsReport {
  double mse = 0;
  double psnr = 0;  // +inf when mse == 0 (serialized as null)
  std::optional<double> ssim;
  std::vector<double> per_frame_psnr;  // order-3 tensors only
};

double mse(const DenseTensor& ref, const DenseTensor& est);

/// 10 log10(peak^2 / mse); +infinity when est == ref.
double psnr(const DenseTensor& ref, const DenseTensor& est, double peak = 1.0);

/// Global SSIM with the standard 8x8 uniform-window statistics; order-2
/// tensors only.
double ssim(const DenseTensor& ref, const DenseTensor& est, double peak = 1.0);

MetricsReport compute_metrics(const DenseTensor& ref, const DenseTensor& est,
                              double peak = 1.0);

}  // namespace icnnm
