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

#include <cstdint>

#include "icnnm/tensor.hpp"

namespace icnnm {

/// Random tensor with convolution rank at most target_rank: a sum of real
/// sinusoidal atoms at distinct frequencies, each occupying at most two
/// spectral bins. target_rank == k returns an unconstrained random tensor.
/// The rank bound is verified post-hoc at tolerance 1e-8.
DenseTensor synth_low_conv_rank(const Dims& dims, const KernelShape& ks,
                                Index target_rank, std::uint64_t seed);

/// Smooth random field in [0, 1]: white noise low-pass filtered in the
/// frequency domain, then affinely rescaled. Stands in for natural-image
/// crops in desk-scale experiments.
DenseTensor synth_smooth_field(const Dims& dims, double cutoff_fraction,
                               std::uint64_t seed);

}  // namespace icnnm
