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
#include <string>
#include <vector>

#include "icnnm/tensor.hpp"

namespace icnnm {

enum class MaskKind {
  kBernoulli,      // exact-count random sampling at the given rate
  kBlockGrid,      // missing entries arranged as a lattice of b x b blocks
  kFrameMissing,   // whole frames (first axis) missing, chosen by seed
  kTailPrediction, // last `predict_frames` frames fully missing
};

struct MaskSpec {
  MaskKind kind = MaskKind::kBernoulli;
  double rate = 1.0;          // observed fraction rho0, in [0, 1]
  Index block = 2;            // block edge for kBlockGrid
  Index predict_frames = 0;   // for kTailPrediction
  std::uint64_t seed = 0;

  static MaskKind parse_kind(const std::string& name);
  static std::string kind_name(MaskKind kind);
};

/// Deterministic function of (dims, spec) including the seed.
SamplingMask generate_mask(const Dims& dims, const MaskSpec& spec);

}  // namespace icnnm
