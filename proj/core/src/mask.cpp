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

#include "icnnm/mask.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace icnnm {

MaskKind MaskSpec::parse_kind(const std::string& name) {
  if (name == "bernoulli") return MaskKind::kBernoulli;
  if (name == "block-grid") return MaskKind::kBlockGrid;
  if (name == "frame-missing") return MaskKind::kFrameMissing;
  if (name == "tail-prediction") return MaskKind::kTailPrediction;
  throw std::invalid_argument("unknown mask kind: " + name);
}

std::string MaskSpec::kind_name(MaskKind kind) {
  switch (kind) {
    case MaskKind::kBernoulli: return "bernoulli";
    case MaskKind::kBlockGrid: return "block-grid";
    case MaskKind::kFrameMissing: return "frame-missing";
    case MaskKind::kTailPrediction: return "tail-prediction";
  }
  return "?";
}

namespace {

void check_rate(double rate) {
  if (rate < 0.0 || rate > 1.0)
    throw std::invalid_argument("mask rate must be in [0, 1]");
}

SamplingMask bernoulli_mask(const Dims& dims, double rate, std::uint64_t seed) {
  const Index m = dims_product(dims);
  const Index observed = static_cast<Index>(std::llround(rate * static_cast<double>(m)));
  std::vector<Index> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), Index{0});
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  DenseTensor t(dims);
  for (Index i = 0; i < observed; ++i) t[order[static_cast<std::size_t>(i)]] = 1.0;
  return SamplingMask(std::move(t));
}

// Missing entries form a lattice of b x ... x b blocks. Blocks with odd
// coordinate parity are removed first, so a 50% rate on a balanced grid
// yields an exact checkerboard.
SamplingMask block_grid_mask(const Dims& dims, double rate, Index b) {
  if (b < 1) throw std::invalid_argument("block-grid: block size must be >= 1");
  Dims grid(dims.size());
  for (std::size_t j = 0; j < dims.size(); ++j) grid[j] = (dims[j] + b - 1) / b;
  const Index nblocks = dims_product(grid);
  const Index missing =
      static_cast<Index>(std::llround((1.0 - rate) * static_cast<double>(nblocks)));

  std::vector<std::pair<Index, Index>> order;  // (parity key, flat block id)
  order.reserve(static_cast<std::size_t>(nblocks));
  for_each_index(grid, [&](Index flat, std::span<const Index> idx) {
    Index parity = std::accumulate(idx.begin(), idx.end(), Index{0}) % 2;
    order.emplace_back(parity == 1 ? 0 : 1, flat);
  });
  std::sort(order.begin(), order.end());

  std::vector<char> block_missing(static_cast<std::size_t>(nblocks), 0);
  for (Index i = 0; i < missing; ++i)
    block_missing[static_cast<std::size_t>(order[static_cast<std::size_t>(i)].second)] = 1;

  DenseTensor t(dims);
  for_each_index(dims, [&](Index flat, std::span<const Index> idx) {
    Index bflat = 0;
    for (std::size_t j = 0; j < dims.size(); ++j)
      bflat = bflat * grid[j] + idx[j] / b;
    t[flat] = block_missing[static_cast<std::size_t>(bflat)] ? 0.0 : 1.0;
  });
  return SamplingMask(std::move(t));
}

SamplingMask frame_mask(const Dims& dims, const std::vector<char>& frame_missing) {
  const Index frames = dims[0];
  const Index per_frame = dims_product(dims) / frames;
  DenseTensor t(dims);
  for (Index f = 0; f < frames; ++f) {
    if (frame_missing[static_cast<std::size_t>(f)]) continue;
    for (Index i = 0; i < per_frame; ++i) t[f * per_frame + i] = 1.0;
  }
  return SamplingMask(std::move(t));
}

}  // namespace

SamplingMask generate_mask(const Dims& dims, const MaskSpec& spec) {
  switch (spec.kind) {
    case MaskKind::kBernoulli:
      check_rate(spec.rate);
      return bernoulli_mask(dims, spec.rate, spec.seed);
    case MaskKind::kBlockGrid:
      check_rate(spec.rate);
      return block_grid_mask(dims, spec.rate, spec.block);
    case MaskKind::kFrameMissing: {
      check_rate(spec.rate);
      const Index frames = dims[0];
      const Index missing = static_cast<Index>(
          std::llround((1.0 - spec.rate) * static_cast<double>(frames)));
      std::vector<Index> order(static_cast<std::size_t>(frames));
      std::iota(order.begin(), order.end(), Index{0});
      std::mt19937_64 rng(spec.seed);
      std::shuffle(order.begin(), order.end(), rng);
      std::vector<char> gone(static_cast<std::size_t>(frames), 0);
      for (Index i = 0; i < missing; ++i)
        gone[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = 1;
      return frame_mask(dims, gone);
    }
    case MaskKind::kTailPrediction: {
      const Index frames = dims[0];
      if (spec.predict_frames < 0 || spec.predict_frames > frames)
        throw std::invalid_argument("tail-prediction: frame count out of range");
      std::vector<char> gone(static_cast<std::size_t>(frames), 0);
      for (Index f = frames - spec.predict_frames; f < frames; ++f)
        gone[static_cast<std::size_t>(f)] = 1;
      return frame_mask(dims, gone);
    }
  }
  throw std::invalid_argument("generate_mask: bad kind");
}

}  // namespace icnnm
