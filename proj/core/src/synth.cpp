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

#include "icnnm/synth.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "icnnm/fft.hpp"
#include "icnnm/spectral.hpp"

namespace icnnm {

DenseTensor synth_low_conv_rank(const Dims& dims, const KernelShape& ks,
                                Index target_rank, std::uint64_t seed) {
  ks.validate_for(dims);
  const Index k = ks.count();
  if (target_rank < 1 || target_rank > k)
    throw std::invalid_argument("synth_low_conv_rank: infeasible target rank");

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);

  DenseTensor out(dims);
  if (target_rank >= k) {
    for (Index i = 0; i < out.size(); ++i) out[i] = unit(rng);
    return out;
  }
  if (target_rank == 1) {
    double c = 0.0;
    while (std::abs(c) < 0.1) c = unit(rng);
    out.values().setConstant(c);
    return out;
  }

  // One cosine atom occupies the +-f spectral bins, so it contributes at
  // most 2 to the convolution rank; distinct frequency pairs keep the atoms
  // spectrally disjoint. An odd budget spends one atom on the DC term.
  const bool use_dc = (target_rank % 2) != 0;
  const Index n_cos = (use_dc ? target_rank - 1 : target_rank) / 2;

  std::uniform_real_distribution<double> amp(0.5, 1.5);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);

  std::set<Dims> used;
  if (use_dc) {
    out.values().setConstant(amp(rng));
    used.insert(Dims(dims.size(), 0));
  }

  for (Index a = 0; a < n_cos; ++a) {
    Dims f(dims.size());
    Dims canon(dims.size());
    for (int attempt = 0;; ++attempt) {
      if (attempt > 1000)
        throw std::runtime_error("synth_low_conv_rank: frequency sampling stuck");
      bool zero = true;
      for (std::size_t j = 0; j < dims.size(); ++j) {
        std::uniform_int_distribution<Index> fd(0, dims[j] - 1);
        f[j] = fd(rng);
        if (f[j] != 0) zero = false;
        canon[j] = std::min(f[j], dims[j] - f[j]);
      }
      if (!zero && used.insert(canon).second) break;
    }
    const double A = amp(rng);
    const double phi = phase(rng);
    for_each_index(dims, [&](Index flat, std::span<const Index> idx) {
      double arg = phi;
      for (std::size_t j = 0; j < dims.size(); ++j)
        arg += 2.0 * std::numbers::pi * static_cast<double>(f[j]) *
               static_cast<double>(idx[j]) / static_cast<double>(dims[j]);
      out[flat] += A * std::cos(arg);
    });
  }

  const ConvSpectrum spec = conv_spectrum(out, ks, 1e-8);
  if (spec.rank > target_rank)
    throw std::runtime_error("synth_low_conv_rank: rank check failed");
  return out;
}

DenseTensor synth_smooth_field(const Dims& dims, double cutoff_fraction,
                               std::uint64_t seed) {
  if (cutoff_fraction <= 0 || cutoff_fraction > 1)
    throw std::invalid_argument("synth_smooth_field: cutoff must be in (0, 1]");
  const Index m = dims_product(dims);
  DenseTensor noise(dims);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (Index i = 0; i < m; ++i) noise[i] = gauss(rng);

  NdFft fft(dims);
  std::vector<std::complex<double>> freq(static_cast<std::size_t>(m));
  fft.forward(noise.values().data(), freq.data());
  for_each_index(dims, [&](Index flat, std::span<const Index> idx) {
    double w = 1.0;
    for (std::size_t j = 0; j < dims.size(); ++j) {
      const double fj = static_cast<double>(std::min(idx[j], dims[j] - idx[j])) /
                        (0.5 * static_cast<double>(dims[j]));
      // raised-cosine rolloff towards the cutoff
      const double x = fj / cutoff_fraction;
      w *= x >= 1.0 ? 0.0 : 0.5 * (1.0 + std::cos(std::numbers::pi * x));
    }
    freq[static_cast<std::size_t>(flat)] *= w;
  });
  DenseTensor field(dims);
  fft.inverse_real(freq.data(), field.values().data());

  const double lo = field.values().minCoeff();
  const double hi = field.values().maxCoeff();
  if (hi > lo)
    field.values() = (field.values().array() - lo) / (hi - lo);
  return field;
}

}  // namespace icnnm
