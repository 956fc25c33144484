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

#include <Eigen/Core>
#include <vector>

#include "icnnm/spectral.hpp"
#include "icnnm/tensor.hpp"

namespace icnnm {

/// Everything the recovery theory says about a (target, basis, mask) triple.
/// Note that r_K and the support are tolerance-relative: a column counts as
/// active iff its norm exceeds rank_tol times the largest column norm, so
/// every quantity downstream of the support is a function of rank_tol.
struct RecoveryDiagnostics {
  Index r_K = 0;                    // relative convolution rank
  std::vector<Index> support_I;     // active columns of A_k(L0) K
  double alpha_K = 0;               // spectral correlation coefficient
  double mu_K_I = 0;                // coherence of the active submatrix K_I
  double mu1 = 0, mu2 = 0;          // convolution coherences of L0
  double tau = 0;                   // condition number sigma_1 / sigma_r
  Index r0 = 0;                     // convolution rank of L0
  double rho0 = 0;                  // observed sampling rate
  double rho_min_noiseless = 0;     // exact-recovery threshold
  double rho_min_noisy = 0;         // noisy-recovery threshold
  double error_bound_factor = 0;    // (18 sqrt(k) + 2)(a + sqrt(1+a^2))/a
  double cnnm_bound = 0;            // baseline exact-recovery threshold
  double icnnm_ideal_bound = 0;     // exact-basis specialization
  bool certified = false;           // rho0 > rho_min_noiseless
};

/// Relative convolution rank and active support: column i of A_k(L0)K is
/// active iff ||L0 * kernel_i||_F > rank_tol * max_j ||L0 * kernel_j||_F.
/// Matrix-free (one convolution per column).
std::pair<Index, std::vector<Index>> relative_conv_rank(
    const DenseTensor& L0, const EigenBasis& basis,
    double rank_tol = kDefaultRankTol);

/// Spectral correlation coefficient: operator norm of A_k(L0) K D with the
/// active columns normalized. Power iteration on the k x k normalized Gram,
/// deterministic all-ones start, 1e-10 relative tolerance.
double spectral_corr_coeff(const DenseTensor& L0, const EigenBasis& basis,
                           double rank_tol = kDefaultRankTol);

/// Coherence of the active submatrix: (k / |I|) max_i ||row i of K_I||^2.
double active_coherence(const EigenBasis& basis, const std::vector<Index>& support_I);

struct ConvCoherence {
  double mu1 = 0, mu2 = 0, tau = 0;
  Index rank = 0;
};

/// mu1/mu2 coherences and condition number of the explicit convolution
/// matrix. Diagnostic scale only (same materialization cap as conv_matrix).
ConvCoherence conv_coherence(const DenseTensor& L0, const KernelShape& ks,
                             double rank_tol = kDefaultRankTol);

struct ThresholdInputs {
  Index r_K = 0;
  double alpha_K = 0;
  double mu_K_I = 0;
  double mu1 = 0, mu2 = 0;
  Index r0 = 0;
  Index k = 0;
  Index m = 0;
  double rho0 = 0;
};

struct Thresholds {
  double rho_min_noiseless = 0;
  double rho_min_noisy = 0;
  double error_bound_factor = 0;
  double cnnm_bound = 0;
  double icnnm_ideal_bound = 0;
  bool certified = false;
};

/// Sampling-rate thresholds and the noisy error-bound constant.
Thresholds thresholds(const ThresholdInputs& in);

/// Full diagnostic sweep for a (target, basis, mask) triple.
RecoveryDiagnostics analyze_recovery(const DenseTensor& L0, const EigenBasis& basis,
                                     const SamplingMask& mask,
                                     double rank_tol = kDefaultRankTol);

}  // namespace icnnm
