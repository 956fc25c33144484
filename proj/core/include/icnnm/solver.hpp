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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "icnnm/spectral.hpp"
#include "icnnm/tensor.hpp"

namespace icnnm {

/// ADMM configuration shared by the ICNNM and CNNM solvers.
struct SolverConfig {
  double lambda = 1000.0;
  /// Initial penalty; when unset, 1e-2 * max|P_Omega(M)| * k at solve start.
  std::optional<double> theta0;
  double theta_growth = 1.05;
  double theta_max = 1e10;
  int max_iters = 1000;
  double tol_primal = 1e-7;  // relative primal residual
  double tol_change = 1e-8;  // relative iterate change
  double rank_tol = kDefaultRankTol;
  /// Initialization of missing entries: "zero" or "mean".
  std::string init_fill = "zero";

  void validate() const;
};

/// Per-iteration traces and termination status of one ADMM run.
struct SolveReport {
  int iterations = 0;
  std::vector<double> objective;        // ||Z||_{2,1} + (lambda k/2)||P_Omega(L-M)||_F^2
  std::vector<double> primal_residual;  // ||Z - A_k(L)K||_F / ||A_k(M)||_F
  std::string termination;              // "converged" | "max_iters"
  double wall_time_seconds = 0.0;
};

/// Proximal map of tau * ||.||_{2,1}: column-wise shrinkage,
/// w |-> max(0, 1 - tau/||w||) w.
Eigen::MatrixXd prox_l21(const Eigen::MatrixXd& W, double tau);

/// Singular value soft-thresholding at level tau (CNNM's Z-update).
Eigen::MatrixXd svt(const Eigen::MatrixXd& W, double tau);

/// Minimizes ||A_k(L)K||_{2,1} + (lambda k / 2) ||P_Omega(L - M)||_F^2 by
/// ADMM with the splitting Z = A_k(L)K. Matrix-free throughout: A_k(L)K via
/// k FFT convolutions, the adjoint via k inverse shifts.
std::pair<DenseTensor, SolveReport> icnnm_solve(const DenseTensor& M_obs,
                                                const SamplingMask& mask,
                                                const EigenBasis& basis,
                                                const SolverConfig& cfg);

/// Baseline: same ADMM with the nuclear norm in place of the l2,1 norm and
/// K = identity, i.e. singular value thresholding each iteration.
std::pair<DenseTensor, SolveReport> cnnm_solve(const DenseTensor& M_obs,
                                               const SamplingMask& mask,
                                               const KernelShape& ks,
                                               const SolverConfig& cfg);

/// Direct evaluation of the penalized ICNNM objective at L.
double objective_icnnm(const DenseTensor& L, const DenseTensor& M_obs,
                       const SamplingMask& mask, const EigenBasis& basis,
                       double lambda);

}  // namespace icnnm
