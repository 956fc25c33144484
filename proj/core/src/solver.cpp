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

#include "icnnm/solver.hpp"

#include <Eigen/SVD>
#include <chrono>
#include <cmath>
#include <functional>

#include "icnnm/conv_op.hpp"

namespace icnnm {

void SolverConfig::validate() const {
  if (lambda <= 0) throw std::invalid_argument("SolverConfig: lambda must be > 0");
  if (theta0 && *theta0 <= 0)
    throw std::invalid_argument("SolverConfig: theta0 must be > 0");
  if (theta_growth < 1)
    throw std::invalid_argument("SolverConfig: theta_growth must be >= 1");
  if (theta_max <= 0) throw std::invalid_argument("SolverConfig: theta_max must be > 0");
  if (theta0 && *theta0 > theta_max)
    throw std::invalid_argument("SolverConfig: theta0 must be <= theta_max");
  if (max_iters < 1) throw std::invalid_argument("SolverConfig: max_iters must be >= 1");
  if (tol_primal <= 0 || tol_change <= 0 || rank_tol <= 0)
    throw std::invalid_argument("SolverConfig: tolerances must be > 0");
  if (init_fill != "zero" && init_fill != "mean")
    throw std::invalid_argument("SolverConfig: init_fill must be 'zero' or 'mean'");
}

Eigen::MatrixXd prox_l21(const Eigen::MatrixXd& W, double tau) {
  if (tau < 0) throw std::invalid_argument("prox_l21: tau must be >= 0");
  Eigen::MatrixXd Z = W;
  for (Index c = 0; c < Z.cols(); ++c) {
    const double n = Z.col(c).norm();
    Z.col(c) *= (n > tau) ? (1.0 - tau / n) : 0.0;
  }
  return Z;
}

Eigen::MatrixXd svt(const Eigen::MatrixXd& W, double tau) {
  if (tau < 0) throw std::invalid_argument("svt: tau must be >= 0");
  Eigen::BDCSVD<Eigen::MatrixXd> svd(W, Eigen::ComputeThinU | Eigen::ComputeThinV);
  Eigen::VectorXd s = (svd.singularValues().array() - tau).max(0.0);
  return svd.matrixU() * s.asDiagonal() * svd.matrixV().transpose();
}

namespace {

// Shared ADMM loop; the two programs differ only in the Z-update.
std::pair<DenseTensor, SolveReport> admm_solve(
    const DenseTensor& M_obs, const SamplingMask& mask, const KernelShape& ks,
    const Eigen::MatrixXd& K, const SolverConfig& cfg,
    const std::function<Eigen::MatrixXd(const Eigen::MatrixXd&, double)>& z_update) {
  cfg.validate();
  ks.validate_for(M_obs.dims());
  if (mask.dims() != M_obs.dims())
    throw std::invalid_argument("solve: mask dims != observation dims");
  if (mask.observed_count() == 0)
    throw std::invalid_argument("solve: empty sampling set");
  M_obs.check_finite("solve: observations");

  const auto t_start = std::chrono::steady_clock::now();
  const Index m = M_obs.size();
  const Index k = ks.count();
  const double lambda = cfg.lambda;

  const Eigen::VectorXd& theta_mask = mask.tensor().values();
  const Eigen::VectorXd pm = M_obs.values().cwiseProduct(theta_mask);  // P_Omega(M)

  DenseTensor L(M_obs.dims(), pm);
  if (cfg.init_fill == "mean") {
    const double mean = pm.sum() / static_cast<double>(mask.observed_count());
    L.values() += (1.0 - theta_mask.array()).matrix() * mean;
  }

  double theta = cfg.theta0.value_or(1e-2 * pm.cwiseAbs().maxCoeff() *
                                     static_cast<double>(k));
  if (theta <= 0) theta = 1e-2;
  theta = std::min(theta, cfg.theta_max);

  BasisConvolver conv(M_obs.dims(), ks, K);
  const Eigen::MatrixXd Kt = K.transpose();

  // ||A_k(M)||_F = sqrt(k) ||M||_F, columns being shift permutations.
  double res_scale = std::sqrt(static_cast<double>(k)) * pm.norm();
  if (res_scale == 0) res_scale = 1.0;

  Eigen::MatrixXd AKL = conv.apply(L);
  Eigen::MatrixXd Z = AKL;
  Eigen::MatrixXd Y = Eigen::MatrixXd::Zero(m, k);

  SolveReport report;
  report.termination = "max_iters";

  for (int it = 0; it < cfg.max_iters; ++it) {
    Z = z_update(AKL - Y / theta, 1.0 / theta);

    const Eigen::MatrixXd WK = (Y + theta * Z) * Kt;
    const DenseTensor adj = conv_adjoint(WK, ks, M_obs.dims());
    const Eigen::VectorXd numer =
        adj.values() / static_cast<double>(k) + lambda * pm;
    const Eigen::VectorXd denom =
        (lambda * theta_mask.array() + theta).matrix();
    Eigen::VectorXd L_new = numer.cwiseQuotient(denom);

    const double l_change =
        (L_new - L.values()).norm() / std::max(L.values().norm(), 1e-300);
    L.values() = std::move(L_new);
    AKL = conv.apply(L);

    const Eigen::MatrixXd gap = Z - AKL;
    const double residual = gap.norm() / res_scale;
    Y += theta * gap;
    theta = std::min(theta * cfg.theta_growth, cfg.theta_max);

    double col_sum = 0;
    for (Index c = 0; c < k; ++c) col_sum += Z.col(c).norm();
    const double fit = (L.values() - M_obs.values()).cwiseProduct(theta_mask).squaredNorm();
    report.objective.push_back(col_sum +
                               0.5 * lambda * static_cast<double>(k) * fit);
    report.primal_residual.push_back(residual);
    report.iterations = it + 1;

    if (residual < cfg.tol_primal || l_change < cfg.tol_change) {
      report.termination = "converged";
      break;
    }
  }

  report.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
          .count();
  return {std::move(L), std::move(report)};
}

}  // namespace

std::pair<DenseTensor, SolveReport> icnnm_solve(const DenseTensor& M_obs,
                                                const SamplingMask& mask,
                                                const EigenBasis& basis,
                                                const SolverConfig& cfg) {
  basis.validate();
  return admm_solve(M_obs, mask, basis.kernel_shape, basis.K, cfg,
                    [](const Eigen::MatrixXd& W, double tau) {
                      return prox_l21(W, tau);
                    });
}

std::pair<DenseTensor, SolveReport> cnnm_solve(const DenseTensor& M_obs,
                                               const SamplingMask& mask,
                                               const KernelShape& ks,
                                               const SolverConfig& cfg) {
  const Eigen::MatrixXd K = Eigen::MatrixXd::Identity(ks.count(), ks.count());
  return admm_solve(M_obs, mask, ks, K, cfg,
                    [](const Eigen::MatrixXd& W, double tau) {
                      return svt(W, tau);
                    });
}

double objective_icnnm(const DenseTensor& L, const DenseTensor& M_obs,
                       const SamplingMask& mask, const EigenBasis& basis,
                       double lambda) {
  basis.validate();
  basis.kernel_shape.validate_for(L.dims());
  if (!L.same_dims(M_obs) || mask.dims() != L.dims())
    throw std::invalid_argument("objective_icnnm: dim mismatch");
  BasisConvolver conv(L.dims(), basis.kernel_shape, basis.K);
  const Eigen::MatrixXd AKL = conv.apply(L);
  double col_sum = 0;
  for (Index c = 0; c < AKL.cols(); ++c) col_sum += AKL.col(c).norm();
  const double fit = (L.values() - M_obs.values())
                         .cwiseProduct(mask.tensor().values())
                         .squaredNorm();
  return col_sum + 0.5 * lambda * static_cast<double>(basis.k()) * fit;
}

}  // namespace icnnm
