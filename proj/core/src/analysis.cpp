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

#include "icnnm/analysis.hpp"

#include <Eigen/SVD>
#include <cmath>

#include "icnnm/conv_op.hpp"
#include "icnnm/fft.hpp"

namespace icnnm {

namespace {

// Relative convolution eigenvalues sigma^K_i = ||L0 * kernel_i||_F,
// matrix-free via one convolution per basis column.
Eigen::VectorXd relative_eigenvalues(const DenseTensor& L0, const EigenBasis& basis) {
  basis.validate();
  basis.kernel_shape.validate_for(L0.dims());
  const Index k = basis.k();
  NdFft fft(L0.dims());
  Eigen::VectorXd sigma(k);
  for (Index i = 0; i < k; ++i)
    sigma[i] = circular_convolve(fft, L0, basis.kernel(i)).norm();
  return sigma;
}

std::vector<Index> support_from(const Eigen::VectorXd& sigma, double rank_tol) {
  std::vector<Index> support;
  const double smax = sigma.maxCoeff();
  if (smax == 0) return support;
  for (Index i = 0; i < sigma.size(); ++i)
    if (sigma[i] > rank_tol * smax) support.push_back(i);
  return support;
}

// Largest eigenvalue of a symmetric PSD matrix by power iteration,
// deterministic all-ones start.
double power_iteration_top_eig(const Eigen::MatrixXd& S) {
  const Index n = S.rows();
  Eigen::VectorXd v = Eigen::VectorXd::Ones(n) / std::sqrt(static_cast<double>(n));
  double eig = 0;
  for (int it = 0; it < 10000; ++it) {
    Eigen::VectorXd w = S * v;
    const double nw = w.norm();
    if (nw == 0) return 0;
    w /= nw;
    const double new_eig = w.dot(S * w);
    const bool done = std::abs(new_eig - eig) <= 1e-10 * std::max(1.0, std::abs(new_eig));
    eig = new_eig;
    v = std::move(w);
    if (done && it > 0) break;
  }
  return eig;
}

}  // namespace

std::pair<Index, std::vector<Index>> relative_conv_rank(const DenseTensor& L0,
                                                        const EigenBasis& basis,
                                                        double rank_tol) {
  const Eigen::VectorXd sigma = relative_eigenvalues(L0, basis);
  std::vector<Index> support = support_from(sigma, rank_tol);
  return {static_cast<Index>(support.size()), std::move(support)};
}

double spectral_corr_coeff(const DenseTensor& L0, const EigenBasis& basis,
                           double rank_tol) {
  const Eigen::VectorXd sigma = relative_eigenvalues(L0, basis);
  const std::vector<Index> support = support_from(sigma, rank_tol);
  if (support.empty())
    throw std::invalid_argument("spectral_corr_coeff: r_K = 0, undefined");

  // (KD)^T G (KD) restricted to the active support, with G the conv Gram of
  // L0; its top eigenvalue is alpha_K^2.
  const Eigen::MatrixXd G = conv_gram(L0, basis.kernel_shape);
  const Index r = static_cast<Index>(support.size());
  Eigen::MatrixXd KD(basis.k(), r);
  for (Index j = 0; j < r; ++j)
    KD.col(j) = basis.K.col(support[static_cast<std::size_t>(j)]) /
                sigma[support[static_cast<std::size_t>(j)]];
  const Eigen::MatrixXd S = KD.transpose() * G * KD;
  return std::sqrt(std::max(0.0, power_iteration_top_eig(S)));
}

double active_coherence(const EigenBasis& basis, const std::vector<Index>& support_I) {
  if (support_I.empty())
    throw std::invalid_argument("active_coherence: empty support");
  const Index k = basis.k();
  double max_row = 0;
  for (Index r = 0; r < k; ++r) {
    double s = 0;
    for (Index c : support_I) s += basis.K(r, c) * basis.K(r, c);
    max_row = std::max(max_row, s);
  }
  return static_cast<double>(k) / static_cast<double>(support_I.size()) * max_row;
}

ConvCoherence conv_coherence(const DenseTensor& L0, const KernelShape& ks,
                             double rank_tol) {
  if (L0.norm() == 0)
    throw std::invalid_argument("conv_coherence: zero tensor");
  const ConvMatrix A = conv_matrix(L0, ks);
  Eigen::BDCSVD<Eigen::MatrixXd> svd(A.entries,
                                     Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& s = svd.singularValues();
  Index r = 0;
  for (Index i = 0; i < s.size(); ++i)
    if (s[i] > rank_tol * s[0]) ++r;

  const Index m = A.rows();
  const Index k = A.cols();
  const Eigen::MatrixXd U = svd.matrixU().leftCols(r);
  const Eigen::MatrixXd V = svd.matrixV().leftCols(r);
  ConvCoherence out;
  out.rank = r;
  out.mu1 = static_cast<double>(m) / static_cast<double>(r) *
            U.rowwise().squaredNorm().maxCoeff();
  out.mu2 = static_cast<double>(k) / static_cast<double>(r) *
            V.rowwise().squaredNorm().maxCoeff();
  out.tau = s[0] / s[r - 1];
  return out;
}

Thresholds thresholds(const ThresholdInputs& in) {
  Thresholds t;
  const double a2 = in.alpha_K * in.alpha_K;
  const double k = static_cast<double>(in.k);
  const double m = static_cast<double>(in.m);
  const double rk = static_cast<double>(in.r_K);
  const double r0 = static_cast<double>(in.r0);

  t.rho_min_noiseless = 1.0 - k / ((1.0 + a2) * in.mu_K_I * rk * m);
  t.rho_min_noisy = 1.0 - 0.64 * k / ((0.64 + a2) * in.mu_K_I * rk * m);
  t.error_bound_factor = (18.0 * std::sqrt(k) + 2.0) *
                         (in.alpha_K + std::sqrt(1.0 + a2)) / in.alpha_K;
  t.icnnm_ideal_bound = 1.0 - 0.5 * k / (in.mu2 * r0 * m);
  t.cnnm_bound = 1.0 - 0.25 * k / (std::max(in.mu1, in.mu2) * r0 * m);
  t.certified = in.rho0 > t.rho_min_noiseless;
  return t;
}

RecoveryDiagnostics analyze_recovery(const DenseTensor& L0, const EigenBasis& basis,
                                     const SamplingMask& mask, double rank_tol) {
  if (mask.dims() != L0.dims())
    throw std::invalid_argument("analyze_recovery: mask dims != target dims");
  RecoveryDiagnostics d;
  auto [rk, support] = relative_conv_rank(L0, basis, rank_tol);
  d.r_K = rk;
  d.support_I = std::move(support);
  if (d.r_K == 0)
    throw std::invalid_argument("analyze_recovery: zero target, diagnostics undefined");
  d.alpha_K = spectral_corr_coeff(L0, basis, rank_tol);
  d.mu_K_I = active_coherence(basis, d.support_I);
  const ConvCoherence cc = conv_coherence(L0, basis.kernel_shape, rank_tol);
  d.mu1 = cc.mu1;
  d.mu2 = cc.mu2;
  d.tau = cc.tau;
  d.r0 = cc.rank;
  d.rho0 = mask.rate();

  ThresholdInputs in{d.r_K,  d.alpha_K, d.mu_K_I,           d.mu1, d.mu2,
                     d.r0,   basis.k(), L0.size(),          d.rho0};
  const Thresholds t = thresholds(in);
  d.rho_min_noiseless = t.rho_min_noiseless;
  d.rho_min_noisy = t.rho_min_noisy;
  d.error_bound_factor = t.error_bound_factor;
  d.cnnm_bound = t.cnnm_bound;
  d.icnnm_ideal_bound = t.icnnm_ideal_bound;
  d.certified = t.certified;
  return d;
}

}  // namespace icnnm
