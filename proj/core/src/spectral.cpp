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

#include "icnnm/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>

#include "icnnm/fft.hpp"

namespace icnnm {

void EigenBasis::validate() const {
  const Index kk = k();
  if (K.rows() != kk || K.cols() != kk)
    throw std::invalid_argument("EigenBasis: K must be k x k");
  if (eigenvalues.size() != kk)
    throw std::invalid_argument("EigenBasis: eigenvalue count mismatch");
  const double orth =
      (K.transpose() * K - Eigen::MatrixXd::Identity(kk, kk)).cwiseAbs().maxCoeff();
  if (orth > 1e-10)
    throw std::invalid_argument("EigenBasis: K is not orthogonal");
  for (Index i = 0; i < kk; ++i) {
    if (eigenvalues[i] < 0)
      throw std::invalid_argument("EigenBasis: negative eigenvalue");
    if (i > 0 && eigenvalues[i] > eigenvalues[i - 1] + 1e-12)
      throw std::invalid_argument("EigenBasis: eigenvalues not nonincreasing");
  }
}

void fix_column_signs(Eigen::MatrixXd& M) {
  for (Index c = 0; c < M.cols(); ++c) {
    for (Index r = 0; r < M.rows(); ++r) {
      if (std::abs(M(r, c)) > 1e-12) {
        if (M(r, c) < 0) M.col(c) = -M.col(c);
        break;
      }
    }
  }
}

Eigen::MatrixXd conv_gram(const DenseTensor& L, const KernelShape& ks) {
  ks.validate_for(L.dims());
  const Index k = ks.count();
  const DenseTensor R = circular_autocorrelation(L);
  const Dims& dims = L.dims();
  const Index n = static_cast<Index>(dims.size());

  // Flat offsets of every kernel multi-index, for (s - t) mod dims lookups.
  std::vector<Dims> offsets(static_cast<std::size_t>(k));
  for_each_index(ks.dims, [&](Index flat, std::span<const Index> idx) {
    offsets[static_cast<std::size_t>(flat)] = Dims(idx.begin(), idx.end());
  });

  Eigen::MatrixXd G(k, k);
  Dims d(dims.size());
  for (Index s = 0; s < k; ++s) {
    for (Index t = 0; t <= s; ++t) {
      for (Index j = 0; j < n; ++j) {
        Index v = (offsets[s][j] - offsets[t][j]) % dims[j];
        d[j] = v < 0 ? v + dims[j] : v;
      }
      const double val = R[R.flat_index(d)];
      G(s, t) = val;
      G(t, s) = val;
    }
  }
  return G;
}

namespace {

// Eigendecomposition of a symmetric PSD k x k matrix, returned with
// nonincreasing eigenvalues and sign-fixed eigenvectors.
void psd_eig_sorted(const Eigen::MatrixXd& G, Eigen::VectorXd& evals,
                    Eigen::MatrixXd& evecs) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G);
  const Index k = G.rows();
  evals.resize(k);
  evecs.resize(k, k);
  for (Index i = 0; i < k; ++i) {
    evals[i] = std::max(0.0, es.eigenvalues()[k - 1 - i]);
    evecs.col(i) = es.eigenvectors().col(k - 1 - i);
  }
  fix_column_signs(evecs);
}

}  // namespace

ConvSpectrum conv_spectrum(const DenseTensor& L, const KernelShape& ks, double tol) {
  ks.validate_for(L.dims());
  const Index k = ks.count();
  ConvSpectrum spec;
  spec.kernel_shape = ks;

  if (L.norm() == 0.0) {
    spec.singular_values = Eigen::VectorXd::Zero(k);
    spec.eigenvectors = Eigen::MatrixXd::Identity(k, k);
    spec.rank = 0;
    spec.degenerate = true;
    return spec;
  }

  const Eigen::MatrixXd G = conv_gram(L, ks);
  Eigen::VectorXd evals;
  psd_eig_sorted(G, evals, spec.eigenvectors);
  spec.singular_values = evals.cwiseSqrt();
  // Rank cut in the eigenvalue domain with a backward-error floor: the
  // eigensolver perturbs the Gram by O(k eps lambda_1), which surfaces as
  // spurious singular values near sqrt(k eps) sigma_1 — above tol * sigma_1
  // for the default tolerance.
  const double floor = static_cast<double>(k) *
                       std::numeric_limits<double>::epsilon() * evals[0];
  const double cut = std::max(tol * tol * evals[0], floor);
  spec.rank = 0;
  for (Index i = 0; i < k; ++i)
    if (evals[i] > cut) ++spec.rank;
  return spec;
}

EigenBasis learn_ensemble_basis(const std::vector<DenseTensor>& refs,
                                const KernelShape& ks) {
  if (refs.empty())
    throw std::invalid_argument("learn_ensemble_basis: empty reference list");
  const Dims& dims = refs.front().dims();
  ks.validate_for(dims);
  const Index k = ks.count();

  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(k, k);
  for (const DenseTensor& ref : refs) {
    if (ref.dims() != dims)
      throw std::invalid_argument("learn_ensemble_basis: dim mismatch among refs");
    G += conv_gram(ref, ks);
  }

  EigenBasis basis;
  basis.kernel_shape = ks;
  if (G.cwiseAbs().maxCoeff() == 0.0) {
    basis.K = Eigen::MatrixXd::Identity(k, k);
    basis.eigenvalues = Eigen::VectorXd::Zero(k);
    basis.degenerate = true;
    return basis;
  }

  Eigen::VectorXd evals;
  psd_eig_sorted(G, evals, basis.K);
  basis.eigenvalues = evals.cwiseSqrt();
  return basis;
}

}  // namespace icnnm
