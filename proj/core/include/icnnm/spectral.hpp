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

#include "icnnm/tensor.hpp"

namespace icnnm {

/// Default relative tolerance for rank and support detection.
inline constexpr double kDefaultRankTol = 1e-8;

/// Orthogonal basis of vectorized convolution kernels with their ensemble
/// convolution eigenvalues, nonincreasing. Column i of K is the i-th kernel
/// flattened row-major.
struct EigenBasis {
  KernelShape kernel_shape;
  Eigen::MatrixXd K;            // k x k orthogonal
  Eigen::VectorXd eigenvalues;  // k, nonincreasing, >= 0
  bool degenerate = false;      // all-zero input, K fell back to identity

  Index k() const { return kernel_shape.count(); }

  /// Column i as a kernel-shaped tensor.
  DenseTensor kernel(Index i) const {
    return DenseTensor(kernel_shape.dims, K.col(i));
  }

  void validate() const;
};

/// Convolution eigenvalues and eigenvectors of a single tensor: the singular
/// values and right singular vectors of its convolution matrix.
struct ConvSpectrum {
  KernelShape kernel_shape;
  Eigen::VectorXd singular_values;  // k, nonincreasing
  Eigen::MatrixXd eigenvectors;     // k x k, column i = vec(kappa_i)
  Index rank = 0;                   // #{sigma_i > tol * sigma_1}
  bool degenerate = false;          // zero tensor

  DenseTensor kernel(Index i) const {
    return DenseTensor(kernel_shape.dims, eigenvectors.col(i));
  }
};

/// Gram matrix A_k(L)^T A_k(L) without materializing A_k(L). Entry (s, t)
/// is the circular autocorrelation of L at offset s - t, so the whole k x k
/// matrix costs one FFT pass plus k^2 lookups.
Eigen::MatrixXd conv_gram(const DenseTensor& L, const KernelShape& ks);

/// Spectrum of a single tensor via eigendecomposition of the k x k Gram.
ConvSpectrum conv_spectrum(const DenseTensor& L, const KernelShape& ks,
                           double tol = kDefaultRankTol);

/// Learns the shared orthogonal eigenbasis of a tensor ensemble: the
/// eigenvectors of the summed Gram, eigenvalue-ordered. Deterministic; each
/// column's first nonzero coordinate is made positive.
EigenBasis learn_ensemble_basis(const std::vector<DenseTensor>& refs,
                                const KernelShape& ks);

/// Fixes the sign of each column so its first coordinate with magnitude
/// above 1e-12 is positive.
void fix_column_signs(Eigen::MatrixXd& M);

}  // namespace icnnm
