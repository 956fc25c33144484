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

#include "icnnm/fft.hpp"
#include "icnnm/tensor.hpp"

namespace icnnm {

/// Default cap on m*k for materializing the explicit convolution matrix.
inline constexpr Index kConvMatrixEntryCap = Index{1} << 26;

/// The m x k convolution matrix of a tensor: column s is the vectorized
/// circular shift of the source by the kernel multi-index s. Explicit form
/// is for desk-scale diagnostics and spectral decomposition; solver paths
/// stay matrix-free.
struct ConvMatrix {
  Eigen::MatrixXd entries;
  Dims source_dims;
  KernelShape kernel_shape;

  Index rows() const { return entries.rows(); }
  Index cols() const { return entries.cols(); }
};

/// Circular shift: out[i] = src[(i - s) mod dims].
DenseTensor circular_shift(const DenseTensor& src, std::span<const Index> shift);

/// Materializes the convolution matrix. Throws when m*k exceeds the cap.
ConvMatrix conv_matrix(const DenseTensor& L, const KernelShape& ks,
                       Index entry_cap = kConvMatrixEntryCap);

/// Matrix-free product conv_matrix(L, ks) * v via one circular convolution.
Eigen::VectorXd conv_apply(const DenseTensor& L, const KernelShape& ks,
                           const Eigen::VectorXd& v);

/// Hermitian adjoint: maps an m x k matrix back to tensor space,
/// A*(W) = sum_s shift_{-s}(unvec(W[:, s])). Satisfies <A(L), W> = <L, A*(W)>
/// and A*(A(L)) = k L.
DenseTensor conv_adjoint(const Eigen::MatrixXd& W, const KernelShape& ks,
                         const Dims& dims);

/// Mask matrix of the convolution sampling set: the convolution matrix of
/// the mask tensor, exactly binary. Every column sums to |Omega|.
Eigen::MatrixXd conv_sampling_mask(const SamplingMask& mask, const KernelShape& ks);

/// Computes A_k(L) * K for a fixed k x k matrix K without materializing
/// A_k(L): column i is vec(L * kernel_i) where kernel_i is column i of K
/// reshaped to the kernel box. Kernel spectra are precomputed once, so each
/// apply costs one forward and k inverse transforms.
class BasisConvolver {
 public:
  BasisConvolver(Dims tensor_dims, KernelShape ks, const Eigen::MatrixXd& K);

  const Dims& tensor_dims() const { return dims_; }
  const KernelShape& kernel_shape() const { return ks_; }
  Index k() const { return static_cast<Index>(kernel_fft_.cols()); }

  /// Returns the m x k matrix A_k(L) K.
  Eigen::MatrixXd apply(const DenseTensor& L);

 private:
  Dims dims_;
  KernelShape ks_;
  NdFft fft_;
  Eigen::MatrixXcd kernel_fft_;  // m x k, column i = DFT of padded kernel i
};

}  // namespace icnnm
