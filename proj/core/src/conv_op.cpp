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

#include "icnnm/conv_op.hpp"

namespace icnnm {

DenseTensor circular_shift(const DenseTensor& src, std::span<const Index> shift) {
  const Dims& dims = src.dims();
  if (shift.size() != dims.size())
    throw std::invalid_argument("circular_shift: order mismatch");
  DenseTensor out(dims);
  Dims jdx(dims.size());
  for_each_index(dims, [&](Index flat, std::span<const Index> idx) {
    for (std::size_t j = 0; j < dims.size(); ++j) {
      Index v = (idx[j] - shift[j]) % dims[j];
      jdx[j] = v < 0 ? v + dims[j] : v;
    }
    out[flat] = src[src.flat_index(jdx)];
  });
  return out;
}

ConvMatrix conv_matrix(const DenseTensor& L, const KernelShape& ks, Index entry_cap) {
  ks.validate_for(L.dims());
  const Index m = L.size();
  const Index k = ks.count();
  if (m * k > entry_cap)
    throw std::invalid_argument("conv_matrix: m*k exceeds materialization cap");
  ConvMatrix A{Eigen::MatrixXd(m, k), L.dims(), ks};
  for_each_index(ks.dims, [&](Index col, std::span<const Index> s) {
    A.entries.col(col) = circular_shift(L, s).values();
  });
  return A;
}

Eigen::VectorXd conv_apply(const DenseTensor& L, const KernelShape& ks,
                           const Eigen::VectorXd& v) {
  ks.validate_for(L.dims());
  if (v.size() != ks.count())
    throw std::invalid_argument("conv_apply: vector length != k");
  DenseTensor kernel(ks.dims, v);
  return circular_convolve(L, kernel).values();
}

DenseTensor conv_adjoint(const Eigen::MatrixXd& W, const KernelShape& ks,
                         const Dims& dims) {
  ks.validate_for(dims);
  const Index m = dims_product(dims);
  const Index k = ks.count();
  if (W.rows() != m || W.cols() != k)
    throw std::invalid_argument("conv_adjoint: W shape mismatch with dims/kernel");
  DenseTensor out(dims);
  // out[i] = sum_s W[(i + s) mod dims, s]
  Dims jdx(dims.size());
  for_each_index(ks.dims, [&](Index col, std::span<const Index> s) {
    for_each_index(dims, [&](Index flat, std::span<const Index> idx) {
      for (std::size_t j = 0; j < dims.size(); ++j) {
        Index v = (idx[j] + s[j]) % dims[j];
        jdx[j] = v;
      }
      out[flat] += W(out.flat_index(jdx), col);
    });
  });
  return out;
}

Eigen::MatrixXd conv_sampling_mask(const SamplingMask& mask, const KernelShape& ks) {
  // Columns are circular shifts of a binary tensor, so the result is exactly
  // binary with no rounding involved.
  return conv_matrix(mask.tensor(), ks).entries;
}

BasisConvolver::BasisConvolver(Dims tensor_dims, KernelShape ks, const Eigen::MatrixXd& K)
    : dims_(std::move(tensor_dims)), ks_(std::move(ks)), fft_(dims_) {
  ks_.validate_for(dims_);
  const Index m = dims_product(dims_);
  const Index k = ks_.count();
  if (K.rows() != k || K.cols() != k)
    throw std::invalid_argument("BasisConvolver: K must be k x k");
  kernel_fft_.resize(m, k);
  for (Index i = 0; i < k; ++i) {
    DenseTensor kernel(ks_.dims, K.col(i));
    DenseTensor padded = pad_to(kernel, dims_);
    fft_.forward(padded.values().data(), kernel_fft_.col(i).data());
  }
}

Eigen::MatrixXd BasisConvolver::apply(const DenseTensor& L) {
  if (L.dims() != dims_)
    throw std::invalid_argument("BasisConvolver: tensor dims mismatch");
  const Index m = L.size();
  const Index kk = k();
  Eigen::VectorXcd fl(m);
  fft_.forward(L.values().data(), fl.data());
  Eigen::MatrixXd out(m, kk);
  Eigen::VectorXcd prod(m);
  for (Index i = 0; i < kk; ++i) {
    prod = fl.cwiseProduct(kernel_fft_.col(i));
    fft_.inverse_real(prod.data(), out.col(i).data());
  }
  return out;
}

}  // namespace icnnm
