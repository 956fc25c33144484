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

#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace icnnm {

using Index = std::int64_t;
using Dims = std::vector<Index>;

/// Total number of entries of a dimension vector.
inline Index dims_product(const Dims& dims) {
  Index p = 1;
  for (Index d : dims) p *= d;
  return p;
}

/// Dense real tensor of order n >= 1, stored flat in row-major order
/// (last index fastest).
class DenseTensor {
 public:
  DenseTensor() = default;

  explicit DenseTensor(Dims dims)
      : dims_(std::move(dims)), values_(Eigen::VectorXd::Zero(check_dims(dims_))) {}

  DenseTensor(Dims dims, Eigen::VectorXd values)
      : dims_(std::move(dims)), values_(std::move(values)) {
    if (values_.size() != check_dims(dims_))
      throw std::invalid_argument("DenseTensor: value count does not match dims");
  }

  const Dims& dims() const { return dims_; }
  Index order() const { return static_cast<Index>(dims_.size()); }
  Index size() const { return values_.size(); }

  const Eigen::VectorXd& values() const { return values_; }
  Eigen::VectorXd& values() { return values_; }

  double operator[](Index flat) const { return values_[flat]; }
  double& operator[](Index flat) { return values_[flat]; }

  /// Row-major flat index of a multi-index.
  Index flat_index(std::span<const Index> idx) const {
    Index f = 0;
    for (std::size_t j = 0; j < dims_.size(); ++j) f = f * dims_[j] + idx[j];
    return f;
  }

  double norm() const { return values_.norm(); }

  bool same_dims(const DenseTensor& other) const { return dims_ == other.dims_; }

  /// Throws if any entry is NaN or infinite.
  void check_finite(const std::string& what) const {
    if (!values_.allFinite())
      throw std::invalid_argument(what + ": non-finite tensor entries");
  }

 private:
  static Index check_dims(const Dims& dims) {
    if (dims.empty()) throw std::invalid_argument("DenseTensor: order must be >= 1");
    for (Index d : dims)
      if (d < 1) throw std::invalid_argument("DenseTensor: dims must be positive");
    return dims_product(dims);
  }

  Dims dims_;
  Eigen::VectorXd values_;
};

/// Kernel box k_1 x ... x k_n paired with a tensor of the same order.
struct KernelShape {
  Dims dims;

  Index order() const { return static_cast<Index>(dims.size()); }
  Index count() const { return dims_product(dims); }

  /// Validates order and componentwise k_j <= m_j against tensor dims.
  void validate_for(const Dims& tensor_dims) const {
    if (dims.size() != tensor_dims.size())
      throw std::invalid_argument("KernelShape: order mismatch with tensor");
    for (std::size_t j = 0; j < dims.size(); ++j) {
      if (dims[j] < 1 || dims[j] > tensor_dims[j])
        throw std::invalid_argument("KernelShape: kernel dim out of range");
    }
  }
};

/// Binary mask tensor; entries are exactly 0 or 1.
class SamplingMask {
 public:
  SamplingMask() = default;

  explicit SamplingMask(DenseTensor mask) : mask_(std::move(mask)) {
    for (Index i = 0; i < mask_.size(); ++i) {
      double v = mask_[i];
      if (v != 0.0 && v != 1.0)
        throw std::invalid_argument("SamplingMask: entries must be 0 or 1");
    }
  }

  const DenseTensor& tensor() const { return mask_; }
  const Dims& dims() const { return mask_.dims(); }

  Index observed_count() const {
    return static_cast<Index>(mask_.values().sum() + 0.5);
  }

  /// Sampling rate rho0 = |Omega| / m.
  double rate() const {
    return static_cast<double>(observed_count()) / static_cast<double>(mask_.size());
  }

 private:
  DenseTensor mask_;
};

/// Iterates row-major over the multi-indices of a box, calling f(flat, idx).
template <typename F>
void for_each_index(const Dims& dims, F&& f) {
  const Index n = static_cast<Index>(dims.size());
  Dims idx(dims.size(), 0);
  const Index total = dims_product(dims);
  for (Index flat = 0; flat < total; ++flat) {
    f(flat, std::span<const Index>(idx));
    for (Index j = n - 1; j >= 0; --j) {
      if (++idx[j] < dims[j]) break;
      idx[j] = 0;
    }
  }
}

}  // namespace icnnm
