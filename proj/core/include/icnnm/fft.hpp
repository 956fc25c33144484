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

#include <complex>
#include <memory>
#include <vector>

#include "icnnm/tensor.hpp"

namespace icnnm {

/// Reusable multidimensional DFT of a fixed shape. One instance owns its
/// FFTW plans and scratch buffers; not safe for concurrent use, create one
/// per thread.
class NdFft {
 public:
  explicit NdFft(Dims dims);
  ~NdFft();

  NdFft(const NdFft&) = delete;
  NdFft& operator=(const NdFft&) = delete;

  const Dims& dims() const { return dims_; }
  Index size() const { return m_; }

  /// Forward DFT of real row-major data (length m).
  void forward(const double* in, std::complex<double>* out);

  /// Inverse DFT scaled by 1/m; the imaginary residue is discarded.
  void inverse_real(const std::complex<double>* in, double* out);

 private:
  struct Impl;
  Dims dims_;
  Index m_ = 0;
  std::unique_ptr<Impl> impl_;
};

/// Circular convolution L * X with X zero-padded (corner-anchored) to L's
/// dims. Entry i is sum_s L[(i - s) mod dims] X[s].
DenseTensor circular_convolve(const DenseTensor& L, const DenseTensor& X);

/// Same, reusing a prepared transform of L's shape.
DenseTensor circular_convolve(NdFft& fft, const DenseTensor& L, const DenseTensor& X);

/// Circular autocorrelation R with R[d] = sum_i L[i] L[(i + d) mod dims],
/// as a tensor of L's dims.
DenseTensor circular_autocorrelation(const DenseTensor& L);

/// Zero-pads a kernel-shaped tensor into the given dims, corner-anchored.
DenseTensor pad_to(const DenseTensor& X, const Dims& dims);

}  // namespace icnnm
