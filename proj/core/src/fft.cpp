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

#include "icnnm/fft.hpp"

#include <fftw3.h>

#include <mutex>

namespace icnnm {

namespace {
// FFTW plan creation is not thread-safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

struct NdFft::Impl {
  fftw_complex* buf_in = nullptr;
  fftw_complex* buf_out = nullptr;
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
};

NdFft::NdFft(Dims dims) : dims_(std::move(dims)), impl_(new Impl) {
  m_ = dims_product(dims_);
  impl_->buf_in = fftw_alloc_complex(static_cast<std::size_t>(m_));
  impl_->buf_out = fftw_alloc_complex(static_cast<std::size_t>(m_));
  std::vector<int> n(dims_.begin(), dims_.end());
  std::lock_guard<std::mutex> lock(planner_mutex());
  impl_->fwd = fftw_plan_dft(static_cast<int>(n.size()), n.data(), impl_->buf_in,
                             impl_->buf_out, FFTW_FORWARD, FFTW_ESTIMATE);
  impl_->bwd = fftw_plan_dft(static_cast<int>(n.size()), n.data(), impl_->buf_in,
                             impl_->buf_out, FFTW_BACKWARD, FFTW_ESTIMATE);
}

NdFft::~NdFft() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  if (impl_->fwd) fftw_destroy_plan(impl_->fwd);
  if (impl_->bwd) fftw_destroy_plan(impl_->bwd);
  fftw_free(impl_->buf_in);
  fftw_free(impl_->buf_out);
}

void NdFft::forward(const double* in, std::complex<double>* out) {
  for (Index i = 0; i < m_; ++i) {
    impl_->buf_in[i][0] = in[i];
    impl_->buf_in[i][1] = 0.0;
  }
  fftw_execute(impl_->fwd);
  for (Index i = 0; i < m_; ++i)
    out[i] = {impl_->buf_out[i][0], impl_->buf_out[i][1]};
}

void NdFft::inverse_real(const std::complex<double>* in, double* out) {
  for (Index i = 0; i < m_; ++i) {
    impl_->buf_in[i][0] = in[i].real();
    impl_->buf_in[i][1] = in[i].imag();
  }
  fftw_execute(impl_->bwd);
  const double scale = 1.0 / static_cast<double>(m_);
  for (Index i = 0; i < m_; ++i) out[i] = impl_->buf_out[i][0] * scale;
}

DenseTensor pad_to(const DenseTensor& X, const Dims& dims) {
  if (X.dims().size() != dims.size())
    throw std::invalid_argument("pad_to: order mismatch");
  for (std::size_t j = 0; j < dims.size(); ++j)
    if (X.dims()[j] > dims[j])
      throw std::invalid_argument("pad_to: kernel dim exceeds tensor dim");
  DenseTensor out(dims);
  const DenseTensor& src = X;
  for_each_index(X.dims(), [&](Index flat, std::span<const Index> idx) {
    out[out.flat_index(idx)] = src[flat];
  });
  return out;
}

DenseTensor circular_convolve(NdFft& fft, const DenseTensor& L, const DenseTensor& X) {
  const DenseTensor Xp = pad_to(X, L.dims());
  const Index m = L.size();
  std::vector<std::complex<double>> fl(m), fx(m);
  fft.forward(L.values().data(), fl.data());
  fft.forward(Xp.values().data(), fx.data());
  for (Index i = 0; i < m; ++i) fl[i] *= fx[i];
  DenseTensor out(L.dims());
  fft.inverse_real(fl.data(), out.values().data());
  return out;
}

DenseTensor circular_convolve(const DenseTensor& L, const DenseTensor& X) {
  NdFft fft(L.dims());
  return circular_convolve(fft, L, X);
}

DenseTensor circular_autocorrelation(const DenseTensor& L) {
  NdFft fft(L.dims());
  const Index m = L.size();
  std::vector<std::complex<double>> fl(m);
  fft.forward(L.values().data(), fl.data());
  for (Index i = 0; i < m; ++i) fl[i] = std::norm(fl[i]);
  DenseTensor out(L.dims());
  fft.inverse_real(fl.data(), out.values().data());
  return out;
}

}  // namespace icnnm
