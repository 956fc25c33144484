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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "icnnm/conv_op.hpp"
#include "icnnm/fft.hpp"
#include "icnnm/mask.hpp"
#include "test_util.hpp"

using namespace icnnm;
using namespace icnnm::test;

TEST_CASE("circular_convolve: delta kernel is the identity") {
  std::mt19937_64 rng(7);
  DenseTensor L = random_tensor({5, 4}, rng);
  DenseTensor delta(Dims{3, 3});
  delta[0] = 1.0;
  DenseTensor out = circular_convolve(L, delta);
  CHECK((out.values() - L.values()).norm() < 1e-12 * L.norm());
}

TEST_CASE("circular_convolve: constant tensor scales by kernel sum") {
  std::mt19937_64 rng(8);
  DenseTensor L(Dims{4, 6});
  L.values().setConstant(2.5);
  DenseTensor X = random_tensor({2, 3}, rng);
  DenseTensor out = circular_convolve(L, X);
  const double expected = 2.5 * X.values().sum();
  for (Index i = 0; i < out.size(); ++i)
    CHECK(out[i] == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("circular_convolve matches the double-sum oracle") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    Dims dims = random_dims(rng);
    Dims kd = random_kernel_dims(dims, rng);
    DenseTensor L = random_tensor(dims, rng);
    DenseTensor X = random_tensor(kd, rng);
    DenseTensor fast = circular_convolve(L, X);
    DenseTensor slow = convolve_brute(L, X);
    CHECK((fast.values() - slow.values()).norm() < 1e-12 * slow.values().norm() + 1e-14);
  }
}

TEST_CASE("circular_convolve rejects bad shapes") {
  std::mt19937_64 rng(10);
  DenseTensor L = random_tensor({4, 4}, rng);
  CHECK_THROWS(circular_convolve(L, random_tensor({4}, rng)));       // order mismatch
  CHECK_THROWS(circular_convolve(L, random_tensor({5, 2}, rng)));    // kernel too large
}

TEST_CASE("conv_matrix acts as the convolution") {
  std::mt19937_64 rng(11);
  DenseTensor L = random_tensor({3, 3}, rng);
  KernelShape ks{{2, 2}};
  ConvMatrix A = conv_matrix(L, ks);
  CHECK(A.rows() == 9);
  CHECK(A.cols() == 4);
  for (int trial = 0; trial < 20; ++trial) {
    DenseTensor X = random_tensor(ks.dims, rng);
    Eigen::VectorXd via_matrix = A.entries * X.values();
    Eigen::VectorXd via_conv = circular_convolve(L, X).values();
    CHECK((via_matrix - via_conv).norm() < 1e-12 * via_conv.norm());
  }
}

TEST_CASE("conv_matrix: zero tensor gives zero matrix, Frobenius identity") {
  std::mt19937_64 rng(12);
  KernelShape ks{{2, 3}};
  DenseTensor zero(Dims{4, 5});
  CHECK(conv_matrix(zero, ks).entries.norm() == 0.0);

  DenseTensor L = random_tensor({4, 5}, rng);
  ConvMatrix A = conv_matrix(L, ks);
  CHECK(A.entries.squaredNorm() ==
        doctest::Approx(6.0 * L.values().squaredNorm()).epsilon(1e-12));
}

TEST_CASE("conv_matrix enforces the materialization cap") {
  DenseTensor L(Dims{8, 8});
  CHECK_THROWS(conv_matrix(L, KernelShape{{4, 4}}, /*entry_cap=*/100));
}

TEST_CASE("conv_apply matches the explicit matrix") {
  std::mt19937_64 rng(13);
  DenseTensor L = random_tensor({4, 4}, rng);
  KernelShape ks{{2, 2}};
  ConvMatrix A = conv_matrix(L, ks);

  SUBCASE("delta vector extracts vec(L)") {
    Eigen::VectorXd e0 = Eigen::VectorXd::Zero(4);
    e0[0] = 1.0;
    CHECK((conv_apply(L, ks, e0) - L.values()).norm() < 1e-12 * L.norm());
  }
  SUBCASE("random vectors") {
    for (int trial = 0; trial < 10; ++trial) {
      Eigen::VectorXd v = Eigen::VectorXd::Random(4);
      Eigen::VectorXd expected = A.entries * v;
      CHECK((conv_apply(L, ks, v) - expected).norm() < 1e-12 * expected.norm() + 1e-14);
    }
  }
  SUBCASE("zero vector") {
    CHECK(conv_apply(L, ks, Eigen::VectorXd::Zero(4)).norm() < 1e-13);
  }
  SUBCASE("length mismatch") {
    CHECK_THROWS(conv_apply(L, ks, Eigen::VectorXd::Zero(5)));
  }
}

TEST_CASE("conv_adjoint: inner-product identity and composition") {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 50; ++trial) {
    Dims dims = random_dims(rng);
    Dims kd = random_kernel_dims(dims, rng);
    KernelShape ks{kd};
    DenseTensor L = random_tensor(dims, rng);
    const Index m = L.size();
    const Index k = ks.count();

    Eigen::MatrixXd W = Eigen::MatrixXd::Random(m, k);
    DenseTensor adj = conv_adjoint(W, ks, dims);
    ConvMatrix A = conv_matrix(L, ks);
    const double lhs = (A.entries.array() * W.array()).sum();
    const double rhs = L.values().dot(adj.values());
    CHECK(std::abs(lhs - rhs) < 1e-10 * (W.norm() * L.norm() + 1.0));

    // A* A = k Id
    DenseTensor comp = conv_adjoint(A.entries, ks, dims);
    CHECK((comp.values() - static_cast<double>(k) * L.values()).norm() <
          1e-10 * static_cast<double>(k) * L.norm());
  }
}

TEST_CASE("conv_adjoint: zero and shape errors") {
  Dims dims{4, 4};
  KernelShape ks{{2, 2}};
  CHECK(conv_adjoint(Eigen::MatrixXd::Zero(16, 4), ks, dims).norm() == 0.0);
  CHECK_THROWS(conv_adjoint(Eigen::MatrixXd::Zero(15, 4), ks, dims));
  CHECK_THROWS(conv_adjoint(Eigen::MatrixXd::Zero(16, 5), ks, dims));
}

TEST_CASE("convolution is linear in each argument") {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 10; ++trial) {
    Dims dims = random_dims(rng);
    Dims kd = random_kernel_dims(dims, rng);
    DenseTensor L1 = random_tensor(dims, rng);
    DenseTensor L2 = random_tensor(dims, rng);
    DenseTensor X = random_tensor(kd, rng);
    const double a = 0.7, b = -1.3;

    DenseTensor combo(dims, a * L1.values() + b * L2.values());
    Eigen::VectorXd lhs = circular_convolve(combo, X).values();
    Eigen::VectorXd rhs = a * circular_convolve(L1, X).values() +
                          b * circular_convolve(L2, X).values();
    CHECK((lhs - rhs).norm() < 1e-11 * (rhs.norm() + 1.0));
  }
}

TEST_CASE("conv_sampling_mask: trivial masks") {
  KernelShape ks{{2, 2}};
  DenseTensor ones(Dims{4, 5});
  ones.values().setOnes();
  Eigen::MatrixXd full = conv_sampling_mask(SamplingMask(ones), ks);
  CHECK(full.minCoeff() == 1.0);

  DenseTensor zeros(Dims{4, 5});
  Eigen::MatrixXd empty = conv_sampling_mask(SamplingMask(zeros), ks);
  CHECK(empty.maxCoeff() == 0.0);
}

TEST_CASE("conv_sampling_mask: every column sums to |Omega|") {
  std::mt19937_64 rng(16);
  KernelShape ks{{2, 2}};
  for (int trial = 0; trial < 100; ++trial) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    DenseTensor t(Dims{4, 5});
    for (Index i = 0; i < t.size(); ++i) t[i] = u(rng) < 0.5 ? 1.0 : 0.0;
    SamplingMask mask(t);
    const auto omega = static_cast<double>(mask.observed_count());
    Eigen::MatrixXd theta = conv_sampling_mask(mask, ks);
    for (Index c = 0; c < theta.cols(); ++c)
      CHECK(theta.col(c).sum() == omega);  // exact integer equality
  }
}

TEST_CASE("DenseTensor invariants") {
  CHECK_THROWS(DenseTensor(Dims{}));
  CHECK_THROWS(DenseTensor(Dims{0, 3}));
  CHECK_THROWS(DenseTensor(Dims{2, 2}, Eigen::VectorXd::Zero(3)));
  CHECK_THROWS(SamplingMask(DenseTensor(Dims{2}, Eigen::Vector2d(0.5, 1.0))));
}
