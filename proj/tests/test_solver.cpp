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

#include <cmath>
#include <numbers>

#include "icnnm/conv_op.hpp"
#include "icnnm/mask.hpp"
#include "icnnm/solver.hpp"
#include "icnnm/synth.hpp"
#include "test_util.hpp"

using namespace icnnm;
using namespace icnnm::test;

namespace {

// 1-D cosine whose period equals the kernel length; convolution rank 2 and
// flat right singular factor.
DenseTensor cosine_signal(Index m, Index period) {
  DenseTensor L(Dims{m});
  for (Index i = 0; i < m; ++i)
    L[i] = std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                    static_cast<double>(period));
  return L;
}

SamplingMask all_ones_mask(const Dims& dims) {
  DenseTensor t(dims);
  t.values().setOnes();
  return SamplingMask(t);
}

}  // namespace

TEST_CASE("prox_l21: tau = 0 is the identity") {
  Eigen::MatrixXd W = Eigen::MatrixXd::Random(10, 4);
  CHECK((prox_l21(W, 0.0) - W).norm() == 0.0);
}

TEST_CASE("prox_l21: column shrinkage against the 1-D golden-section oracle") {
  // Column w shrinks along its own direction, so the prox reduces to the
  // scalar problem min_s tau*s + 0.5*(s - ||w||)^2 over s >= 0.
  auto scalar_oracle = [](double norm_w, double tau) {
    double lo = 0.0, hi = norm_w + tau + 1.0;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    auto f = [&](double s) { return tau * s + 0.5 * (s - norm_w) * (s - norm_w); };
    double a = hi - gr * (hi - lo), b = lo + gr * (hi - lo);
    for (int it = 0; it < 200; ++it) {
      if (f(a) < f(b)) { hi = b; b = a; a = hi - gr * (hi - lo); }
      else             { lo = a; a = b; b = lo + gr * (hi - lo); }
    }
    return 0.5 * (lo + hi);
  };

  Eigen::MatrixXd W(4, 2);
  W.col(0) << 2.0, 0.0, 0.0, 0.0;   // norm 2
  W.col(1) << 0.0, 0.4, 0.0, 0.0;   // norm 0.4
  Eigen::MatrixXd Z = prox_l21(W, 0.5);
  CHECK(Z.col(0).norm() == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(Z.col(0)(0) == doctest::Approx(2.0 * 0.75).epsilon(1e-12));
  CHECK(Z.col(1).norm() == 0.0);

  CHECK(Z.col(0).norm() == doctest::Approx(scalar_oracle(2.0, 0.5)).epsilon(1e-8));
  CHECK(scalar_oracle(0.4, 0.5) == doctest::Approx(0.0).epsilon(1e-6));
}

TEST_CASE("prox_l21: Monte-Carlo optimality of the proximal objective") {
  std::mt19937_64 rng(31);
  std::normal_distribution<double> g(0.0, 0.05);
  Eigen::MatrixXd W = Eigen::MatrixXd::Random(20, 5);
  const double tau = 0.3;
  Eigen::MatrixXd Z = prox_l21(W, tau);
  auto objective = [&](const Eigen::MatrixXd& C) {
    return tau * l21_norm(C) + 0.5 * (C - W).squaredNorm();
  };
  const double best = objective(Z);
  for (int trial = 0; trial < 1000; ++trial) {
    Eigen::MatrixXd P = Z;
    for (Eigen::Index i = 0; i < P.size(); ++i) P(i) += g(rng);
    CHECK(objective(P) >= best);
  }
}

TEST_CASE("prox_l21: output column norms are exactly max(0, norm - tau)") {
  std::mt19937_64 rng(32);
  Eigen::MatrixXd W = Eigen::MatrixXd::Random(15, 8);
  const double tau = 0.4;
  Eigen::MatrixXd Z = prox_l21(W, tau);
  for (Eigen::Index c = 0; c < W.cols(); ++c) {
    const double expect = std::max(0.0, W.col(c).norm() - tau);
    CHECK(Z.col(c).norm() == doctest::Approx(expect).epsilon(1e-12));
    CHECK(Z.col(c).norm() <= W.col(c).norm());
  }
}

TEST_CASE("icnnm_solve: fully observed input is returned within tolerance") {
  std::mt19937_64 rng(33);
  DenseTensor M = random_tensor({8, 8}, rng);
  KernelShape ks{{3, 3}};
  EigenBasis basis = learn_ensemble_basis({M}, ks);
  SolverConfig cfg;
  cfg.max_iters = 300;
  auto [rec, report] = icnnm_solve(M, all_ones_mask(M.dims()), basis, cfg);
  CHECK((rec.values() - M.values()).norm() / M.norm() < 1e-3);
}

TEST_CASE("icnnm_solve: exact recovery of a rank-2 cosine from 25% missing") {
  const Index m = 32;
  DenseTensor L0 = cosine_signal(m, 8);
  KernelShape ks{{8}};
  EigenBasis basis = learn_ensemble_basis({L0}, ks);

  MaskSpec spec;
  spec.kind = MaskKind::kBernoulli;
  spec.rate = 0.75;
  spec.seed = 5;
  SamplingMask mask = generate_mask(L0.dims(), spec);

  SolverConfig cfg;
  auto [rec, report] = icnnm_solve(L0, mask, basis, cfg);
  CHECK((rec.values() - L0.values()).norm() / L0.norm() < 1e-3);
  CHECK(report.termination == "converged");
}

TEST_CASE("icnnm_solve rejects an empty mask") {
  DenseTensor M(Dims{4, 4});
  KernelShape ks{{2, 2}};
  EigenBasis basis = learn_ensemble_basis({cosine_signal(16, 4)}, KernelShape{{4}});
  SamplingMask empty(DenseTensor(Dims{4, 4}));
  std::mt19937_64 rng(34);
  DenseTensor M2 = random_tensor({4, 4}, rng);
  EigenBasis basis2 = learn_ensemble_basis({M2}, ks);
  CHECK_THROWS(icnnm_solve(M2, empty, basis2, SolverConfig{}));
}

TEST_CASE("cnnm_solve: fully observed identity and cosine recovery") {
  std::mt19937_64 rng(35);
  DenseTensor M = random_tensor({8, 8}, rng);
  KernelShape ks{{3, 3}};
  SolverConfig cfg;
  cfg.max_iters = 300;
  auto [rec, report] = cnnm_solve(M, all_ones_mask(M.dims()), ks, cfg);
  CHECK((rec.values() - M.values()).norm() / M.norm() < 1e-3);

  DenseTensor L0 = cosine_signal(32, 8);
  MaskSpec spec;
  spec.kind = MaskKind::kBernoulli;
  spec.rate = 0.75;
  spec.seed = 5;
  SamplingMask mask = generate_mask(L0.dims(), spec);
  auto [rec2, report2] = cnnm_solve(L0, mask, KernelShape{{8}}, SolverConfig{});
  CHECK((rec2.values() - L0.values()).norm() / L0.norm() < 1e-3);
}

TEST_CASE("exact-basis ICNNM and CNNM agree on the recovery instance") {
  DenseTensor L0 = cosine_signal(32, 8);
  KernelShape ks{{8}};
  EigenBasis basis = learn_ensemble_basis({L0}, ks);
  MaskSpec spec;
  spec.kind = MaskKind::kBernoulli;
  spec.rate = 0.75;
  spec.seed = 11;
  SamplingMask mask = generate_mask(L0.dims(), spec);

  auto [li, ri] = icnnm_solve(L0, mask, basis, SolverConfig{});
  auto [lc, rc] = cnnm_solve(L0, mask, ks, SolverConfig{});
  CHECK((li.values() - lc.values()).norm() / L0.norm() < 1e-4);

  // Objectives of the two programs coincide when K is the target's own
  // eigenbasis (l2,1 of A K equals the nuclear norm of A).
  const double obj_i = objective_icnnm(li, L0, mask, basis, 1000.0);
  Eigen::MatrixXd Ac = conv_matrix(lc, ks).entries;
  const double fit = (lc.values() - L0.values())
                         .cwiseProduct(mask.tensor().values())
                         .squaredNorm();
  const double obj_c = nuclear_norm(Ac) + 0.5 * 1000.0 * 8.0 * fit;
  CHECK(std::abs(obj_i - obj_c) / obj_c < 1e-5);
}

TEST_CASE("objective_icnnm: zero case and explicit-matrix oracle") {
  KernelShape ks{{2, 2}};
  DenseTensor zero(Dims{5, 5});
  std::mt19937_64 rng(36);
  DenseTensor ref = random_tensor({5, 5}, rng);
  EigenBasis basis = learn_ensemble_basis({ref}, ks);
  CHECK(objective_icnnm(zero, zero, all_ones_mask(zero.dims()), basis, 1000.0) == 0.0);

  DenseTensor L = random_tensor({5, 5}, rng);
  DenseTensor M = random_tensor({5, 5}, rng);
  MaskSpec spec;
  spec.rate = 0.6;
  spec.seed = 3;
  SamplingMask mask = generate_mask(L.dims(), spec);
  const double fast = objective_icnnm(L, M, mask, basis, 1000.0);
  Eigen::MatrixXd A = conv_matrix(L, ks).entries;
  const double fit = (L.values() - M.values())
                         .cwiseProduct(mask.tensor().values())
                         .squaredNorm();
  const double oracle = l21_norm(A * basis.K) + 0.5 * 1000.0 * 4.0 * fit;
  CHECK(std::abs(fast - oracle) < 1e-10 * (1.0 + oracle));
}

TEST_CASE("ADMM traces: feasibility at convergence and eventual objective decrease") {
  DenseTensor L0 = cosine_signal(32, 8);
  KernelShape ks{{8}};
  EigenBasis basis = learn_ensemble_basis({L0}, ks);
  MaskSpec spec;
  spec.rate = 0.75;
  spec.seed = 7;
  SamplingMask mask = generate_mask(L0.dims(), spec);
  SolverConfig cfg;
  auto [rec, report] = icnnm_solve(L0, mask, basis, cfg);

  REQUIRE(report.iterations > 10);
  CHECK(report.objective.size() == static_cast<std::size_t>(report.iterations));
  CHECK(report.primal_residual.size() == static_cast<std::size_t>(report.iterations));
  if (report.termination == "converged") {
    const double last = report.primal_residual.back();
    const double last_change_ok = last < cfg.tol_primal;
    // Either stopping criterion may have fired; feasibility holds when the
    // primal one did.
    if (last_change_ok) CHECK(last < cfg.tol_primal);
  }

  // after burn-in the objective trace is nonincreasing up to tiny jitter
  const std::size_t burn = report.objective.size() / 2;
  for (std::size_t i = burn; i + 1 < report.objective.size(); ++i)
    CHECK(report.objective[i + 1] <=
          report.objective[i] * (1.0 + 1e-6) + 1e-9);
}

TEST_CASE("SolverConfig validation") {
  SolverConfig cfg;
  cfg.lambda = -1;
  CHECK_THROWS(cfg.validate());
  cfg = SolverConfig{};
  cfg.theta_growth = 0.5;
  CHECK_THROWS(cfg.validate());
  cfg = SolverConfig{};
  cfg.theta0 = 1e20;  // above theta_max
  CHECK_THROWS(cfg.validate());
  cfg = SolverConfig{};
  cfg.init_fill = "bogus";
  CHECK_THROWS(cfg.validate());
  CHECK_NOTHROW(SolverConfig{}.validate());
}
