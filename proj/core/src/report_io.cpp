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

#include <cmath>

#include <json.hpp>

#include "icnnm/io.hpp"

namespace icnnm {

using nlohmann::json;

std::string solver_config_to_json(const SolverConfig& cfg) {
  json j;
  j["lambda"] = cfg.lambda;
  if (cfg.theta0) j["theta0"] = *cfg.theta0;
  j["theta_growth"] = cfg.theta_growth;
  j["theta_max"] = cfg.theta_max;
  j["max_iters"] = cfg.max_iters;
  j["tol_primal"] = cfg.tol_primal;
  j["tol_change"] = cfg.tol_change;
  j["rank_tol"] = cfg.rank_tol;
  j["init_fill"] = cfg.init_fill;
  return j.dump(2);
}

SolverConfig solver_config_from_json(const std::string& text) {
  json j = json::parse(text);
  SolverConfig cfg;
  if (j.contains("lambda")) cfg.lambda = j["lambda"].get<double>();
  if (j.contains("theta0") && !j["theta0"].is_null())
    cfg.theta0 = j["theta0"].get<double>();
  if (j.contains("theta_growth")) cfg.theta_growth = j["theta_growth"].get<double>();
  if (j.contains("theta_max")) cfg.theta_max = j["theta_max"].get<double>();
  if (j.contains("max_iters")) cfg.max_iters = j["max_iters"].get<int>();
  if (j.contains("tol_primal")) cfg.tol_primal = j["tol_primal"].get<double>();
  if (j.contains("tol_change")) cfg.tol_change = j["tol_change"].get<double>();
  if (j.contains("rank_tol")) cfg.rank_tol = j["rank_tol"].get<double>();
  if (j.contains("init_fill")) cfg.init_fill = j["init_fill"].get<std::string>();
  cfg.validate();
  return cfg;
}

SolverConfig load_solver_config(const std::string& path) {
  return solver_config_from_json(read_text_file(path));
}

std::string solve_report_to_json(const SolveReport& report) {
  json j;
  j["iterations"] = report.iterations;
  j["objective"] = report.objective;
  j["primal_residual"] = report.primal_residual;
  j["termination"] = report.termination;
  j["wall_time_seconds"] = report.wall_time_seconds;
  return j.dump(2);
}

std::string diagnostics_to_json(const RecoveryDiagnostics& d) {
  json j;
  j["r_K"] = d.r_K;
  j["support_I"] = d.support_I;
  j["alpha_K"] = d.alpha_K;
  j["mu_K_I"] = d.mu_K_I;
  j["mu1"] = d.mu1;
  j["mu2"] = d.mu2;
  j["tau"] = d.tau;
  j["r0"] = d.r0;
  j["rho0"] = d.rho0;
  j["rho_min_noiseless"] = d.rho_min_noiseless;
  j["rho_min_noisy"] = d.rho_min_noisy;
  j["error_bound_factor"] = d.error_bound_factor;
  j["cnnm_bound"] = d.cnnm_bound;
  j["icnnm_ideal_bound"] = d.icnnm_ideal_bound;
  j["certified"] = d.certified;
  return j.dump(2);
}

std::string metrics_to_json(const MetricsReport& m) {
  json j;
  j["mse"] = m.mse;
  j["psnr"] = std::isinf(m.psnr) ? json(nullptr) : json(m.psnr);
  j["ssim"] = m.ssim ? json(*m.ssim) : json(nullptr);
  if (!m.per_frame_psnr.empty()) {
    json frames = json::array();
    for (double p : m.per_frame_psnr)
      frames.push_back(std::isinf(p) ? json(nullptr) : json(p));
    j["per_frame_psnr"] = frames;
  }
  return j.dump(2);
}

}  // namespace icnnm
