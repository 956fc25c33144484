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

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "icnnm/analysis.hpp"
#include "icnnm/io.hpp"
#include "icnnm/mask.hpp"
#include "icnnm/metrics.hpp"
#include "icnnm/solver.hpp"
#include "icnnm/spectral.hpp"
#include "icnnm/synth.hpp"

namespace {

using namespace icnnm;

Dims parse_dims(const std::string& text) {
  Dims dims;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t next = text.find(',', pos);
    if (next == std::string::npos) next = text.size();
    dims.push_back(std::stoll(text.substr(pos, next - pos)));
    pos = next + 1;
  }
  if (dims.empty()) throw std::invalid_argument("empty dimension list");
  return dims;
}

bool has_suffix(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

DenseTensor load_tensor(const std::string& path) {
  if (has_suffix(path, ".pgm")) return read_pgm(path);
  return read_tnsr(path);
}

SolverConfig load_config_opt(const std::string& path) {
  if (path.empty()) return SolverConfig{};
  return load_solver_config(path);
}

void write_report_opt(const std::string& path, const SolveReport& report) {
  if (!path.empty()) write_text_file(path, solve_report_to_json(report));
}

int run(int argc, char** argv) {
  CLI::App app{"Tensor completion via convolution-eigenbasis l2,1 minimization "
               "(with a convolution nuclear-norm baseline)"};
  app.require_subcommand(1);

  // learn
  auto* learn = app.add_subcommand("learn", "Learn a shared eigenbasis from reference tensors");
  std::vector<std::string> ref_paths;
  std::string kernel_str, out_path;
  bool normalize_refs = false;
  learn->add_option("--refs", ref_paths, "Reference tensors (.tnsr or .pgm)")->required();
  learn->add_option("--kernel", kernel_str, "Kernel dims, comma separated")->required();
  learn->add_option("--out", out_path, "Output basis file (.ebas)")->required();
  learn->add_flag("--normalize", normalize_refs, "Scale each reference to unit Frobenius norm");

  // complete
  auto* complete = app.add_subcommand("complete", "Complete a tensor with a pre-learned basis");
  std::string in_path, mask_path, basis_path, config_path, report_path;
  complete->add_option("--input", in_path, "Observed tensor (.tnsr)")->required();
  complete->add_option("--mask", mask_path, "Sampling mask (.tnsr)")->required();
  complete->add_option("--basis", basis_path, "Eigenbasis (.ebas)")->required();
  complete->add_option("--config", config_path, "Solver config JSON");
  complete->add_option("--out", out_path, "Recovered tensor output")->required();
  complete->add_option("--report", report_path, "Solve report JSON output");

  // cnnm
  auto* cnnm = app.add_subcommand("cnnm", "Complete a tensor with the nuclear-norm baseline");
  cnnm->add_option("--input", in_path, "Observed tensor (.tnsr)")->required();
  cnnm->add_option("--mask", mask_path, "Sampling mask (.tnsr)")->required();
  cnnm->add_option("--kernel", kernel_str, "Kernel dims, comma separated")->required();
  cnnm->add_option("--config", config_path, "Solver config JSON");
  cnnm->add_option("--out", out_path, "Recovered tensor output")->required();
  cnnm->add_option("--report", report_path, "Solve report JSON output");

  // analyze
  auto* analyze = app.add_subcommand("analyze", "Recovery-theory diagnostics for a (target, basis, mask) triple");
  std::string target_path;
  double rank_tol = kDefaultRankTol;
  analyze->add_option("--target", target_path, "Ground-truth tensor (.tnsr)")->required();
  analyze->add_option("--basis", basis_path, "Eigenbasis (.ebas)")->required();
  analyze->add_option("--mask", mask_path, "Sampling mask (.tnsr)")->required();
  analyze->add_option("--rank-tol", rank_tol, "Relative tolerance for support detection");
  analyze->add_option("--out", out_path, "Diagnostics JSON output")->required();

  // mask
  auto* mask_cmd = app.add_subcommand("mask", "Generate a sampling mask");
  std::string dims_str, kind_str = "bernoulli";
  MaskSpec spec;
  mask_cmd->add_option("--dims", dims_str, "Tensor dims, comma separated")->required();
  mask_cmd->add_option("--kind", kind_str, "bernoulli | block-grid | frame-missing | tail-prediction");
  mask_cmd->add_option("--rate", spec.rate, "Observed fraction rho0");
  mask_cmd->add_option("--block", spec.block, "Block edge for block-grid");
  mask_cmd->add_option("--predict", spec.predict_frames, "Frames to predict (tail-prediction)");
  mask_cmd->add_option("--seed", spec.seed, "RNG seed");
  mask_cmd->add_option("--out", out_path, "Mask output (.tnsr)")->required();

  // synth
  auto* synth = app.add_subcommand("synth", "Generate a random convolutionally low-rank tensor");
  Index rank = 2;
  std::uint64_t seed = 0;
  synth->add_option("--dims", dims_str, "Tensor dims, comma separated")->required();
  synth->add_option("--kernel", kernel_str, "Kernel dims, comma separated")->required();
  synth->add_option("--rank", rank, "Target convolution rank");
  synth->add_option("--seed", seed, "RNG seed");
  synth->add_option("--out", out_path, "Tensor output (.tnsr)")->required();

  // metrics
  auto* metrics_cmd = app.add_subcommand("metrics", "PSNR/MSE (and SSIM for images)");
  std::string ref_path, est_path;
  double peak = 1.0;
  metrics_cmd->add_option("--ref", ref_path, "Reference tensor")->required();
  metrics_cmd->add_option("--est", est_path, "Estimate tensor")->required();
  metrics_cmd->add_option("--peak", peak, "Peak value for PSNR");
  metrics_cmd->add_option("--out", out_path, "Metrics JSON output")->required();

  // convert
  auto* convert = app.add_subcommand("convert", "Convert between .pgm and .tnsr");
  std::string from_path, to_path;
  int maxval = 255;
  convert->add_option("--from", from_path, "Input file (.pgm or .tnsr)")->required();
  convert->add_option("--to", to_path, "Output file (.pgm or .tnsr)")->required();
  convert->add_option("--maxval", maxval, "PGM maxval when writing images");

  CLI11_PARSE(app, argc, argv);

  if (learn->parsed()) {
    std::vector<DenseTensor> refs;
    for (const std::string& p : ref_paths) {
      DenseTensor t = load_tensor(p);
      if (normalize_refs && t.norm() > 0) t.values() /= t.norm();
      refs.push_back(std::move(t));
    }
    KernelShape ks{parse_dims(kernel_str)};
    write_ebas(out_path, learn_ensemble_basis(refs, ks));
  } else if (complete->parsed()) {
    const DenseTensor obs = read_tnsr(in_path);
    const SamplingMask mask(read_tnsr(mask_path));
    const EigenBasis basis = read_ebas(basis_path);
    auto [rec, report] = icnnm_solve(obs, mask, basis, load_config_opt(config_path));
    write_tnsr(out_path, rec);
    write_report_opt(report_path, report);
  } else if (cnnm->parsed()) {
    const DenseTensor obs = read_tnsr(in_path);
    const SamplingMask mask(read_tnsr(mask_path));
    KernelShape ks{parse_dims(kernel_str)};
    auto [rec, report] = cnnm_solve(obs, mask, ks, load_config_opt(config_path));
    write_tnsr(out_path, rec);
    write_report_opt(report_path, report);
  } else if (analyze->parsed()) {
    const DenseTensor target = read_tnsr(target_path);
    const EigenBasis basis = read_ebas(basis_path);
    const SamplingMask mask(read_tnsr(mask_path));
    const RecoveryDiagnostics d = analyze_recovery(target, basis, mask, rank_tol);
    write_text_file(out_path, diagnostics_to_json(d));
  } else if (mask_cmd->parsed()) {
    spec.kind = MaskSpec::parse_kind(kind_str);
    write_tnsr(out_path, generate_mask(parse_dims(dims_str), spec).tensor());
  } else if (synth->parsed()) {
    KernelShape ks{parse_dims(kernel_str)};
    write_tnsr(out_path, synth_low_conv_rank(parse_dims(dims_str), ks, rank, seed));
  } else if (metrics_cmd->parsed()) {
    const DenseTensor ref = load_tensor(ref_path);
    const DenseTensor est = load_tensor(est_path);
    write_text_file(out_path, metrics_to_json(compute_metrics(ref, est, peak)));
  } else if (convert->parsed()) {
    const DenseTensor t = load_tensor(from_path);
    if (has_suffix(to_path, ".pgm"))
      write_pgm(to_path, t, maxval);
    else
      write_tnsr(to_path, t);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    nlohmann::json err;
    err["error"] = e.what();
    std::cerr << err.dump() << "\n";
    return 1;
  }
}
