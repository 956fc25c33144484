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

#include <cstdlib>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "icnnm/io.hpp"

#ifndef ICNNM_CLI_PATH
#error "ICNNM_CLI_PATH must point at the built CLI binary"
#endif

using namespace icnnm;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("icnnm_cli_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

int cli(const std::string& args) {
  const std::string cmd = std::string(ICNNM_CLI_PATH) + " " + args + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("end-to-end: synth -> mask -> learn(self) -> complete -> metrics") {
  TempDir tmp;
  const std::string L0 = tmp.file("L0.tnsr");
  const std::string mask = tmp.file("mask.tnsr");
  const std::string basis = tmp.file("basis.ebas");
  const std::string rec = tmp.file("rec.tnsr");
  const std::string report = tmp.file("report.json");
  const std::string metrics = tmp.file("metrics.json");
  const std::string diag = tmp.file("diag.json");

  REQUIRE(cli("synth --dims 32 --kernel 8 --rank 2 --seed 1 --out " + L0) == 0);
  REQUIRE(cli("mask --dims 32 --kind bernoulli --rate 0.96875 --seed 2 --out " + mask) == 0);
  REQUIRE(cli("learn --refs " + L0 + " --kernel 8 --out " + basis) == 0);
  REQUIRE(cli("analyze --target " + L0 + " --basis " + basis + " --mask " + mask +
              " --out " + diag) == 0);

  // the instance must be certified before we demand near-exact recovery
  auto jd = nlohmann::json::parse(read_text_file(diag));
  REQUIRE(jd["certified"].get<bool>());

  REQUIRE(cli("complete --input " + L0 + " --mask " + mask + " --basis " + basis +
              " --out " + rec + " --report " + report) == 0);
  REQUIRE(cli("metrics --ref " + L0 + " --est " + rec + " --out " + metrics) == 0);

  auto jm = nlohmann::json::parse(read_text_file(metrics));
  const double psnr_db = jm["psnr"].is_null() ? 1e9 : jm["psnr"].get<double>();
  CHECK(psnr_db > 60.0);

  auto jr = nlohmann::json::parse(read_text_file(report));
  CHECK(jr.contains("iterations"));
  CHECK(jr.contains("termination"));
}

TEST_CASE("complete with a missing basis file exits nonzero") {
  TempDir tmp;
  const std::string L0 = tmp.file("L0.tnsr");
  const std::string mask = tmp.file("mask.tnsr");
  REQUIRE(cli("synth --dims 16 --kernel 4 --rank 2 --seed 1 --out " + L0) == 0);
  REQUIRE(cli("mask --dims 16 --rate 0.9 --out " + mask) == 0);
  CHECK(cli("complete --input " + L0 + " --mask " + mask + " --basis " +
            tmp.file("nope.ebas") + " --out " + tmp.file("rec.tnsr")) != 0);
}

TEST_CASE("analyze output carries every diagnostics field") {
  TempDir tmp;
  const std::string L0 = tmp.file("L0.tnsr");
  const std::string mask = tmp.file("mask.tnsr");
  const std::string basis = tmp.file("basis.ebas");
  const std::string diag = tmp.file("diag.json");
  REQUIRE(cli("synth --dims 16,16 --kernel 3,3 --rank 4 --seed 9 --out " + L0) == 0);
  REQUIRE(cli("mask --dims 16,16 --rate 0.8 --seed 4 --out " + mask) == 0);
  REQUIRE(cli("learn --refs " + L0 + " --kernel 3,3 --out " + basis) == 0);
  REQUIRE(cli("analyze --target " + L0 + " --basis " + basis + " --mask " + mask +
              " --out " + diag) == 0);

  auto j = nlohmann::json::parse(read_text_file(diag));
  for (const char* key :
       {"r_K", "support_I", "alpha_K", "mu_K_I", "mu1", "mu2", "tau", "r0",
        "rho0", "rho_min_noiseless", "rho_min_noisy", "error_bound_factor",
        "cnnm_bound", "icnnm_ideal_bound", "certified"})
    CHECK_MESSAGE(j.contains(key), key);
}

TEST_CASE("cnnm subcommand and convert round-trip") {
  TempDir tmp;
  const std::string L0 = tmp.file("L0.tnsr");
  const std::string mask = tmp.file("mask.tnsr");
  const std::string rec = tmp.file("rec.tnsr");
  REQUIRE(cli("synth --dims 32 --kernel 8 --rank 2 --seed 3 --out " + L0) == 0);
  REQUIRE(cli("mask --dims 32 --rate 0.96875 --seed 2 --out " + mask) == 0);
  REQUIRE(cli("cnnm --input " + L0 + " --mask " + mask + " --kernel 8 --out " + rec) == 0);
  DenseTensor a = read_tnsr(L0), b = read_tnsr(rec);
  CHECK((a.values() - b.values()).norm() / a.norm() < 1e-2);

  // pgm <-> tnsr conversion preserves an image up to quantization
  const std::string img = tmp.file("img.tnsr");
  const std::string pgm = tmp.file("img.pgm");
  const std::string back = tmp.file("back.tnsr");
  DenseTensor t(Dims{4, 4});
  for (Index i = 0; i < 16; ++i) t[i] = static_cast<double>(i) / 15.0;
  write_tnsr(img, t);
  REQUIRE(cli("convert --from " + img + " --to " + pgm) == 0);
  REQUIRE(cli("convert --from " + pgm + " --to " + back) == 0);
  CHECK((read_tnsr(back).values() - t.values()).cwiseAbs().maxCoeff() <= 0.5 / 255 + 1e-12);
}

TEST_CASE("mask files written by the CLI are exactly binary") {
  TempDir tmp;
  const std::string mask = tmp.file("m.tnsr");
  REQUIRE(cli("mask --dims 8,8 --kind block-grid --rate 0.5 --block 2 --out " + mask) == 0);
  DenseTensor t = read_tnsr(mask);
  for (Index i = 0; i < t.size(); ++i)
    CHECK((t[i] == 0.0 || t[i] == 1.0));
}
