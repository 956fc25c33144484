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

#include <string>

#include "icnnm/analysis.hpp"
#include "icnnm/metrics.hpp"
#include "icnnm/solver.hpp"
#include "icnnm/spectral.hpp"
#include "icnnm/tensor.hpp"

namespace icnnm {

// TNSR: magic "TNSR", u32-LE order n, n u32-LE dims, then m f64-LE values
// in row-major order. No padding.
void write_tnsr(const std::string& path, const DenseTensor& t);
DenseTensor read_tnsr(const std::string& path);

// EBAS: magic "EBAS", u32-LE order n, n u32-LE kernel dims, k f64-LE
// eigenvalues, then k*k f64-LE entries of K column-major.
void write_ebas(const std::string& path, const EigenBasis& basis);
EigenBasis read_ebas(const std::string& path);

// Binary PGM (P5), 8- or 16-bit, normalized to [0, 1] on read. 16-bit
// samples are big-endian per the netpbm convention.
DenseTensor read_pgm(const std::string& path);
void write_pgm(const std::string& path, const DenseTensor& t, int maxval = 255);

// JSON serialization with the exact documented field names.
std::string solver_config_to_json(const SolverConfig& cfg);
SolverConfig solver_config_from_json(const std::string& text);
SolverConfig load_solver_config(const std::string& path);

std::string solve_report_to_json(const SolveReport& report);
std::string diagnostics_to_json(const RecoveryDiagnostics& d);
std::string metrics_to_json(const MetricsReport& m);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

}  // namespace icnnm
