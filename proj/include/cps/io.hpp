// Copyright 2026 The cps authors
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

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "cps/curvature_system.hpp"
#include "cps/feasibility.hpp"
#include "cps/pattern_graph.hpp"
#include "cps/solver.hpp"

namespace cps {

// Malformed documents: syntax errors, wrong types, unknown fields. Structural
// rule violations surface as validation diagnostics instead.
class parse_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Pattern documents: a single JSON object with optional `vertices` (array of
// ids), `edges` (array of {id, v?, theta, faces}), `faces` (array of
// {id, edges}) and optional `targets` (face id -> number). Unknown fields are
// rejected.
PatternData parse_pattern_data(const std::string& text);
PatternData read_pattern_data(const std::filesystem::path& path);
PatternGraph parse_pattern(const std::string& text);
std::string serialize_pattern(const PatternData& data);

std::optional<TargetVector> targets_from_data(const PatternGraph& g,
                                              const PatternData& data);

nlohmann::json validation_report_json(const ValidationReport& report);
nlohmann::json feasibility_result_json(const PatternGraph& g,
                                       const FeasibilityResult& result,
                                       const std::string& method);
nlohmann::json geometry_report_json(const PatternGraph& g, const GeometryReport& report);

std::string solve_status_name(SolveStatus status);

// Solution documents tie a solve outcome to the pattern it came from via
// path and content hash.
struct SolutionFile {
  std::string pattern_path;
  std::string pattern_hash;
  std::string status;
  std::string mode;
  double tol_total = 0.0;
  double tol_inner = 0.0;
  int iterations = 0;
  double final_residual = 0.0;
  double contraction_estimate = 0.0;
  bool monotone_up = false;
  bool monotone_down = false;
  std::map<std::string, double> curvatures;
  std::map<std::string, double> radii;
  std::vector<std::string> warnings;
  nlohmann::json gauss_bonnet;
};

nlohmann::json solution_json(const SolutionFile& solution);
SolutionFile parse_solution(const std::string& text);
SolutionFile read_solution(const std::filesystem::path& path);

std::string write_trace_csv(const SolveTrace& trace);

// 64-bit FNV-1a of the raw document bytes, as lowercase hex.
std::string fnv1a_hex(std::string_view bytes);

std::string read_file(const std::filesystem::path& path);
// Write-to-temporary + rename, so readers never observe partial content.
void atomic_write_file(const std::filesystem::path& path, const std::string& content);

// Fixed two-space indentation plus trailing newline for every emitted
// document, so identical runs produce identical bytes.
std::string format_json(const nlohmann::json& value);

}  // namespace cps
