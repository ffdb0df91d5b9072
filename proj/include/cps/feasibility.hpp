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

#include <map>
#include <string>
#include <vector>

#include "cps/pattern_graph.hpp"

namespace cps {

// Prescribed per-face total geodesic curvatures, in graph face order.
class TargetVector {
 public:
  static TargetVector uniform(const PatternGraph& g, double value);
  // Requires the map's key set to equal the graph's face set exactly.
  static TargetVector from_map(const PatternGraph& g,
                               const std::map<std::string, double>& values);
  explicit TargetVector(std::vector<double> values);

  int size() const { return static_cast<int>(values_.size()); }
  double operator[](int f) const { return values_[f]; }
  const std::vector<double>& values() const { return values_; }
  std::map<std::string, double> to_map(const PatternGraph& g) const;

 private:
  std::vector<double> values_;
};

// Slacks closer to zero than this are reported as boundary cases and count
// as infeasible; the admissibility inequality is strict.
inline constexpr double kFeasibilitySlackEps = 1e-12;

// Admissibility verdict: min_slack is the minimum over all nonempty face
// subsets F' of sum_{E(F')} 2*theta - sum_{F'} targets, where E(F') counts
// each incident edge once. The witness is a subset attaining the minimum
// (face indices, ascending).
struct FeasibilityResult {
  bool feasible = false;   // min_slack > kFeasibilitySlackEps
  bool boundary = false;   // |min_slack| <= kFeasibilitySlackEps
  double min_slack = 0.0;
  std::vector<int> witness;
};

// Exact enumeration of all 2^|F| - 1 nonempty subsets; guarded to |F| <= 25.
// Ties resolve to the lexicographically smallest witness.
FeasibilityResult check_bruteforce(const PatternGraph& g, const TargetVector& targets);

// Same verdict and slack via |F| minimum-cut runs of a project-selection
// network, one run per face forced into the selection. Scales to large |F|;
// the witness may be any minimizer. `threads` > 1 runs the cuts in parallel.
FeasibilityResult check_mincut(const PatternGraph& g, const TargetVector& targets,
                               int threads = 0);

// Brute force up to 20 faces, min-cut beyond.
FeasibilityResult check_auto(const PatternGraph& g, const TargetVector& targets,
                             int threads = 0);

// Slack of one explicit subset (used for cross-checks and reporting).
double subset_slack(const PatternGraph& g, const TargetVector& targets,
                    const std::vector<int>& faces);

}  // namespace cps
