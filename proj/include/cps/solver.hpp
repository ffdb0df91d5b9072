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

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cps/curvature_system.hpp"
#include "cps/feasibility.hpp"
#include "cps/pattern_graph.hpp"

namespace cps {

enum class SweepMode { jacobi, gauss_seidel };

// Thrown when a prescribed target vector fails the admissibility check; the
// offending witness subset rides along.
class infeasible_error : public std::runtime_error {
 public:
  infeasible_error(std::string message, FeasibilityResult result)
      : std::runtime_error(std::move(message)), result_(std::move(result)) {}
  const FeasibilityResult& result() const { return result_; }

 private:
  FeasibilityResult result_;
};

struct SolverConfig {
  enum class Init { subpattern, uniform, explicit_vector };

  SweepMode mode = SweepMode::jacobi;
  double tol_total = 1e-10;  // sup-norm residual on the per-face totals
  double tol_inner = 1e-13;  // bracket width of the per-face root find, in u
  int max_outer = 100000;
  Init init = Init::subpattern;
  double uniform_k0 = 1.0;
  std::optional<std::vector<double>> explicit_k0;  // graph face order
  bool record_snapshots = false;
  int threads = 0;  // 0 = sequential
};

enum class SolveStatus { converged, max_iterations, error };

struct IterationRecord {
  double residual;                // ||T - target||_inf after the sweep
  bool monotone_up;               // curvatures nondecreasing this sweep
  bool monotone_down;             // curvatures nonincreasing this sweep
  double max_target_overshoot;    // max_f (T_f - target_f)
  double contraction_estimate;    // lambda-hat at the new iterate
  std::optional<std::vector<double>> snapshot;
};

struct SolveTrace {
  std::vector<IterationRecord> iterations;
  SolveStatus status = SolveStatus::error;
  std::vector<std::string> warnings;
};

struct SolveResult {
  CurvatureVector curvatures;
  SolveTrace trace;
};

// Uniform starting vector with every boundary arc curvature at most
// (min target) / (max incidence count) and the realized totals below the
// targets componentwise. Throws infeasible_error when no pattern can meet
// the targets.
CurvatureVector initial_subpattern(const PatternGraph& g, const TargetVector& targets);

// Root of T_f(k_f) = target with all other curvatures fixed, by bracketed
// bisection on u_f = ln k_f; the root is unique by strict monotonicity.
// `target` must lie in (0, face_total_curvature_bound(f)).
double adjust_face(const PatternGraph& g, const CurvatureVector& k, int f, double target,
                   double tol_inner = 1e-13);

// One sweep of the per-face adjustment map. Jacobi computes every component
// from the same input vector; Gauss-Seidel updates in ascending face order,
// each component seeing the earlier updates.
CurvatureVector iterate_once(const PatternGraph& g, const CurvatureVector& k,
                             const TargetVector& targets, SweepMode mode,
                             double tol_inner = 1e-13, int threads = 0);

// Sup-norm Lipschitz estimate of the adjustment map: the maximum over faces
// of sum_{j != i} |dT_i/du_j| / (dT_i/du_i), each row evaluated with the
// face's own curvature replaced by its adjusted value. Below 1 near the
// fixed point.
double estimate_contraction(const PatternGraph& g, const CurvatureVector& k,
                            const TargetVector& targets, double tol_inner = 1e-13);

// Componentwise maximum of two curvature vectors over the same face set.
// The maximum of two subpatterns is again a subpattern.
CurvatureVector merge_max(const CurvatureVector& a, const CurvatureVector& b);

// Full fixed-point solve. Verifies admissibility first and throws
// infeasible_error otherwise; non-convergence within max_outer is reported
// through the trace status, never silently.
SolveResult solve(const PatternGraph& g, const TargetVector& targets,
                  const SolverConfig& config = {});

}  // namespace cps
