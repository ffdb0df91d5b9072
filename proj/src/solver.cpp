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

#include "cps/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cps/parallel.hpp"
#include "cps/spherical.hpp"

namespace cps {

namespace {

void check_targets_size(const PatternGraph& g, const TargetVector& targets) {
  if (targets.size() != g.face_count()) {
    std::ostringstream msg;
    msg << "target vector has " << targets.size() << " entries for " << g.face_count()
        << " faces";
    throw std::invalid_argument(msg.str());
  }
}

double max_arc_curvature(const PatternGraph& g, const CurvatureVector& k) {
  double worst = 0.0;
  for (int e = 0; e < g.edge_count(); ++e) {
    const auto& edge = g.edge(e);
    const BigonConfig cfg(k[edge.faces[0]], k[edge.faces[1]], edge.theta);
    worst = std::max(worst, arc_curvature(cfg, Side::i));
    worst = std::max(worst, arc_curvature(cfg, Side::j));
  }
  return worst;
}

double sup_residual(const std::vector<double>& totals, const TargetVector& targets) {
  double r = 0.0;
  for (size_t f = 0; f < totals.size(); ++f) {
    r = std::max(r, std::abs(totals[f] - targets[static_cast<int>(f)]));
  }
  return r;
}

}  // namespace

CurvatureVector initial_subpattern(const PatternGraph& g, const TargetVector& targets) {
  check_targets_size(g, targets);
  FeasibilityResult feasibility = check_auto(g, targets);
  if (!feasibility.feasible) {
    throw infeasible_error("targets are not admissible (min slack " +
                               std::to_string(feasibility.min_slack) + ")",
                           std::move(feasibility));
  }

  double min_target = targets[0];
  for (int f = 1; f < targets.size(); ++f) min_target = std::min(min_target, targets[f]);
  int incidence_bound = g.max_face_edge_count();
  if (g.has_vertex_data()) incidence_bound = std::max(incidence_bound, g.max_vertex_degree());
  const double arc_bound = min_target / incidence_bound;

  // Shrinking a uniform vector sends every arc curvature to zero, so both
  // conditions are eventually met.
  double k0 = 1.0;
  while (true) {
    CurvatureVector k = CurvatureVector::uniform(g, k0);
    bool ok = max_arc_curvature(g, k) <= arc_bound;
    if (ok) {
      const auto totals = total_curvatures(g, k);
      for (int f = 0; f < g.face_count(); ++f) {
        if (totals[f] > targets[f]) {
          ok = false;
          break;
        }
      }
    }
    if (ok) return k;
    k0 *= 0.5;
    if (k0 < kCurvatureMin) {
      throw std::logic_error("subpattern start not found above the curvature floor");
    }
  }
}

double adjust_face(const PatternGraph& g, const CurvatureVector& k, int f, double target,
                   double tol_inner) {
  const double bound = g.face_total_curvature_bound(f);
  if (!std::isfinite(target) || target <= 0.0 || target >= bound) {
    std::ostringstream msg;
    msg << "target " << target << " for face '" << g.face(f).id
        << "' outside the solvable interval (0, " << bound << ")";
    throw std::domain_error(msg.str());
  }

  const auto value_at = [&](double u) {
    return face_total_curvature(g, k, f, std::exp(u)) - target;
  };

  // Bracket the root around the current value, expanding geometrically; the
  // total is strictly increasing in u with range (0, bound). u stays within
  // the logarithm of the representable curvature range.
  const double u_max = std::log(kCurvatureMax);
  double u_low = k.log_value(f);
  double u_high = u_low;
  const double here = value_at(u_low);
  if (here < 0.0) {
    double step = 1.0;
    while (u_high < u_max && value_at(std::min(u_high + step, u_max)) < 0.0) {
      u_high = std::min(u_high + step, u_max);
      step *= 2.0;
    }
    if (u_high >= u_max) throw std::logic_error("root bracket escaped upward");
    u_high = std::min(u_high + step, u_max);
  } else if (here > 0.0) {
    double step = 1.0;
    while (u_low > -u_max && value_at(std::max(u_low - step, -u_max)) > 0.0) {
      u_low = std::max(u_low - step, -u_max);
      step *= 2.0;
    }
    if (u_low <= -u_max) throw std::logic_error("root bracket escaped downward");
    u_low = std::max(u_low - step, -u_max);
  } else {
    return k[f];
  }

  while (u_high - u_low > tol_inner) {
    const double mid = 0.5 * (u_low + u_high);
    if (mid <= u_low || mid >= u_high) break;  // bracket at rounding resolution
    if (value_at(mid) < 0.0) {
      u_low = mid;
    } else {
      u_high = mid;
    }
  }
  return std::exp(0.5 * (u_low + u_high));
}

CurvatureVector iterate_once(const PatternGraph& g, const CurvatureVector& k,
                             const TargetVector& targets, SweepMode mode,
                             double tol_inner, int threads) {
  check_targets_size(g, targets);
  if (mode == SweepMode::jacobi) {
    std::vector<double> next(g.face_count());
    parallel_for(g.face_count(), threads, [&](int f) {
      next[f] = adjust_face(g, k, f, targets[f], tol_inner);
    });
    return CurvatureVector(std::move(next));
  }
  CurvatureVector current = k;
  for (int f = 0; f < g.face_count(); ++f) {
    current.set(f, adjust_face(g, current, f, targets[f], tol_inner));
  }
  return current;
}

double estimate_contraction(const PatternGraph& g, const CurvatureVector& k,
                            const TargetVector& targets, double tol_inner) {
  check_targets_size(g, targets);
  double worst = 0.0;
  for (int f = 0; f < g.face_count(); ++f) {
    CurvatureVector shifted = k;
    shifted.set(f, adjust_face(g, k, f, targets[f], tol_inner));
    double diag = 0.0;
    double off = 0.0;
    for (const auto& inc : g.face(f).boundary) {
      const auto& edge = g.edge(inc.edge);
      const int other = edge.faces[1 - inc.slot];
      const auto p =
          arc_curvature_partials(BigonConfig(shifted[f], shifted[other], edge.theta));
      diag += p.dTi_dui;
      if (other == f) {
        diag += p.dTi_duj;  // self-adjacent arc varies on both sides
      } else {
        off += std::abs(p.dTi_duj);
      }
    }
    worst = std::max(worst, off / diag);
  }
  return worst;
}

CurvatureVector merge_max(const CurvatureVector& a, const CurvatureVector& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("componentwise max over mismatched face domains");
  }
  std::vector<double> merged(a.size());
  for (int f = 0; f < a.size(); ++f) merged[f] = std::max(a[f], b[f]);
  return CurvatureVector(std::move(merged));
}

SolveResult solve(const PatternGraph& g, const TargetVector& targets,
                  const SolverConfig& config) {
  check_targets_size(g, targets);
  if (config.tol_total <= 0.0 || config.tol_inner <= 0.0 || config.max_outer < 1) {
    throw std::invalid_argument("solver tolerances must be positive, max_outer >= 1");
  }

  FeasibilityResult feasibility = check_auto(g, targets, config.threads);
  if (!feasibility.feasible) {
    throw infeasible_error("targets are not admissible (min slack " +
                               std::to_string(feasibility.min_slack) + ")",
                           std::move(feasibility));
  }

  CurvatureVector k = [&] {
    switch (config.init) {
      case SolverConfig::Init::uniform:
        return CurvatureVector::uniform(g, config.uniform_k0);
      case SolverConfig::Init::explicit_vector:
        if (!config.explicit_k0) {
          throw std::invalid_argument("explicit initialization without a vector");
        }
        return CurvatureVector(*config.explicit_k0);
      case SolverConfig::Init::subpattern:
      default:
        return initial_subpattern(g, targets);
    }
  }();

  SolveTrace trace;
  bool warned_stagnation = false;
  bool warned_expansion = false;
  for (int outer = 0; outer < config.max_outer; ++outer) {
    const CurvatureVector next =
        iterate_once(g, k, targets, config.mode, config.tol_inner, config.threads);

    IterationRecord record;
    record.monotone_up = true;
    record.monotone_down = true;
    double max_u_step = 0.0;
    for (int f = 0; f < g.face_count(); ++f) {
      if (next[f] < k[f] - 1e-12) record.monotone_up = false;
      if (next[f] > k[f] + 1e-12) record.monotone_down = false;
      max_u_step = std::max(max_u_step, std::abs(next.log_value(f) - k.log_value(f)));
    }

    const auto totals = total_curvatures(g, next);
    record.residual = sup_residual(totals, targets);
    record.max_target_overshoot = totals[0] - targets[0];
    for (int f = 1; f < g.face_count(); ++f) {
      record.max_target_overshoot =
          std::max(record.max_target_overshoot, totals[f] - targets[f]);
    }
    record.contraction_estimate =
        estimate_contraction(g, next, targets, config.tol_inner);
    if (record.contraction_estimate >= 1.0 && !warned_expansion) {
      std::ostringstream msg;
      msg << "contraction estimate " << record.contraction_estimate
          << " >= 1 at iteration " << trace.iterations.size() + 1;
      trace.warnings.push_back(msg.str());
      warned_expansion = true;
    }
    if (config.record_snapshots) record.snapshot = next.values();
    trace.iterations.push_back(std::move(record));

    k = next;
    if (trace.iterations.back().residual < config.tol_total) {
      trace.status = SolveStatus::converged;
      return SolveResult{std::move(k), std::move(trace)};
    }
    if (max_u_step < config.tol_inner && !warned_stagnation) {
      trace.warnings.push_back("curvature update stagnated below tol_inner while the "
                               "total-curvature residual is above tol_total");
      warned_stagnation = true;
    }
  }

  trace.status = SolveStatus::max_iterations;
  return SolveResult{std::move(k), std::move(trace)};
}

}  // namespace cps
