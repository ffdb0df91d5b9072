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

#include "cps/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>

#include "cps/maxflow.hpp"
#include "cps/parallel.hpp"

namespace cps {

namespace {

void check_target(double value, const std::string& where) {
  if (!std::isfinite(value) || value <= 0.0) {
    std::ostringstream msg;
    msg << "target " << value << " at " << where << " must be finite and > 0";
    throw std::domain_error(msg.str());
  }
}

void check_size(const PatternGraph& g, const TargetVector& t) {
  if (t.size() != g.face_count()) {
    std::ostringstream msg;
    msg << "target vector has " << t.size() << " entries for " << g.face_count()
        << " faces";
    throw std::invalid_argument(msg.str());
  }
}

FeasibilityResult classify(double min_slack, std::vector<int> witness) {
  FeasibilityResult result;
  result.min_slack = min_slack;
  result.boundary = std::abs(min_slack) <= kFeasibilitySlackEps;
  result.feasible = min_slack > kFeasibilitySlackEps;
  result.witness = std::move(witness);
  return result;
}

std::vector<int> mask_to_faces(std::uint32_t mask) {
  std::vector<int> faces;
  for (int f = 0; mask != 0; ++f, mask >>= 1) {
    if (mask & 1u) faces.push_back(f);
  }
  return faces;
}

}  // namespace

TargetVector TargetVector::uniform(const PatternGraph& g, double value) {
  check_target(value, "uniform");
  return TargetVector(std::vector<double>(g.face_count(), value));
}

TargetVector TargetVector::from_map(const PatternGraph& g,
                                    const std::map<std::string, double>& values) {
  for (const auto& [id, value] : values) {
    if (!g.find_face(id)) {
      throw std::invalid_argument("target map names unknown face '" + id + "'");
    }
  }
  std::vector<double> v(g.face_count());
  for (int f = 0; f < g.face_count(); ++f) {
    auto it = values.find(g.face(f).id);
    if (it == values.end()) {
      throw std::invalid_argument("target map missing face '" + g.face(f).id + "'");
    }
    v[f] = it->second;
  }
  return TargetVector(std::move(v));
}

TargetVector::TargetVector(std::vector<double> values) : values_(std::move(values)) {
  for (int f = 0; f < size(); ++f) check_target(values_[f], "index " + std::to_string(f));
}

std::map<std::string, double> TargetVector::to_map(const PatternGraph& g) const {
  check_size(g, *this);
  std::map<std::string, double> m;
  for (int f = 0; f < size(); ++f) m[g.face(f).id] = values_[f];
  return m;
}

double subset_slack(const PatternGraph& g, const TargetVector& targets,
                    const std::vector<int>& faces) {
  std::vector<bool> selected(g.face_count(), false);
  double slack = 0.0;
  for (int f : faces) {
    selected[f] = true;
    slack -= targets[f];
  }
  for (int e = 0; e < g.edge_count(); ++e) {
    const auto& edge = g.edge(e);
    if (selected[edge.faces[0]] || selected[edge.faces[1]]) {
      slack += 2.0 * edge.theta;
    }
  }
  return slack;
}

FeasibilityResult check_bruteforce(const PatternGraph& g, const TargetVector& targets) {
  check_size(g, targets);
  const int n = g.face_count();
  if (n > 25) {
    throw std::invalid_argument("brute-force feasibility limited to 25 faces, got " +
                                std::to_string(n));
  }

  std::vector<std::uint32_t> edge_masks(g.edge_count());
  for (int e = 0; e < g.edge_count(); ++e) {
    edge_masks[e] = (1u << g.edge(e).faces[0]) | (1u << g.edge(e).faces[1]);
  }

  double best = 0.0;
  std::uint32_t best_mask = 0;
  const std::uint32_t limit = (1u << n) - 1u;
  for (std::uint32_t mask = 1; mask <= limit; ++mask) {
    double slack = 0.0;
    for (int e = 0; e < g.edge_count(); ++e) {
      if (edge_masks[e] & mask) slack += 2.0 * g.edge(e).theta;
    }
    for (int f = 0; f < n; ++f) {
      if (mask & (1u << f)) slack -= targets[f];
    }
    if (best_mask == 0 || slack < best) {
      best = slack;
      best_mask = mask;
    } else if (slack == best) {
      const auto current = mask_to_faces(mask);
      const auto incumbent = mask_to_faces(best_mask);
      if (std::lexicographical_compare(current.begin(), current.end(), incumbent.begin(),
                                       incumbent.end())) {
        best_mask = mask;
      }
    }
  }

  return classify(best, mask_to_faces(best_mask));
}

FeasibilityResult check_mincut(const PatternGraph& g, const TargetVector& targets,
                               int threads) {
  check_size(g, targets);
  const int n = g.face_count();
  const int m = g.edge_count();

  double total_targets = 0.0;
  for (int f = 0; f < n; ++f) total_targets += targets[f];
  const double big = total_targets + 2.0 * g.total_edge_weight() + 1.0;

  // Selecting a face earns its target and pays 2*theta once per incident
  // edge: source -> face (target), face -> edge (unbounded), edge -> sink
  // (2*theta). One run per face forces that face into the selection; the cut
  // value minus the total target is the minimum slack over subsets
  // containing it.
  std::vector<double> slacks(n);
  std::vector<std::vector<int>> witnesses(n);
  parallel_for(n, threads, [&](int forced) {
    const int source = n + m;
    const int sink = n + m + 1;
    MaxFlowNetwork net(n + m + 2);
    for (int f = 0; f < n; ++f) {
      net.add_edge(source, f, f == forced ? big : targets[f]);
    }
    for (int e = 0; e < m; ++e) {
      const auto& edge = g.edge(e);
      net.add_edge(edge.faces[0], n + e, big);
      if (edge.faces[1] != edge.faces[0]) net.add_edge(edge.faces[1], n + e, big);
      net.add_edge(n + e, sink, 2.0 * edge.theta);
    }
    slacks[forced] = net.max_flow(source, sink) - total_targets;
    const auto side = net.min_cut_source_side(source);
    for (int f = 0; f < n; ++f) {
      if (side[f]) witnesses[forced].push_back(f);
    }
  });

  int best = 0;
  for (int f = 1; f < n; ++f) {
    if (slacks[f] < slacks[best]) best = f;
  }
  return classify(slacks[best], std::move(witnesses[best]));
}

FeasibilityResult check_auto(const PatternGraph& g, const TargetVector& targets,
                             int threads) {
  return g.face_count() <= 20 ? check_bruteforce(g, targets)
                              : check_mincut(g, targets, threads);
}

}  // namespace cps
