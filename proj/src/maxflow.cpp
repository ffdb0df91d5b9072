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

#include "cps/maxflow.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace cps {

MaxFlowNetwork::MaxFlowNetwork(int node_count)
    : node_count_(node_count), adjacency_(node_count) {}

int MaxFlowNetwork::add_edge(int from, int to, double capacity) {
  const int id = static_cast<int>(arcs_.size());
  arcs_.push_back({to, capacity});
  arcs_.push_back({from, 0.0});
  adjacency_[from].push_back(id);
  adjacency_[to].push_back(id + 1);
  return id;
}

bool MaxFlowNetwork::build_levels(int source, int sink) {
  level_.assign(node_count_, -1);
  std::queue<int> queue;
  level_[source] = 0;
  queue.push(source);
  while (!queue.empty()) {
    const int node = queue.front();
    queue.pop();
    for (int arc : adjacency_[node]) {
      if (arcs_[arc].capacity > kFlowEps && level_[arcs_[arc].to] < 0) {
        level_[arcs_[arc].to] = level_[node] + 1;
        queue.push(arcs_[arc].to);
      }
    }
  }
  return level_[sink] >= 0;
}

double MaxFlowNetwork::push(int node, int sink, double limit) {
  if (node == sink) return limit;
  for (; next_arc_[node] < adjacency_[node].size(); ++next_arc_[node]) {
    const int arc = adjacency_[node][next_arc_[node]];
    const int to = arcs_[arc].to;
    if (arcs_[arc].capacity > kFlowEps && level_[to] == level_[node] + 1) {
      const double pushed = push(to, sink, std::min(limit, arcs_[arc].capacity));
      if (pushed > kFlowEps) {
        arcs_[arc].capacity -= pushed;
        arcs_[arc ^ 1].capacity += pushed;
        return pushed;
      }
    }
  }
  return 0.0;
}

double MaxFlowNetwork::max_flow(int source, int sink) {
  double flow = 0.0;
  while (build_levels(source, sink)) {
    next_arc_.assign(node_count_, 0);
    while (true) {
      const double pushed = push(source, sink, std::numeric_limits<double>::max());
      if (pushed <= kFlowEps) break;
      flow += pushed;
    }
  }
  return flow;
}

std::vector<bool> MaxFlowNetwork::min_cut_source_side(int source) const {
  std::vector<bool> reachable(node_count_, false);
  std::queue<int> queue;
  reachable[source] = true;
  queue.push(source);
  while (!queue.empty()) {
    const int node = queue.front();
    queue.pop();
    for (int arc : adjacency_[node]) {
      if (arcs_[arc].capacity > kFlowEps && !reachable[arcs_[arc].to]) {
        reachable[arcs_[arc].to] = true;
        queue.push(arcs_[arc].to);
      }
    }
  }
  return reachable;
}

}  // namespace cps
