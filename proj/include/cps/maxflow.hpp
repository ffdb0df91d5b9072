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

#include <vector>

namespace cps {

// Dinic maximum flow on real-valued capacities. Residuals below kFlowEps are
// treated as exhausted.
class MaxFlowNetwork {
 public:
  static constexpr double kFlowEps = 1e-12;

  explicit MaxFlowNetwork(int node_count);

  int add_edge(int from, int to, double capacity);  // directed, returns arc id
  double max_flow(int source, int sink);

  // After max_flow: nodes reachable from the source in the residual graph,
  // i.e. the source side of a minimum cut.
  std::vector<bool> min_cut_source_side(int source) const;

 private:
  struct Arc {
    int to;
    double capacity;
  };

  bool build_levels(int source, int sink);
  double push(int node, int sink, double limit);

  int node_count_;
  std::vector<Arc> arcs_;                  // arc 2i+1 is the reverse of 2i
  std::vector<std::vector<int>> adjacency_;
  std::vector<int> level_;
  std::vector<size_t> next_arc_;
};

}  // namespace cps
