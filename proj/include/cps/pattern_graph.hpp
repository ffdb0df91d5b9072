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

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cps {

// Raw, unvalidated description of a weighted pattern graph, exactly as read
// from a pattern document. `vertices` is optional; when present every edge
// must name its endpoints.
struct PatternData {
  struct Edge {
    std::string id;
    std::optional<std::array<std::string, 2>> vertices;
    double theta = 0.0;
    std::array<std::string, 2> faces;  // the two disk sides, possibly equal
  };
  struct Face {
    std::string id;
    std::vector<std::string> edges;  // boundary multiset, document order
  };

  std::optional<std::vector<std::string>> vertices;
  std::vector<Edge> edges;
  std::vector<Face> faces;
  std::optional<std::map<std::string, double>> targets;
};

enum class Severity { warning, error };

struct Diagnostic {
  Severity severity;
  std::string location;
  std::string message;
};

struct ValidationReport {
  bool ok = true;  // true iff no error-severity diagnostic
  std::vector<Diagnostic> diagnostics;

  void add(Severity severity, std::string location, std::string message);
  bool has_errors() const { return !ok; }
};

// Structural validation: id uniqueness, weight ranges, referential integrity,
// face/edge incidence consistency, Euler characteristic parity and face
// boundary closure (the latter two only when vertex data is present).
ValidationReport validate(const PatternData& data);

// Immutable weighted graph of a circle pattern on a closed oriented surface.
// Vertices, edges and faces are indexed densely in ascending id order.
class PatternGraph {
 public:
  struct Edge {
    std::string id;
    std::array<int, 2> vertices{-1, -1};  // -1 when vertex data is absent
    double theta = 0.0;
    std::array<int, 2> faces{-1, -1};
  };
  // One traversal of an edge along a face boundary; `slot` selects which of
  // the edge's two sides belongs to this face.
  struct Incidence {
    int edge;
    int slot;
  };
  struct Face {
    std::string id;
    std::vector<int> edges;             // boundary multiset, document order
    std::vector<Incidence> boundary;    // same order, with side slots resolved
    std::vector<int> neighbors;         // sorted unique adjacent faces (may include self)
    double curvature_bound = 0.0;       // sum of 2*theta over distinct boundary edges
  };

  // Throws std::invalid_argument quoting the first error diagnostic.
  static PatternGraph from_data(const PatternData& data);

  int vertex_count() const { return static_cast<int>(vertex_ids_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int face_count() const { return static_cast<int>(faces_.size()); }
  bool has_vertex_data() const { return has_vertex_data_; }

  const Edge& edge(int e) const { return edges_[e]; }
  const Face& face(int f) const { return faces_[f]; }
  const std::string& vertex_id(int v) const { return vertex_ids_[v]; }

  int face_index(const std::string& id) const;    // throws on unknown id
  int edge_index(const std::string& id) const;
  int vertex_index(const std::string& id) const;
  std::optional<int> find_face(const std::string& id) const;

  // chi = |V| - |E| + |F|; requires vertex data.
  int euler_characteristic() const;

  // Number of edge ends at a vertex; loops count twice.
  int vertex_degree(int v) const;
  int max_vertex_degree() const;
  int max_face_edge_count() const;

  // Sum over edge ends at the vertex of (pi - theta).
  double vertex_cone_coefficient(const std::string& vertex) const;
  double vertex_cone_coefficient(int v) const;

  // Least upper bound of the face's achievable total curvature: sum of
  // 2*theta over its distinct boundary edges.
  double face_total_curvature_bound(int f) const { return faces_[f].curvature_bound; }

  double total_edge_weight() const { return total_theta_; }

  ValidationReport validate() const;
  PatternData to_data() const;

 private:
  PatternGraph() = default;

  std::vector<std::string> vertex_ids_;
  std::vector<Edge> edges_;
  std::vector<Face> faces_;
  std::map<std::string, int> vertex_lookup_;
  std::map<std::string, int> edge_lookup_;
  std::map<std::string, int> face_lookup_;
  std::vector<std::vector<int>> vertex_edges_;  // incident edge ends (loops twice)
  bool has_vertex_data_ = false;
  double total_theta_ = 0.0;
};

// Canonical n-by-n square grid on the torus: n^2 vertices of degree four,
// 2n^2 edges of uniform weight theta, n^2 quadrilateral faces.
PatternData generate_torus_grid_data(int n, double theta);
PatternGraph generate_torus_grid(int n, double theta);

}  // namespace cps
