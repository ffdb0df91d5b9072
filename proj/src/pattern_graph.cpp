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

#include "cps/pattern_graph.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

namespace cps {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

template <typename T>
std::map<std::string, int> build_lookup(const std::vector<T>& items, const char* kind,
                                        ValidationReport& report) {
  std::map<std::string, int> lookup;
  for (int i = 0; i < static_cast<int>(items.size()); ++i) {
    const std::string& id = [&] {
      if constexpr (std::is_same_v<T, std::string>) {
        return items[i];
      } else {
        return items[i].id;
      }
    }();
    if (id.empty()) {
      report.add(Severity::error, kind, "empty id");
      continue;
    }
    if (!lookup.emplace(id, i).second) {
      report.add(Severity::error, id, std::string("duplicate ") + kind + " id");
    }
  }
  return lookup;
}

// A face boundary is one closed walk iff the boundary sub-multigraph has all
// even vertex degrees and a single connected component.
bool boundary_is_closed_walk(const PatternData& data, const PatternData::Face& face,
                             const std::map<std::string, int>& edge_lookup,
                             const std::map<std::string, int>& vertex_lookup) {
  std::map<int, int> degree;
  std::map<int, int> component;  // union-find over touched vertices
  std::function<int(int)> find = [&](int v) {
    while (component[v] != v) {
      component[v] = component[component[v]];
      v = component[v];
    }
    return v;
  };
  for (const std::string& eid : face.edges) {
    auto it = edge_lookup.find(eid);
    if (it == edge_lookup.end()) return false;
    const auto& edge = data.edges[it->second];
    if (!edge.vertices) return false;
    const int a = vertex_lookup.at((*edge.vertices)[0]);
    const int b = vertex_lookup.at((*edge.vertices)[1]);
    degree[a] += 1;
    degree[b] += 1;
    if (!component.count(a)) component[a] = a;
    if (!component.count(b)) component[b] = b;
    component[find(a)] = find(b);
  }
  for (const auto& [v, d] : degree) {
    if (d % 2 != 0) return false;
  }
  std::set<int> roots;
  for (const auto& [v, d] : degree) roots.insert(find(v));
  return roots.size() == 1;
}

}  // namespace

void ValidationReport::add(Severity severity, std::string location, std::string message) {
  if (severity == Severity::error) ok = false;
  diagnostics.push_back({severity, std::move(location), std::move(message)});
}

ValidationReport validate(const PatternData& data) {
  ValidationReport report;

  std::map<std::string, int> vertex_lookup;
  if (data.vertices) {
    vertex_lookup = build_lookup(*data.vertices, "vertex", report);
  }
  auto edge_lookup = build_lookup(data.edges, "edge", report);
  auto face_lookup = build_lookup(data.faces, "face", report);

  if (data.edges.empty()) report.add(Severity::error, "edges", "at least one edge required");
  if (data.faces.empty()) report.add(Severity::error, "faces", "at least one face required");

  for (const auto& edge : data.edges) {
    if (!std::isfinite(edge.theta) || edge.theta <= 0.0 || edge.theta > kHalfPi) {
      std::ostringstream msg;
      msg << "theta = " << edge.theta << " outside (0, pi/2]";
      report.add(Severity::error, edge.id, msg.str());
    }
    for (const auto& fid : edge.faces) {
      if (!face_lookup.count(fid)) {
        report.add(Severity::error, edge.id, "references unknown face '" + fid + "'");
      }
    }
    if (edge.vertices) {
      if (!data.vertices) {
        report.add(Severity::error, edge.id,
                   "edge lists endpoints but the document has no vertex list");
      } else {
        for (const auto& vid : *edge.vertices) {
          if (!vertex_lookup.count(vid)) {
            report.add(Severity::error, edge.id, "references unknown vertex '" + vid + "'");
          }
        }
      }
    } else if (data.vertices) {
      report.add(Severity::error, edge.id,
                 "vertex list present but edge has no endpoints");
    }
  }

  for (const auto& face : data.faces) {
    if (face.edges.empty()) {
      report.add(Severity::error, face.id, "face has an empty boundary");
    }
    for (const auto& eid : face.edges) {
      if (!edge_lookup.count(eid)) {
        report.add(Severity::error, face.id, "references unknown edge '" + eid + "'");
      }
    }
  }

  if (!report.ok) return report;  // later checks assume intact references

  // Side/boundary multiplicity consistency: edge e occurs in face f's
  // boundary exactly as often as f occurs among e's sides.
  for (const auto& edge : data.edges) {
    std::map<std::string, int> side_count;
    for (const auto& fid : edge.faces) side_count[fid] += 1;
    for (const auto& [fid, expected] : side_count) {
      const auto& face = data.faces[face_lookup.at(fid)];
      const int actual =
          static_cast<int>(std::count(face.edges.begin(), face.edges.end(), edge.id));
      if (actual != expected) {
        std::ostringstream msg;
        msg << "edge '" << edge.id << "' has " << expected << " side(s) on face '" << fid
            << "' but occurs " << actual << " time(s) in its boundary";
        report.add(Severity::error, edge.id, msg.str());
      }
    }
  }

  if (data.vertices) {
    const long chi = static_cast<long>(data.vertices->size()) -
                     static_cast<long>(data.edges.size()) +
                     static_cast<long>(data.faces.size());
    if (chi % 2 != 0 || chi > 2) {
      std::ostringstream msg;
      msg << "Euler characteristic " << chi
          << " is not an even integer <= 2; not a closed oriented surface";
      report.add(Severity::error, "graph", msg.str());
    }

    for (const auto& face : data.faces) {
      if (!boundary_is_closed_walk(data, face, edge_lookup, vertex_lookup)) {
        report.add(Severity::error, face.id,
                   "boundary edges do not form one closed walk");
      }
    }

    std::set<std::string> touched;
    for (const auto& edge : data.edges) {
      if (edge.vertices) {
        touched.insert((*edge.vertices)[0]);
        touched.insert((*edge.vertices)[1]);
      }
    }
    for (const auto& vid : *data.vertices) {
      if (!touched.count(vid)) {
        report.add(Severity::warning, vid, "isolated vertex; cone coefficient is 0");
      }
    }
  }

  if (data.targets) {
    for (const auto& [fid, value] : *data.targets) {
      if (!face_lookup.count(fid)) {
        report.add(Severity::error, fid, "target names unknown face");
      }
      if (!std::isfinite(value) || value <= 0.0) {
        std::ostringstream msg;
        msg << "target " << value << " must be finite and > 0";
        report.add(Severity::error, fid, msg.str());
      }
    }
    for (const auto& face : data.faces) {
      if (!data.targets->count(face.id)) {
        report.add(Severity::error, face.id, "face missing from targets");
      }
    }
  }

  return report;
}

PatternGraph PatternGraph::from_data(const PatternData& data) {
  ValidationReport report = cps::validate(data);
  if (!report.ok) {
    for (const auto& diag : report.diagnostics) {
      if (diag.severity == Severity::error) {
        throw std::invalid_argument("invalid pattern: " + diag.location + ": " + diag.message);
      }
    }
  }

  PatternGraph g;
  g.has_vertex_data_ = data.vertices.has_value();
  if (data.vertices) {
    g.vertex_ids_ = *data.vertices;
    std::sort(g.vertex_ids_.begin(), g.vertex_ids_.end());
    for (int i = 0; i < static_cast<int>(g.vertex_ids_.size()); ++i) {
      g.vertex_lookup_[g.vertex_ids_[i]] = i;
    }
  }

  std::vector<PatternData::Edge> sorted_edges = data.edges;
  std::sort(sorted_edges.begin(), sorted_edges.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });
  std::vector<PatternData::Face> sorted_faces = data.faces;
  std::sort(sorted_faces.begin(), sorted_faces.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });

  for (int i = 0; i < static_cast<int>(sorted_faces.size()); ++i) {
    g.face_lookup_[sorted_faces[i].id] = i;
  }
  for (int i = 0; i < static_cast<int>(sorted_edges.size()); ++i) {
    g.edge_lookup_[sorted_edges[i].id] = i;
  }

  g.edges_.reserve(sorted_edges.size());
  for (const auto& e : sorted_edges) {
    Edge edge;
    edge.id = e.id;
    edge.theta = e.theta;
    edge.faces = {g.face_lookup_.at(e.faces[0]), g.face_lookup_.at(e.faces[1])};
    if (e.vertices) {
      edge.vertices = {g.vertex_lookup_.at((*e.vertices)[0]),
                       g.vertex_lookup_.at((*e.vertices)[1])};
    }
    g.total_theta_ += e.theta;
    g.edges_.push_back(std::move(edge));
  }

  g.faces_.reserve(sorted_faces.size());
  for (const auto& f : sorted_faces) {
    Face face;
    face.id = f.id;
    for (const auto& eid : f.edges) face.edges.push_back(g.edge_lookup_.at(eid));
    g.faces_.push_back(std::move(face));
  }

  // Resolve boundary side slots in document order: the n-th boundary
  // occurrence of an edge takes the n-th side of that edge owned by the face.
  for (int f = 0; f < static_cast<int>(g.faces_.size()); ++f) {
    Face& face = g.faces_[f];
    std::map<int, int> seen;
    std::set<int> distinct;
    for (int e : face.edges) {
      const auto& edge = g.edges_[e];
      int occurrence = seen[e]++;
      int slot = -1;
      for (int s = 0; s < 2; ++s) {
        if (edge.faces[s] == f && occurrence-- == 0) {
          slot = s;
          break;
        }
      }
      face.boundary.push_back({e, slot});
      if (distinct.insert(e).second) {
        face.curvature_bound += 2.0 * edge.theta;
        face.neighbors.push_back(edge.faces[0] == f ? edge.faces[1] : edge.faces[0]);
      }
    }
    std::sort(face.neighbors.begin(), face.neighbors.end());
    face.neighbors.erase(std::unique(face.neighbors.begin(), face.neighbors.end()),
                         face.neighbors.end());
  }

  if (g.has_vertex_data_) {
    g.vertex_edges_.resize(g.vertex_ids_.size());
    for (int e = 0; e < static_cast<int>(g.edges_.size()); ++e) {
      g.vertex_edges_[g.edges_[e].vertices[0]].push_back(e);
      g.vertex_edges_[g.edges_[e].vertices[1]].push_back(e);
    }
  }

  return g;
}

int PatternGraph::face_index(const std::string& id) const {
  auto it = face_lookup_.find(id);
  if (it == face_lookup_.end()) throw std::invalid_argument("unknown face '" + id + "'");
  return it->second;
}

int PatternGraph::edge_index(const std::string& id) const {
  auto it = edge_lookup_.find(id);
  if (it == edge_lookup_.end()) throw std::invalid_argument("unknown edge '" + id + "'");
  return it->second;
}

int PatternGraph::vertex_index(const std::string& id) const {
  auto it = vertex_lookup_.find(id);
  if (it == vertex_lookup_.end()) throw std::invalid_argument("unknown vertex '" + id + "'");
  return it->second;
}

std::optional<int> PatternGraph::find_face(const std::string& id) const {
  auto it = face_lookup_.find(id);
  if (it == face_lookup_.end()) return std::nullopt;
  return it->second;
}

int PatternGraph::euler_characteristic() const {
  if (!has_vertex_data_) {
    throw std::logic_error("Euler characteristic requires vertex data");
  }
  return vertex_count() - edge_count() + face_count();
}

int PatternGraph::vertex_degree(int v) const {
  if (!has_vertex_data_) throw std::logic_error("vertex degree requires vertex data");
  return static_cast<int>(vertex_edges_[v].size());
}

int PatternGraph::max_vertex_degree() const {
  int d = 0;
  for (int v = 0; v < vertex_count(); ++v) d = std::max(d, vertex_degree(v));
  return d;
}

int PatternGraph::max_face_edge_count() const {
  int d = 0;
  for (const auto& face : faces_) d = std::max(d, static_cast<int>(face.edges.size()));
  return d;
}

double PatternGraph::vertex_cone_coefficient(const std::string& vertex) const {
  return vertex_cone_coefficient(vertex_index(vertex));
}

double PatternGraph::vertex_cone_coefficient(int v) const {
  if (!has_vertex_data_) {
    throw std::logic_error("vertex cone coefficient requires vertex data");
  }
  double sum = 0.0;
  for (int e : vertex_edges_[v]) sum += std::numbers::pi - edges_[e].theta;
  return sum;
}

ValidationReport PatternGraph::validate() const { return cps::validate(to_data()); }

PatternData PatternGraph::to_data() const {
  PatternData data;
  if (has_vertex_data_) data.vertices = vertex_ids_;
  for (const auto& edge : edges_) {
    PatternData::Edge e;
    e.id = edge.id;
    e.theta = edge.theta;
    e.faces = {faces_[edge.faces[0]].id, faces_[edge.faces[1]].id};
    if (has_vertex_data_) {
      e.vertices = {vertex_ids_[edge.vertices[0]], vertex_ids_[edge.vertices[1]]};
    }
    data.edges.push_back(std::move(e));
  }
  for (const auto& face : faces_) {
    PatternData::Face f;
    f.id = face.id;
    for (int e : face.edges) f.edges.push_back(edges_[e].id);
    data.faces.push_back(std::move(f));
  }
  return data;
}

PatternData generate_torus_grid_data(int n, double theta) {
  if (n < 3) {
    throw std::invalid_argument("torus grid requires n >= 3, got " + std::to_string(n));
  }
  const auto vid = [](int i, int j) {
    return "v" + std::to_string(i) + "_" + std::to_string(j);
  };
  const auto fid = [](int i, int j) {
    return "f" + std::to_string(i) + "_" + std::to_string(j);
  };

  PatternData data;
  data.vertices.emplace();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) data.vertices->push_back(vid(i, j));
  }

  // Horizontal edge eh{i}_{j} runs from v(i,j) to v(i,j+1) and separates the
  // face row below (f i,j) from the row above (f i-1,j); vertical edge
  // ev{i}_{j} runs from v(i,j) to v(i+1,j) and separates f(i,j) from
  // f(i,j-1).
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      PatternData::Edge h;
      h.id = "eh" + std::to_string(i) + "_" + std::to_string(j);
      h.vertices = {vid(i, j), vid(i, (j + 1) % n)};
      h.theta = theta;
      h.faces = {fid(i, j), fid((i + n - 1) % n, j)};
      data.edges.push_back(std::move(h));

      PatternData::Edge v;
      v.id = "ev" + std::to_string(i) + "_" + std::to_string(j);
      v.vertices = {vid(i, j), vid((i + 1) % n, j)};
      v.theta = theta;
      v.faces = {fid(i, j), fid(i, (j + n - 1) % n)};
      data.edges.push_back(std::move(v));
    }
  }

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      PatternData::Face f;
      f.id = fid(i, j);
      f.edges = {"eh" + std::to_string(i) + "_" + std::to_string(j),
                 "ev" + std::to_string(i) + "_" + std::to_string((j + 1) % n),
                 "eh" + std::to_string((i + 1) % n) + "_" + std::to_string(j),
                 "ev" + std::to_string(i) + "_" + std::to_string(j)};
      data.faces.push_back(std::move(f));
    }
  }
  return data;
}

PatternGraph generate_torus_grid(int n, double theta) {
  return PatternGraph::from_data(generate_torus_grid_data(n, theta));
}

}  // namespace cps
