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

#include "cps/curvature_system.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "cps/spherical.hpp"

namespace cps {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_value(double k, const std::string& where) {
  if (!std::isfinite(k) || k < kCurvatureMin || k > kCurvatureMax) {
    std::ostringstream msg;
    msg << "curvature " << k << " at " << where << " outside [1e-300, 1e300]";
    throw std::domain_error(msg.str());
  }
}

void check_size(const PatternGraph& g, const CurvatureVector& k) {
  if (k.size() != g.face_count()) {
    std::ostringstream msg;
    msg << "curvature vector has " << k.size() << " entries for " << g.face_count()
        << " faces";
    throw std::invalid_argument(msg.str());
  }
}

BigonConfig arc_config(const PatternGraph& g, const CurvatureVector& k, int f,
                       double own_k, const PatternGraph::Incidence& inc) {
  const auto& edge = g.edge(inc.edge);
  const int other = edge.faces[1 - inc.slot];
  const double k_other = other == f ? own_k : k[other];
  return BigonConfig(own_k, k_other, edge.theta);
}

}  // namespace

CurvatureVector CurvatureVector::uniform(const PatternGraph& g, double k) {
  check_value(k, "uniform");
  return CurvatureVector(std::vector<double>(g.face_count(), k));
}

CurvatureVector CurvatureVector::from_map(const PatternGraph& g,
                                          const std::map<std::string, double>& values) {
  std::vector<double> v(g.face_count());
  for (const auto& [id, value] : values) {
    if (!g.find_face(id)) {
      throw std::invalid_argument("curvature map names unknown face '" + id + "'");
    }
  }
  for (int f = 0; f < g.face_count(); ++f) {
    auto it = values.find(g.face(f).id);
    if (it == values.end()) {
      throw std::invalid_argument("curvature map missing face '" + g.face(f).id + "'");
    }
    v[f] = it->second;
  }
  return CurvatureVector(std::move(v));
}

CurvatureVector::CurvatureVector(std::vector<double> values) : values_(std::move(values)) {
  for (int f = 0; f < size(); ++f) check_value(values_[f], "index " + std::to_string(f));
}

double CurvatureVector::log_value(int f) const { return std::log(values_[f]); }

void CurvatureVector::set(int f, double k) {
  check_value(k, "index " + std::to_string(f));
  values_[f] = k;
}

std::map<std::string, double> CurvatureVector::to_map(const PatternGraph& g) const {
  check_size(g, *this);
  std::map<std::string, double> m;
  for (int f = 0; f < size(); ++f) m[g.face(f).id] = values_[f];
  return m;
}

CurvatureJacobian::CurvatureJacobian(int n) : n_(n), dense_(n <= kDenseLimit) {
  if (dense_) {
    dense_values_.assign(static_cast<size_t>(n) * n, 0.0);
  } else {
    sparse_rows_.resize(n);
  }
}

void CurvatureJacobian::add(int i, int j, double value) {
  if (dense_) {
    dense_values_[static_cast<size_t>(i) * n_ + j] += value;
  } else {
    sparse_rows_[i][j] += value;
  }
}

double CurvatureJacobian::entry(int i, int j) const {
  if (dense_) return dense_values_[static_cast<size_t>(i) * n_ + j];
  auto it = sparse_rows_[i].find(j);
  return it == sparse_rows_[i].end() ? 0.0 : it->second;
}

double CurvatureJacobian::row_sum(int i) const {
  double sum = 0.0;
  for (const auto& [j, v] : row(i)) sum += v;
  return sum;
}

double CurvatureJacobian::off_diagonal_abs_sum(int i) const {
  double sum = 0.0;
  for (const auto& [j, v] : row(i)) {
    if (j != i) sum += std::abs(v);
  }
  return sum;
}

std::vector<std::pair<int, double>> CurvatureJacobian::row(int i) const {
  std::vector<std::pair<int, double>> out;
  if (dense_) {
    for (int j = 0; j < n_; ++j) {
      const double v = dense_values_[static_cast<size_t>(i) * n_ + j];
      if (v != 0.0) out.emplace_back(j, v);
    }
  } else {
    out.assign(sparse_rows_[i].begin(), sparse_rows_[i].end());
  }
  return out;
}

double face_total_curvature(const PatternGraph& g, const CurvatureVector& k, int f,
                            double own_k) {
  double total = 0.0;
  for (const auto& inc : g.face(f).boundary) {
    total += arc_curvature(arc_config(g, k, f, own_k, inc), Side::i);
  }
  return total;
}

double face_total_curvature(const PatternGraph& g, const CurvatureVector& k, int f) {
  return face_total_curvature(g, k, f, k[f]);
}

std::vector<double> total_curvatures(const PatternGraph& g, const CurvatureVector& k) {
  check_size(g, k);
  std::vector<double> totals(g.face_count());
  for (int f = 0; f < g.face_count(); ++f) totals[f] = face_total_curvature(g, k, f);
  return totals;
}

CurvatureJacobian jacobian(const PatternGraph& g, const CurvatureVector& k) {
  check_size(g, k);
  CurvatureJacobian jac(g.face_count());
  for (int e = 0; e < g.edge_count(); ++e) {
    const auto& edge = g.edge(e);
    const int fi = edge.faces[0];
    const int fj = edge.faces[1];
    const auto p = arc_curvature_partials(BigonConfig(k[fi], k[fj], edge.theta));
    jac.add(fi, fi, p.dTi_dui);
    jac.add(fi, fj, p.dTi_duj);
    jac.add(fj, fj, p.dTj_duj);
    jac.add(fj, fi, p.dTj_dui);
  }
  return jac;
}

double face_cone_angle(const PatternGraph& g, const CurvatureVector& k, int f) {
  check_size(g, k);
  double angle = 0.0;
  for (const auto& inc : g.face(f).boundary) {
    angle += central_angle(arc_config(g, k, f, k[f], inc), Side::i);
  }
  return angle;
}

double face_cone_angle(const PatternGraph& g, const CurvatureVector& k,
                       const std::string& face_id) {
  return face_cone_angle(g, k, g.face_index(face_id));
}

GeometryReport gauss_bonnet_report(const PatternGraph& g, const CurvatureVector& k) {
  check_size(g, k);
  GeometryReport report;
  report.faces.resize(g.face_count());
  report.edges.resize(g.edge_count());

  double sum_theta = 0.0;
  double sum_bigon = 0.0;
  for (int e = 0; e < g.edge_count(); ++e) {
    const auto& edge = g.edge(e);
    const BigonConfig cfg(k[edge.faces[0]], k[edge.faces[1]], edge.theta);
    auto& entry = report.edges[e];
    entry.central_angles = {central_angle(cfg, Side::i), central_angle(cfg, Side::j)};
    entry.arc_curvatures = {arc_curvature(cfg, Side::i), arc_curvature(cfg, Side::j)};
    entry.bigon_area = bigon_area(cfg);
    sum_theta += edge.theta;
    sum_bigon += entry.bigon_area;
    if (entry.bigon_area <= 0.0) {
      report.warnings.push_back("nonpositive bigon area on edge '" + edge.id + "'");
    }
  }

  double sum_alpha = 0.0;
  double sum_total = 0.0;
  double sum_disk_area = 0.0;
  for (int f = 0; f < g.face_count(); ++f) {
    auto& entry = report.faces[f];
    entry.radius = radius_from_curvature(k[f]);
    entry.cone_angle = 0.0;
    entry.total_curvature = 0.0;
    for (const auto& inc : g.face(f).boundary) {
      entry.cone_angle += report.edges[inc.edge].central_angles[inc.slot];
      entry.total_curvature += report.edges[inc.edge].arc_curvatures[inc.slot];
    }
    entry.disk_area = disk_quantities(DiskGeometry(entry.cone_angle, entry.radius)).area;
    sum_alpha += entry.cone_angle;
    sum_total += entry.total_curvature;
    sum_disk_area += entry.disk_area;
  }

  report.surface_area = sum_alpha - 2.0 * sum_theta;
  report.area_residual = std::abs((sum_disk_area - sum_bigon) - report.surface_area);
  report.bigon_identity_residual = std::abs(sum_bigon - (2.0 * sum_theta - sum_total));

  if (g.has_vertex_data()) {
    double defects = 0.0;
    for (int v = 0; v < g.vertex_count(); ++v) {
      defects += kTwoPi - g.vertex_cone_coefficient(v);
    }
    for (int f = 0; f < g.face_count(); ++f) {
      defects += kTwoPi - report.faces[f].cone_angle;
    }
    report.gauss_bonnet_residual = std::abs(report.surface_area + defects -
                                            kTwoPi * g.euler_characteristic());
  } else {
    report.warnings.push_back("no vertex data: global Gauss-Bonnet residual omitted");
  }

  return report;
}

}  // namespace cps
