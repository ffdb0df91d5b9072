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
#include <optional>
#include <string>
#include <vector>

#include "cps/pattern_graph.hpp"

namespace cps {

// Per-face boundary curvatures k_f > 0, stored in graph face order. The
// logarithmic view u_f = ln k_f is the coordinate in which the adjustment
// map is analyzed.
class CurvatureVector {
 public:
  static CurvatureVector uniform(const PatternGraph& g, double k);
  // Requires the map's key set to equal the graph's face set exactly.
  static CurvatureVector from_map(const PatternGraph& g,
                                  const std::map<std::string, double>& values);
  explicit CurvatureVector(std::vector<double> values);

  int size() const { return static_cast<int>(values_.size()); }
  double operator[](int f) const { return values_[f]; }
  double log_value(int f) const;
  void set(int f, double k);
  const std::vector<double>& values() const { return values_; }
  std::map<std::string, double> to_map(const PatternGraph& g) const;

 private:
  std::vector<double> values_;
};

// Jacobian d T_f / d u_g of the per-face totals in logarithmic coordinates.
// Row f is supported on f and its neighbors; the diagonal is positive, the
// off-diagonal entries negative, and every row sum strictly positive. Small
// systems are held densely, larger ones by sparse adjacency rows.
class CurvatureJacobian {
 public:
  static constexpr int kDenseLimit = 64;

  explicit CurvatureJacobian(int n);

  int size() const { return n_; }
  bool dense_storage() const { return dense_; }
  void add(int i, int j, double value);
  double entry(int i, int j) const;
  double diagonal(int i) const { return entry(i, i); }
  double row_sum(int i) const;
  double off_diagonal_abs_sum(int i) const;
  // Nonzero entries of a row, sorted by column.
  std::vector<std::pair<int, double>> row(int i) const;

 private:
  int n_;
  bool dense_;
  std::vector<double> dense_values_;
  std::vector<std::map<int, double>> sparse_rows_;
};

// Total geodesic curvature of every face: the sum of its boundary arc
// curvatures, accumulated in fixed boundary order. Strictly between 0 and
// the face's curvature bound.
std::vector<double> total_curvatures(const PatternGraph& g, const CurvatureVector& k);

double face_total_curvature(const PatternGraph& g, const CurvatureVector& k, int f);

// Same, with the face's own curvature replaced by `own_k` (self-adjacent
// arcs see the replacement on both sides).
double face_total_curvature(const PatternGraph& g, const CurvatureVector& k, int f,
                            double own_k);

CurvatureJacobian jacobian(const PatternGraph& g, const CurvatureVector& k);

// Cone angle at the face's disk center: sum of the central angles of its
// boundary arcs. Satisfies T_f = alpha_f * cos(r_f).
double face_cone_angle(const PatternGraph& g, const CurvatureVector& k, int f);
double face_cone_angle(const PatternGraph& g, const CurvatureVector& k,
                       const std::string& face_id);

// Full intrinsic geometry of the realized pattern plus its conservation
// residuals.
struct GeometryReport {
  struct FaceEntry {
    double radius;
    double cone_angle;
    double disk_area;
    double total_curvature;
  };
  struct EdgeEntry {
    std::array<double, 2> central_angles;  // per side slot
    std::array<double, 2> arc_curvatures;
    double bigon_area;
  };

  std::vector<FaceEntry> faces;  // graph face order
  std::vector<EdgeEntry> edges;  // graph edge order
  double surface_area = 0.0;     // sum alpha_f - 2 sum theta_e
  // |(sum disk areas - sum bigon areas) - surface_area|
  double area_residual = 0.0;
  // |sum bigon areas - (2 sum theta - sum T_f)|
  double bigon_identity_residual = 0.0;
  // |Area + sum_v (2pi - alpha_v) + sum_f (2pi - alpha_f) - 2 pi chi|,
  // present only when the graph carries vertex data.
  std::optional<double> gauss_bonnet_residual;
  std::vector<std::string> warnings;
};

GeometryReport gauss_bonnet_report(const PatternGraph& g, const CurvatureVector& k);

}  // namespace cps
