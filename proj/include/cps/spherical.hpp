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

namespace cps {

// Boundary curvatures accepted anywhere in the API. Out-of-range values are
// rejected with std::domain_error, never silently saturated.
inline constexpr double kCurvatureMin = 1e-300;
inline constexpr double kCurvatureMax = 1e300;

// arccot on the branch (0, pi): continuous, strictly decreasing, defined for
// all finite arguments.
double arccot(double x);

// k = cot(r) for r in (0, pi/2); inverse of radius_from_curvature.
double curvature_from_radius(double radius);

// r = arccot(k) for k in [kCurvatureMin, kCurvatureMax].
double radius_from_curvature(double curvature);

// A spherical cone of angle `cone_angle` carrying the boundary circle of the
// disk of radius `radius` about the cone point. Radii are restricted to
// (0, pi/2), i.e. boundary curvature cot(r) stays positive.
class DiskGeometry {
 public:
  DiskGeometry(double cone_angle, double radius);

  double cone_angle() const { return cone_angle_; }
  double radius() const { return radius_; }
  double curvature() const;

 private:
  double cone_angle_;
  double radius_;
};

struct DiskQuantities {
  double circumference;    // alpha * sin r
  double area;             // 2 * alpha * sin^2(r/2)
  double total_curvature;  // alpha * cos r
  double gaussian_defect;  // 2*pi - alpha
};

DiskQuantities disk_quantities(const DiskGeometry& disk);

// Local data of one intersection lens: the two boundary curvatures and the
// interior angle theta in (0, pi/2]. theta = 0 and theta > pi/2 are rejected
// at construction.
class BigonConfig {
 public:
  BigonConfig(double k_i, double k_j, double theta);

  double k_i() const { return k_i_; }
  double k_j() const { return k_j_; }
  double theta() const { return theta_; }

 private:
  double k_i_;
  double k_j_;
  double theta_;
};

enum class Side { i, j };

// Central angle subtended by the lens edge on the chosen disk, in (0, pi).
// Closed form from the spherical cotangent four-part formula:
//   alpha = 2 * arccot((k_other * sin r + cos theta * cos r) / sin theta)
// with r the chosen disk's radius.
double central_angle(const BigonConfig& cfg, Side side);

// Total geodesic curvature of the chosen disk's arc of the lens boundary,
// T = k * length = alpha * cos r. Always in (0, 2*theta).
double arc_curvature(const BigonConfig& cfg, Side side);

// Lens area by Gauss-Bonnet: 2*theta - T_i - T_j. Positive for radii below
// pi/2.
double bigon_area(const BigonConfig& cfg);

// Partial derivatives of the two arc curvatures in logarithmic coordinates
// u = ln k. Signs: dTi_dui > 0, dTi_duj < 0, dTi_duj == dTj_dui, and
// dTi_dui + dTi_duj > 0.
struct ArcCurvaturePartials {
  double dTi_dui;
  double dTi_duj;
  double dTj_duj;
  double dTj_dui;
};

ArcCurvaturePartials arc_curvature_partials(const BigonConfig& cfg);

}  // namespace cps
