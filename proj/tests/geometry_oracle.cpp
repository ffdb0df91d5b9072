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

#include "geometry_oracle.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cps::oracle {

namespace {

constexpr double kPi = std::numbers::pi;

struct Vec3 {
  double x, y, z;
};

double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

Vec3 normalized(const Vec3& a) {
  const double n = std::sqrt(dot(a, a));
  return {a.x / n, a.y / n, a.z / n};
}

// Circle i sits around the north pole N, circle j around C = (sin d, 0,
// cos d). The intersection points are (x1, +-x2, cos r_i).
struct Intersection {
  double x1, x2;
};

Intersection intersection_points(double ri, double rj, double d) {
  const double x3 = std::cos(ri);
  const double x1 = (std::cos(rj) - x3 * std::cos(d)) / std::sin(d);
  const double t = 1.0 - x1 * x1 - x3 * x3;
  return {x1, std::sqrt(std::max(t, 0.0))};
}

// Interior angle of the lens at an intersection point: pi minus the angle
// between the two great-circle directions toward the centers.
double lens_angle(double ri, double rj, double d) {
  const Intersection pt = intersection_points(ri, rj, d);
  const Vec3 p{pt.x1, pt.x2, std::cos(ri)};
  const Vec3 north{0.0, 0.0, 1.0};
  const Vec3 center_j{std::sin(d), 0.0, std::cos(d)};
  const auto tangent_toward = [&](const Vec3& target) {
    const double a = dot(target, p);
    return normalized({target.x - a * p.x, target.y - a * p.y, target.z - a * p.z});
  };
  const Vec3 gi = tangent_toward(north);
  const Vec3 gj = tangent_toward(center_j);
  return kPi - std::acos(std::clamp(dot(gi, gj), -1.0, 1.0));
}

double solve_center_distance(double ri, double rj, double theta) {
  double lo = std::abs(ri - rj) + 1e-13;  // near-internal tangency: angle ~ pi
  double hi = ri + rj - 1e-13;            // near-external tangency: angle ~ 0
  for (int iter = 0; iter < 200 && hi - lo > 1e-15; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (lens_angle(ri, rj, mid) > theta) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Lens area by integrating the cap element over longitude phi about the
// north pole. For fixed phi the disk-j condition is R cos(rho - psi) >=
// cos(r_j), an interval in the polar distance rho with closed-form ends.
double lens_area(double ri, double rj, double d, int points) {
  const double sd = std::sin(d);
  const double cd = std::cos(d);
  const double crj = std::cos(rj);
  const auto integrand = [&](double phi) {
    const double a = sd * std::cos(phi);
    const double radius = std::hypot(a, cd);
    const double ratio = crj / radius;
    if (ratio > 1.0) return 0.0;
    const double psi = std::atan2(a, cd);
    const double beta = std::acos(ratio);
    const double lo = std::max(0.0, psi - beta);
    const double hi = std::min(ri, psi + beta);
    return hi > lo ? std::cos(lo) - std::cos(hi) : 0.0;
  };

  if (points % 2 == 0) ++points;  // composite Simpson needs an odd count
  const double h = 2.0 * kPi / (points - 1);
  double sum = integrand(-kPi) + integrand(kPi);
  for (int i = 1; i < points - 1; ++i) {
    sum += integrand(-kPi + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  }
  return sum * h / 3.0;
}

}  // namespace

BigonMeasurements measure_bigon(double radius_i, double radius_j, double theta,
                                int quadrature_points) {
  if (radius_i <= 0.0 || radius_i >= kPi / 2.0 || radius_j <= 0.0 ||
      radius_j >= kPi / 2.0 || theta <= 0.0 || theta > kPi / 2.0) {
    throw std::invalid_argument("oracle inputs out of range");
  }

  BigonMeasurements m{};
  m.center_distance = solve_center_distance(radius_i, radius_j, theta);

  const auto subtended = [&](double r_own, double r_other) {
    const Intersection pt = intersection_points(r_own, r_other, m.center_distance);
    const double half = std::atan2(pt.x2, pt.x1);
    return 2.0 * half;
  };
  m.central_angle_i = subtended(radius_i, radius_j);
  m.central_angle_j = subtended(radius_j, radius_i);
  m.arc_curvature_i = std::cos(radius_i) * m.central_angle_i;
  m.arc_curvature_j = std::cos(radius_j) * m.central_angle_j;
  m.lens_area = lens_area(radius_i, radius_j, m.center_distance, quadrature_points);
  return m;
}

}  // namespace cps::oracle
