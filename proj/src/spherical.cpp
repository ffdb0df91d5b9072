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

#include "cps/spherical.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace cps {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = kPi / 2.0;

[[noreturn]] void domain_fail(const char* what, double value, const char* bound) {
  std::ostringstream msg;
  msg << what << " = " << value << " violates " << bound;
  throw std::domain_error(msg.str());
}

void check_curvature(double k, const char* what) {
  if (!std::isfinite(k) || k < kCurvatureMin || k > kCurvatureMax) {
    domain_fail(what, k, "curvature bounds [1e-300, 1e300]");
  }
}

// sin and cos of r = arccot(k), computed without forming k^2 so the whole
// curvature range stays free of overflow.
struct RadiusTrig {
  double sin_r;
  double cos_r;
};

RadiusTrig radius_trig(double k) {
  const double h = std::hypot(k, 1.0);
  return {1.0 / h, k / h};
}

}  // namespace

double arccot(double x) { return std::atan2(1.0, x); }

double curvature_from_radius(double radius) {
  if (!std::isfinite(radius) || radius <= 0.0 || radius >= kHalfPi) {
    domain_fail("radius", radius, "open interval (0, pi/2)");
  }
  return 1.0 / std::tan(radius);
}

double radius_from_curvature(double curvature) {
  check_curvature(curvature, "curvature");
  return arccot(curvature);
}

DiskGeometry::DiskGeometry(double cone_angle, double radius)
    : cone_angle_(cone_angle), radius_(radius) {
  if (!std::isfinite(cone_angle) || cone_angle <= 0.0) {
    domain_fail("cone angle", cone_angle, "positivity");
  }
  if (!std::isfinite(radius) || radius <= 0.0 || radius >= kHalfPi) {
    domain_fail("radius", radius, "open interval (0, pi/2)");
  }
}

double DiskGeometry::curvature() const { return curvature_from_radius(radius_); }

DiskQuantities disk_quantities(const DiskGeometry& disk) {
  const double alpha = disk.cone_angle();
  const double r = disk.radius();
  const double half_sin = std::sin(r / 2.0);
  return DiskQuantities{
      alpha * std::sin(r),
      2.0 * alpha * half_sin * half_sin,
      alpha * std::cos(r),
      2.0 * kPi - alpha,
  };
}

BigonConfig::BigonConfig(double k_i, double k_j, double theta)
    : k_i_(k_i), k_j_(k_j), theta_(theta) {
  check_curvature(k_i, "k_i");
  check_curvature(k_j, "k_j");
  if (!std::isfinite(theta) || theta <= 0.0 || theta > kHalfPi) {
    domain_fail("theta", theta, "half-open interval (0, pi/2]");
  }
}

double central_angle(const BigonConfig& cfg, Side side) {
  const double k_own = side == Side::i ? cfg.k_i() : cfg.k_j();
  const double k_other = side == Side::i ? cfg.k_j() : cfg.k_i();
  const RadiusTrig own = radius_trig(k_own);
  // Four-part cotangent formula: cot(alpha/2) =
  //   (cot r_other * sin r_own + cos r_own * cos theta) / sin theta.
  const double cot_half =
      (k_other * own.sin_r + std::cos(cfg.theta()) * own.cos_r) / std::sin(cfg.theta());
  return 2.0 * arccot(cot_half);
}

double arc_curvature(const BigonConfig& cfg, Side side) {
  const double k_own = side == Side::i ? cfg.k_i() : cfg.k_j();
  return radius_trig(k_own).cos_r * central_angle(cfg, side);
}

double bigon_area(const BigonConfig& cfg) {
  return 2.0 * cfg.theta() - arc_curvature(cfg, Side::i) - arc_curvature(cfg, Side::j);
}

ArcCurvaturePartials arc_curvature_partials(const BigonConfig& cfg) {
  const RadiusTrig ti = radius_trig(cfg.k_i());
  const RadiusTrig tj = radius_trig(cfg.k_j());
  const double s = std::sin(cfg.theta());
  const double c = std::cos(cfg.theta());

  // Everything is expressed through sin r and cos r of the two radii, which
  // keeps every intermediate bounded for the whole admissible curvature
  // range. Dt below equals (k_i^2 + k_j^2 + 2 k_i k_j cos theta + sin^2
  // theta) / ((k_i^2 + 1)(k_j^2 + 1)).
  const double dt = ti.cos_r * ti.cos_r * tj.sin_r * tj.sin_r +
                    tj.cos_r * tj.cos_r * ti.sin_r * ti.sin_r +
                    2.0 * ti.cos_r * tj.cos_r * ti.sin_r * tj.sin_r * c +
                    s * s * ti.sin_r * ti.sin_r * tj.sin_r * tj.sin_r;

  const double half_angle_i = arccot((cfg.k_j() * ti.sin_r + c * ti.cos_r) / s);
  const double half_angle_j = arccot((cfg.k_i() * tj.sin_r + c * tj.cos_r) / s);

  const auto diagonal = [&](const RadiusTrig& own, const RadiusTrig& other,
                            double half_angle) {
    const double mixed = own.cos_r * own.sin_r * other.cos_r * other.sin_r -
                         c * own.sin_r * own.sin_r * other.sin_r * other.sin_r;
    return 2.0 * own.cos_r * own.sin_r * own.sin_r * half_angle +
           2.0 * s * own.cos_r * own.cos_r * mixed / dt;
  };
  const auto cross = [&](const RadiusTrig& own, const RadiusTrig& other) {
    return -2.0 * s * own.cos_r * own.sin_r * other.cos_r * other.sin_r / dt;
  };

  return ArcCurvaturePartials{
      diagonal(ti, tj, half_angle_i),
      cross(ti, tj),
      diagonal(tj, ti, half_angle_j),
      cross(tj, ti),
  };
}

}  // namespace cps
