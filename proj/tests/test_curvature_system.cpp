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
#include <random>
#include <stdexcept>

#include <doctest.h>

#include "cps/spherical.hpp"

using namespace cps;

namespace {

constexpr double kPi = std::numbers::pi;

// Frozen symmetric torus values (all curvatures 1, theta = pi/2), computed
// with the sphere-embedding oracle and 30-digit arithmetic.
constexpr double kSymFaceTotal = 5.40408687084832;
constexpr double kSymFaceConeAngle = 7.642532944996074;
constexpr double kSymSurfaceArea = 12.234128740348389;
constexpr double kSymDiagonalPartial = 1.0088441921893733;

PatternData melon(double theta1, double theta2) {
  PatternData data;
  data.vertices = {{"v0", "v1"}};
  data.edges.push_back({"e0", {{"v0", "v1"}}, theta1, {"fa", "fb"}});
  data.edges.push_back({"e1", {{"v0", "v1"}}, theta2, {"fa", "fb"}});
  data.faces.push_back({"fa", {"e0", "e1"}});
  data.faces.push_back({"fb", {"e0", "e1"}});
  return data;
}

PatternData one_face_torus(double theta1, double theta2) {
  PatternData data;
  data.vertices = {{"v"}};
  data.edges.push_back({"a", {{"v", "v"}}, theta1, {"f", "f"}});
  data.edges.push_back({"b", {{"v", "v"}}, theta2, {"f", "f"}});
  data.faces.push_back({"f", {"a", "b", "a", "b"}});
  return data;
}

CurvatureVector random_vector(const PatternGraph& g, std::mt19937_64& rng, double lo,
                              double hi) {
  std::uniform_real_distribution<double> dist(std::log(lo), std::log(hi));
  std::vector<double> values(g.face_count());
  for (auto& v : values) v = std::exp(dist(rng));
  return CurvatureVector(std::move(values));
}

double sum_bigon_areas(const GeometryReport& report) {
  double sum = 0.0;
  for (const auto& edge : report.edges) sum += edge.bigon_area;
  return sum;
}

}  // namespace

TEST_CASE("curvature vector domain checks") {
  const PatternGraph g = generate_torus_grid(3, 1.0);
  CHECK_NOTHROW(CurvatureVector::uniform(g, 2.5));
  CHECK_THROWS_AS(CurvatureVector::uniform(g, 0.0), std::domain_error);
  CHECK_THROWS_AS(CurvatureVector::uniform(g, -1.0), std::domain_error);

  auto m = CurvatureVector::uniform(g, 1.0).to_map(g);
  CHECK_NOTHROW(CurvatureVector::from_map(g, m));
  auto missing = m;
  missing.erase("f0_0");
  CHECK_THROWS_AS(CurvatureVector::from_map(g, missing), std::invalid_argument);
  auto extra = m;
  extra["phantom"] = 1.0;
  CHECK_THROWS_AS(CurvatureVector::from_map(g, extra), std::invalid_argument);

  CurvatureVector k = CurvatureVector::uniform(g, 1.0);
  CHECK(k.log_value(0) == 0.0);
  CHECK_THROWS_AS(k.set(0, -2.0), std::domain_error);
}

TEST_CASE("total curvatures") {
  const PatternGraph g = generate_torus_grid(3, kPi / 2.0);
  const CurvatureVector ones = CurvatureVector::uniform(g, 1.0);
  for (double t : total_curvatures(g, ones)) {
    CHECK(t == doctest::Approx(kSymFaceTotal).epsilon(1e-13));
  }

  SUBCASE("bounded by the face curvature bound") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
      const CurvatureVector k = random_vector(g, rng, 1e-3, 1e3);
      const auto totals = total_curvatures(g, k);
      for (int f = 0; f < g.face_count(); ++f) {
        CHECK(totals[f] > 0.0);
        CHECK(totals[f] < g.face_total_curvature_bound(f));
      }
    }
  }

  SUBCASE("neighbor blow-up starves a face") {
    CurvatureVector k = CurvatureVector::uniform(g, 1e8);
    k.set(0, 1.0);
    CHECK(total_curvatures(g, k)[0] < 1e-6);
  }

  SUBCASE("own blow-up approaches the bound") {
    CurvatureVector k = CurvatureVector::uniform(g, 1.0);
    k.set(0, 1e8);
    CHECK(std::abs(total_curvatures(g, k)[0] - g.face_total_curvature_bound(0)) < 1e-5);
  }

  SUBCASE("self-adjacent boundaries need no special casing") {
    const PatternGraph t = PatternGraph::from_data(one_face_torus(1.0, 0.7));
    const CurvatureVector k = CurvatureVector::uniform(t, 2.0);
    const double expected = 2.0 * arc_curvature(BigonConfig(2.0, 2.0, 1.0), Side::i) +
                            2.0 * arc_curvature(BigonConfig(2.0, 2.0, 0.7), Side::i);
    CHECK(total_curvatures(t, k)[0] == doctest::Approx(expected).epsilon(1e-14));
  }

  SUBCASE("mismatched domain") {
    CHECK_THROWS_AS(total_curvatures(g, CurvatureVector(std::vector<double>(4, 1.0))),
                    std::invalid_argument);
  }
}

TEST_CASE("jacobian") {
  const PatternGraph g = generate_torus_grid(3, kPi / 2.0);
  const CurvatureVector ones = CurvatureVector::uniform(g, 1.0);
  const CurvatureJacobian jac = jacobian(g, ones);
  CHECK(jac.dense_storage());

  SUBCASE("symmetric-point entries") {
    for (int f = 0; f < g.face_count(); ++f) {
      CHECK(jac.diagonal(f) ==
            doctest::Approx(4.0 * kSymDiagonalPartial).epsilon(1e-12));
      const auto row = jac.row(f);
      CHECK(row.size() == 5);  // itself plus four distinct neighbors
      for (const auto& [col, value] : row) {
        if (col != f) CHECK(value == doctest::Approx(-2.0 / 3.0).epsilon(1e-12));
      }
    }
  }

  SUBCASE("faces sharing two edges accumulate both cross terms") {
    const PatternGraph m = PatternGraph::from_data(melon(kPi / 2.0, kPi / 2.0));
    const CurvatureJacobian jm = jacobian(m, CurvatureVector::uniform(m, 1.0));
    CHECK(jm.entry(0, 1) == doctest::Approx(-4.0 / 3.0).epsilon(1e-12));
    CHECK(jm.entry(1, 0) == doctest::Approx(-4.0 / 3.0).epsilon(1e-12));
  }

  SUBCASE("self-adjacent edges fold into the diagonal") {
    const PatternGraph t = PatternGraph::from_data(one_face_torus(1.0, 0.7));
    const CurvatureJacobian jt = jacobian(t, CurvatureVector::uniform(t, 1.0));
    CHECK(jt.size() == 1);
    CHECK(jt.diagonal(0) > 0.0);
    CHECK(jt.off_diagonal_abs_sum(0) == 0.0);
  }

  SUBCASE("row sums positive at random states") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 1000; ++trial) {
      const CurvatureVector k = random_vector(g, rng, 1e-2, 1e2);
      const CurvatureJacobian j = jacobian(g, k);
      for (int f = 0; f < g.face_count(); ++f) CHECK(j.row_sum(f) > 0.0);
    }
  }

  SUBCASE("entrywise symmetry to 1e-12") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
      const CurvatureVector k = random_vector(g, rng, 1e-2, 1e2);
      const CurvatureJacobian j = jacobian(g, k);
      for (int a = 0; a < g.face_count(); ++a) {
        for (int b = 0; b < g.face_count(); ++b) {
          CHECK(j.entry(a, b) == doctest::Approx(j.entry(b, a)).epsilon(1e-12));
        }
      }
    }
  }

  SUBCASE("matches finite differences of the totals") {
    std::mt19937_64 rng(13);
    const CurvatureVector k = random_vector(g, rng, 0.2, 5.0);
    const CurvatureJacobian j = jacobian(g, k);
    const double h = 1e-5;
    for (int b = 0; b < g.face_count(); ++b) {
      CurvatureVector up = k;
      up.set(b, k[b] * std::exp(h));
      CurvatureVector down = k;
      down.set(b, k[b] * std::exp(-h));
      const auto tu = total_curvatures(g, up);
      const auto td = total_curvatures(g, down);
      for (int a = 0; a < g.face_count(); ++a) {
        const double fd = (tu[a] - td[a]) / (2.0 * h);
        if (std::abs(fd) < 1e-14 && j.entry(a, b) == 0.0) continue;
        CHECK(j.entry(a, b) == doctest::Approx(fd).epsilon(1e-6));
      }
    }
  }

  SUBCASE("sparse storage beyond the dense limit") {
    const PatternGraph big = generate_torus_grid(9, 1.0);  // 81 faces
    std::mt19937_64 rng(17);
    const CurvatureVector k = random_vector(big, rng, 0.5, 2.0);
    const CurvatureJacobian j = jacobian(big, k);
    CHECK_FALSE(j.dense_storage());
    for (int f = 0; f < big.face_count(); ++f) {
      CHECK(j.row(f).size() == 5);
      CHECK(j.row_sum(f) > 0.0);
      CHECK(j.diagonal(f) > 0.0);
    }
    CHECK(j.entry(0, 40) == 0.0);
  }
}

TEST_CASE("face cone angle") {
  const PatternGraph g = generate_torus_grid(3, kPi / 2.0);
  const CurvatureVector ones = CurvatureVector::uniform(g, 1.0);
  CHECK(face_cone_angle(g, ones, "f1_1") ==
        doctest::Approx(kSymFaceConeAngle).epsilon(1e-13));
  CHECK_THROWS_AS(face_cone_angle(g, ones, "missing"), std::invalid_argument);

  SUBCASE("one-edge face counts its side twice") {
    PatternData data;
    data.edges.push_back({"e", {}, kPi / 2.0, {"f", "f"}});
    data.faces.push_back({"f", {"e", "e"}});
    const PatternGraph t = PatternGraph::from_data(data);
    const CurvatureVector k = CurvatureVector::uniform(t, 1.0);
    const double expected =
        2.0 * central_angle(BigonConfig(1.0, 1.0, kPi / 2.0), Side::i);
    CHECK(face_cone_angle(t, k, 0) == doctest::Approx(expected).epsilon(1e-14));
  }

  SUBCASE("T = alpha * cos r at random states") {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 100; ++trial) {
      const CurvatureVector k = random_vector(g, rng, 1e-2, 1e2);
      const auto totals = total_curvatures(g, k);
      for (int f = 0; f < g.face_count(); ++f) {
        const double alpha = face_cone_angle(g, k, f);
        const double r = radius_from_curvature(k[f]);
        CHECK(totals[f] == doctest::Approx(alpha * std::cos(r)).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("Gauss-Bonnet report") {
  const PatternGraph g = generate_torus_grid(3, kPi / 2.0);
  const CurvatureVector ones = CurvatureVector::uniform(g, 1.0);
  const GeometryReport report = gauss_bonnet_report(g, ones);

  CHECK(report.surface_area == doctest::Approx(kSymSurfaceArea).epsilon(1e-12));
  CHECK(report.area_residual < 1e-9);
  CHECK(report.bigon_identity_residual < 1e-10);
  REQUIRE(report.gauss_bonnet_residual.has_value());
  CHECK(*report.gauss_bonnet_residual < 1e-9);
  CHECK(report.warnings.empty());

  SUBCASE("conservation holds at random states and on odd fixtures") {
    std::mt19937_64 rng(23);
    const PatternGraph fixtures[] = {
        generate_torus_grid(4, 0.8),
        PatternGraph::from_data(melon(1.1, 0.4)),
        PatternGraph::from_data(one_face_torus(1.3, 0.9)),
    };
    for (const auto& graph : fixtures) {
      for (int trial = 0; trial < 30; ++trial) {
        const CurvatureVector k = random_vector(graph, rng, 5e-2, 2e1);
        const GeometryReport r = gauss_bonnet_report(graph, k);
        CHECK(r.bigon_identity_residual < 1e-10);
        CHECK(r.area_residual < 1e-9);
        REQUIRE(r.gauss_bonnet_residual.has_value());
        CHECK(*r.gauss_bonnet_residual < 1e-9);
        for (const auto& face : r.faces) {
          CHECK(face.radius > 0.0);
          CHECK(face.radius < kPi / 2.0);
        }
        for (const auto& edge : r.edges) CHECK(edge.bigon_area > 0.0);
      }
    }
  }

  SUBCASE("no vertex data drops the global residual") {
    PatternData data = melon(1.0, 1.0);
    data.vertices.reset();
    data.edges[0].vertices.reset();
    data.edges[1].vertices.reset();
    const PatternGraph g2 = PatternGraph::from_data(data);
    const GeometryReport r = gauss_bonnet_report(g2, CurvatureVector::uniform(g2, 1.0));
    CHECK_FALSE(r.gauss_bonnet_residual.has_value());
    CHECK_FALSE(r.warnings.empty());
  }

  SUBCASE("perturbing any single curvature changes the total bigon area") {
    std::mt19937_64 rng(29);
    const CurvatureVector k = random_vector(g, rng, 0.5, 2.0);
    const double base = sum_bigon_areas(gauss_bonnet_report(g, k));
    for (int f = 0; f < g.face_count(); ++f) {
      CurvatureVector up = k;
      up.set(f, k[f] * 1.05);
      CHECK(sum_bigon_areas(gauss_bonnet_report(g, up)) < base);
      CurvatureVector down = k;
      down.set(f, k[f] / 1.05);
      CHECK(sum_bigon_areas(gauss_bonnet_report(g, down)) > base);
    }
  }
}
