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

// End-to-end checks of the installed binary; the path arrives via CPS_BIN.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "cps/io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
  int exit_code;
  std::string out;
  std::string err;
};

const fs::path& work_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "cps_cli_test";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

RunResult run(const std::string& args, const std::string& env = "") {
  const char* bin = std::getenv("CPS_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "CPS_BIN must point at the cps binary");
  const fs::path out = work_dir() / "stdout.txt";
  const fs::path err = work_dir() / "stderr.txt";
  std::ostringstream cmd;
  if (!env.empty()) cmd << env << " ";
  cmd << '"' << bin << "\" " << args << " > \"" << out.string() << "\" 2> \""
      << err.string() << '"';
  const int raw = std::system(cmd.str().c_str());
  RunResult result;
  result.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  result.out = slurp(out);
  result.err = slurp(err);
  return result;
}

fs::path write(const std::string& name, const std::string& content) {
  const fs::path p = work_dir() / name;
  std::ofstream(p, std::ios::binary) << content;
  return p;
}

// Symmetric torus total at unit curvatures, theta = pi/2.
constexpr double kSymFaceTotal = 5.40408687084832;

fs::path torus_with_targets(const std::string& name, double target) {
  const RunResult gen = run("generate torus --n 3 -o \"" +
                            (work_dir() / "gen_tmp.json").string() + "\"");
  REQUIRE(gen.exit_code == 0);
  json doc = json::parse(slurp(work_dir() / "gen_tmp.json"));
  json targets = json::object();
  for (const auto& face : doc["faces"]) targets[face["id"].get<std::string>()] = target;
  doc["targets"] = targets;
  return write(name, doc.dump(2) + "\n");
}

}  // namespace

TEST_CASE("generate and validate") {
  const fs::path out = work_dir() / "torus.json";
  CHECK(run("generate torus --n 3 --theta 1.0 -o \"" + out.string() + "\"").exit_code == 0);

  const RunResult ok = run("validate \"" + out.string() + "\"");
  CHECK(ok.exit_code == 0);
  CHECK(json::parse(ok.out)["ok"] == true);

  SUBCASE("manifest goes to stderr on every run") {
    const RunResult r = run("validate \"" + out.string() + "\"");
    const json manifest = json::parse(r.err);
    CHECK(manifest["command"] == "validate");
    CHECK(manifest["status"] == 0);
    CHECK(manifest.contains("wall_time_s"));
    CHECK(manifest.contains("version"));
    CHECK(manifest.contains("config"));
  }

  SUBCASE("invariant violations exit 1 and name the edge") {
    json doc = json::parse(slurp(out));
    doc["edges"][0]["theta"] = 1.6;
    const fs::path bad = write("bad_theta.json", doc.dump());
    const RunResult r = run("validate \"" + bad.string() + "\"");
    CHECK(r.exit_code == 1);
    const json report = json::parse(r.out);
    CHECK(report["ok"] == false);
    bool named = false;
    for (const auto& diag : report["diagnostics"]) {
      named = named || diag["location"] == doc["edges"][0]["id"];
    }
    CHECK(named);
  }

  SUBCASE("malformed documents exit 2") {
    const fs::path bad = write("broken.json", "{ nope");
    CHECK(run("validate \"" + bad.string() + "\"").exit_code == 2);
  }

  SUBCASE("bad generator arguments exit 2") {
    CHECK(run("generate torus --n 2").exit_code == 2);
  }
}

TEST_CASE("feasible") {
  const fs::path good = torus_with_targets("feas_good.json", kSymFaceTotal);
  const RunResult r = run("feasible \"" + good.string() + "\"");
  CHECK(r.exit_code == 0);
  const json verdict = json::parse(r.out);
  CHECK(verdict["feasible"] == true);
  CHECK(verdict["min_slack"].get<double>() > 0.0);

  SUBCASE("scaled-out targets exit 1 with a witness") {
    const fs::path bad = torus_with_targets("feas_bad.json", kSymFaceTotal * 100.0);
    const RunResult rb = run("feasible \"" + bad.string() + "\"");
    CHECK(rb.exit_code == 1);
    const json v = json::parse(rb.out);
    CHECK(v["feasible"] == false);
    CHECK_FALSE(v["witness"].empty());
  }

  SUBCASE("missing targets exit 2") {
    const fs::path plain = work_dir() / "torus.json";
    CHECK(run("feasible \"" + plain.string() + "\"").exit_code == 2);
  }

  SUBCASE("methods agree, also under --verify") {
    for (const std::string method : {"bruteforce", "mincut"}) {
      const RunResult rm = run("feasible --method " + method + " \"" + good.string() + "\"");
      CHECK(rm.exit_code == 0);
      CHECK(json::parse(rm.out)["min_slack"].get<double>() ==
            doctest::Approx(verdict["min_slack"].get<double>()).epsilon(1e-9));
    }
    CHECK(run("feasible --verify \"" + good.string() + "\"").exit_code == 0);
  }
}

TEST_CASE("solve") {
  const fs::path input = torus_with_targets("solve_in.json", kSymFaceTotal);
  const fs::path sol = work_dir() / "solution.json";
  const fs::path trace = work_dir() / "trace.csv";

  const RunResult r = run("solve \"" + input.string() + "\" -o \"" + sol.string() +
                          "\" --trace \"" + trace.string() + "\"");
  REQUIRE(r.exit_code == 0);
  const json solution = json::parse(slurp(sol));
  CHECK(solution["status"] == "converged");
  for (const auto& [id, k] : solution["curvatures"].items()) {
    CHECK(k.get<double>() == doctest::Approx(1.0).epsilon(1e-8));
  }
  CHECK(solution["gauss_bonnet"]["gauss_bonnet_residual"].get<double>() < 1e-9);

  SUBCASE("trace rows equal iterations") {
    const std::string csv = slurp(trace);
    const long rows = std::count(csv.begin(), csv.end(), '\n') - 1;
    CHECK(rows == solution["iterations"].get<int>());
  }

  SUBCASE("byte-identical reruns") {
    const fs::path sol2 = work_dir() / "solution2.json";
    REQUIRE(run("solve \"" + input.string() + "\" -o \"" + sol2.string() + "\"").exit_code ==
            0);
    const fs::path sol3 = work_dir() / "solution3.json";
    REQUIRE(run("solve \"" + input.string() + "\" -o \"" + sol3.string() + "\"",
                "CPS_THREADS=4").exit_code == 0);
    // Identical input and flags => identical bytes, sequential or threaded.
    CHECK(slurp(sol2) == slurp(sol3));
    CHECK(slurp(sol2) == slurp(sol));
  }

  SUBCASE("iteration budget failure is exit 1, trace still written") {
    const fs::path t1 = work_dir() / "trace1.csv";
    const RunResult rb = run("solve \"" + input.string() + "\" --max-iter 1 --init " +
                             "uniform:100 --trace \"" + t1.string() + "\" -o \"" +
                             (work_dir() / "sol_fail.json").string() + "\"");
    CHECK(rb.exit_code == 1);
    const std::string csv = slurp(t1);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);  // header + 1 row
    CHECK(json::parse(slurp(work_dir() / "sol_fail.json"))["status"] == "max-iterations");
  }

  SUBCASE("infeasible targets exit 1 with the witness, before iterating") {
    const fs::path bad = torus_with_targets("solve_bad.json", kSymFaceTotal * 100.0);
    const RunResult rb = run("solve \"" + bad.string() + "\"");
    CHECK(rb.exit_code == 1);
    CHECK(json::parse(rb.out)["feasible"] == false);
  }

  SUBCASE("gauss-seidel mode converges to the same pattern") {
    const fs::path solg = work_dir() / "solution_gs.json";
    REQUIRE(run("solve \"" + input.string() + "\" --mode gauss-seidel -o \"" +
                solg.string() + "\"").exit_code == 0);
    const json gs = json::parse(slurp(solg));
    for (const auto& [id, k] : gs["curvatures"].items()) {
      CHECK(k.get<double>() ==
            doctest::Approx(solution["curvatures"][id].get<double>()).epsilon(1e-8));
    }
  }
}

TEST_CASE("report") {
  const fs::path input = torus_with_targets("report_in.json", kSymFaceTotal);
  const fs::path sol = work_dir() / "report_sol.json";
  REQUIRE(run("solve \"" + input.string() + "\" -o \"" + sol.string() + "\"").exit_code == 0);

  const RunResult r = run("report \"" + sol.string() + "\"");
  CHECK(r.exit_code == 0);
  const json report = json::parse(r.out);
  CHECK(report["conservation_ok"] == true);
  CHECK(report["gauss_bonnet_residual"].get<double>() < 1e-9);

  SUBCASE("svg schematic labels every face") {
    const fs::path svg = work_dir() / "schematic.svg";
    REQUIRE(run("report \"" + sol.string() + "\" --svg \"" + svg.string() + "\"").exit_code ==
            0);
    const std::string body = slurp(svg);
    CHECK(body.find("<svg") != std::string::npos);
    CHECK(body.find("</svg>") != std::string::npos);
    size_t labels = 0;
    for (size_t pos = 0; (pos = body.find("class=\"face\"", pos)) != std::string::npos;
         ++pos) {
      ++labels;
    }
    CHECK(labels == 9);
  }

  SUBCASE("hand-edited curvature fails conservation with exit 1") {
    json doc = json::parse(slurp(sol));
    doc["curvatures"]["f1_1"] = doc["curvatures"]["f1_1"].get<double>() * 1.01;
    const fs::path tampered = write("tampered.json", doc.dump(2) + "\n");
    const RunResult rt = run("report \"" + tampered.string() + "\"");
    CHECK(rt.exit_code == 1);
    CHECK(json::parse(rt.out)["conservation_ok"] == false);
  }

  SUBCASE("edited pattern is detected as stale with exit 2") {
    json doc = json::parse(slurp(input));
    doc["edges"][0]["theta"] = 1.0;
    const fs::path moved = write("report_in_changed.json", doc.dump(2) + "\n");
    const RunResult rs = run("report \"" + sol.string() + "\" --pattern \"" +
                             moved.string() + "\"");
    CHECK(rs.exit_code == 2);
  }
}
