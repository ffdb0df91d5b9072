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

// Command line front end: validate / feasible / solve / report / generate.
// Exit codes: 0 success, 1 domain-negative (infeasible, diverged, invariant
// failure), 2 input error, 3 internal inconsistency.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "cps/io.hpp"
#include "cps/solver.hpp"
#include "cps/spherical.hpp"
#include "cps/version.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;

int env_threads() {
  const char* raw = std::getenv("CPS_THREADS");
  if (raw == nullptr) return 0;
  try {
    return std::max(0, std::stoi(raw));
  } catch (...) {
    return 0;
  }
}

void emit(const json& doc) { std::cout << cps::format_json(doc); }

void write_or_print(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
  } else {
    cps::atomic_write_file(path, content);
  }
}

struct InitOption {
  cps::SolverConfig::Init kind = cps::SolverConfig::Init::subpattern;
  double uniform_k0 = 1.0;
  std::string file;
};

InitOption parse_init(const std::string& text) {
  InitOption option;
  if (text == "subpattern") {
    option.kind = cps::SolverConfig::Init::subpattern;
  } else if (text.rfind("uniform:", 0) == 0) {
    option.kind = cps::SolverConfig::Init::uniform;
    option.uniform_k0 = std::stod(text.substr(8));
  } else if (text.rfind("file:", 0) == 0) {
    option.kind = cps::SolverConfig::Init::explicit_vector;
    option.file = text.substr(5);
  } else {
    throw cps::parse_error("unknown --init '" + text +
                           "' (expected subpattern, uniform:K or file:PATH)");
  }
  return option;
}

std::string format_value(double v) {
  std::ostringstream out;
  out.precision(6);
  out << v;
  return out.str();
}

// Schematic combinatorial layout: faces on a circle, one chord per edge,
// one label per face. Not an isometric development.
std::string render_svg(const cps::PatternGraph& g,
                       const std::map<std::string, double>& curvatures,
                       const std::map<std::string, double>& radii) {
  constexpr double kSize = 900.0;
  constexpr double kRing = 360.0;
  const double cx = kSize / 2.0;
  const double cy = kSize / 2.0;
  const int n = g.face_count();

  auto pos = [&](int f) {
    const double angle = 2.0 * 3.14159265358979323846 * f / n;
    return std::pair<double, double>{cx + kRing * std::sin(angle),
                                     cy - kRing * std::cos(angle)};
  };

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\""
      << kSize << "\" viewBox=\"0 0 " << kSize << " " << kSize << "\">\n";
  out << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (int e = 0; e < g.edge_count(); ++e) {
    const auto& edge = g.edge(e);
    const auto [x0, y0] = pos(edge.faces[0]);
    const auto [x1, y1] = pos(edge.faces[1]);
    if (edge.faces[0] == edge.faces[1]) {
      out << "  <circle cx=\"" << x0 << "\" cy=\"" << y0 - 18.0
          << "\" r=\"18\" fill=\"none\" stroke=\"#999\"/>\n";
    } else {
      out << "  <line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x1 << "\" y2=\""
          << y1 << "\" stroke=\"#999\"/>\n";
    }
  }
  for (int f = 0; f < n; ++f) {
    const auto [x, y] = pos(f);
    const std::string& id = g.face(f).id;
    out << "  <g class=\"face\">\n";
    out << "    <circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"5\" fill=\"#1f6fb2\"/>\n";
    out << "    <text x=\"" << x + 8.0 << "\" y=\"" << y - 4.0 << "\" font-size=\"11\">"
        << id << " k=" << format_value(curvatures.at(id))
        << " r=" << format_value(radii.at(id)) << "</text>\n";
    out << "  </g>\n";
  }
  out << "</svg>\n";
  return out.str();
}

int run_validate(const std::string& input) {
  const std::string text = cps::read_file(input);
  const cps::PatternData data = cps::parse_pattern_data(text);
  const cps::ValidationReport report = cps::validate(data);
  emit(cps::validation_report_json(report));
  return report.ok ? kExitOk : kExitDomain;
}

int run_feasible(const std::string& input, const std::string& method, bool verify,
                 int threads) {
  const cps::PatternData data = cps::read_pattern_data(input);
  const cps::PatternGraph g = cps::PatternGraph::from_data(data);
  const auto targets = cps::targets_from_data(g, data);
  if (!targets) throw cps::parse_error("pattern document has no 'targets'");

  cps::FeasibilityResult result;
  std::string used = method;
  if (method == "bruteforce") {
    result = cps::check_bruteforce(g, *targets);
  } else if (method == "mincut") {
    result = cps::check_mincut(g, *targets, threads);
  } else {
    result = cps::check_auto(g, *targets, threads);
    used = g.face_count() <= 20 ? "bruteforce" : "mincut";
  }

  if (verify && g.face_count() <= 25) {
    const auto brute = cps::check_bruteforce(g, *targets);
    const auto cut = cps::check_mincut(g, *targets, threads);
    if (brute.feasible != cut.feasible ||
        std::abs(brute.min_slack - cut.min_slack) > 1e-9) {
      std::cerr << "internal inconsistency: brute-force slack " << brute.min_slack
                << " vs min-cut slack " << cut.min_slack << "\n";
      return kExitInternal;
    }
  }

  emit(cps::feasibility_result_json(g, result, used));
  return result.feasible ? kExitOk : kExitDomain;
}

int run_generate(int n, double theta, const std::string& output) {
  write_or_print(output, cps::serialize_pattern(cps::generate_torus_grid_data(n, theta)));
  return kExitOk;
}

int run_solve(const std::string& input, const std::string& mode_name, double tol,
              int max_iter, const std::string& trace_path, const std::string& init_text,
              const std::string& output, int threads) {
  const std::string text = cps::read_file(input);
  const cps::PatternData data = cps::parse_pattern_data(text);
  const cps::PatternGraph g = cps::PatternGraph::from_data(data);
  const auto targets = cps::targets_from_data(g, data);
  if (!targets) throw cps::parse_error("pattern document has no 'targets'");

  cps::SolverConfig config;
  config.mode = mode_name == "gauss-seidel" ? cps::SweepMode::gauss_seidel
                                            : cps::SweepMode::jacobi;
  config.tol_total = tol;
  config.max_outer = max_iter;
  config.threads = threads;
  const InitOption init = parse_init(init_text);
  config.init = init.kind;
  config.uniform_k0 = init.uniform_k0;
  if (init.kind == cps::SolverConfig::Init::explicit_vector) {
    try {
      json doc = json::parse(cps::read_file(init.file));
      const auto start = cps::CurvatureVector::from_map(
          g, doc.get<std::map<std::string, double>>());
      config.explicit_k0 = start.values();
    } catch (const json::exception& err) {
      throw cps::parse_error("initial vector '" + init.file + "': " + err.what());
    }
  }

  cps::SolveResult solved = [&] {
    try {
      return cps::solve(g, *targets, config);
    } catch (const cps::infeasible_error& err) {
      emit(cps::feasibility_result_json(g, err.result(), "auto"));
      std::cerr << "error: " << err.what() << "\n";
      std::exit(kExitDomain);
    }
  }();

  if (!trace_path.empty()) {
    cps::atomic_write_file(trace_path, cps::write_trace_csv(solved.trace));
  }

  cps::SolutionFile solution;
  solution.pattern_path = input;
  solution.pattern_hash = cps::fnv1a_hex(text);
  solution.status = cps::solve_status_name(solved.trace.status);
  solution.mode = mode_name;
  solution.tol_total = config.tol_total;
  solution.tol_inner = config.tol_inner;
  solution.iterations = static_cast<int>(solved.trace.iterations.size());
  solution.warnings = solved.trace.warnings;
  solution.monotone_up = true;
  solution.monotone_down = true;
  for (const auto& rec : solved.trace.iterations) {
    solution.monotone_up = solution.monotone_up && rec.monotone_up;
    solution.monotone_down = solution.monotone_down && rec.monotone_down;
  }
  if (!solved.trace.iterations.empty()) {
    solution.final_residual = solved.trace.iterations.back().residual;
    solution.contraction_estimate = solved.trace.iterations.back().contraction_estimate;
  }
  solution.curvatures = solved.curvatures.to_map(g);
  for (const auto& [id, k] : solution.curvatures) {
    solution.radii[id] = cps::radius_from_curvature(k);
  }
  solution.gauss_bonnet =
      cps::geometry_report_json(g, cps::gauss_bonnet_report(g, solved.curvatures));

  write_or_print(output, cps::format_json(cps::solution_json(solution)));
  return solved.trace.status == cps::SolveStatus::converged ? kExitOk : kExitDomain;
}

int run_report(const std::string& solution_path, const std::string& pattern_override,
               const std::string& svg_path) {
  const cps::SolutionFile solution = cps::read_solution(solution_path);
  const std::string pattern_path =
      pattern_override.empty() ? solution.pattern_path : pattern_override;
  const std::string pattern_text = cps::read_file(pattern_path);
  if (cps::fnv1a_hex(pattern_text) != solution.pattern_hash) {
    std::cerr << "error: pattern '" << pattern_path
              << "' does not match the hash recorded in the solution\n";
    return kExitInput;
  }
  const cps::PatternData data = cps::parse_pattern_data(pattern_text);
  const cps::PatternGraph g = cps::PatternGraph::from_data(data);

  cps::CurvatureVector k = [&] {
    try {
      return cps::CurvatureVector::from_map(g, solution.curvatures);
    } catch (const std::invalid_argument& err) {
      std::cerr << "error: solution does not match pattern: " << err.what() << "\n";
      std::exit(kExitInput);
    }
  }();

  std::vector<std::string> failures;
  for (const auto& [id, r] : solution.radii) {
    const auto f = g.find_face(id);
    if (!f) {
      std::cerr << "error: solution radius for unknown face '" << id << "'\n";
      return kExitInput;
    }
    if (std::abs(r - cps::radius_from_curvature(k[*f])) > 1e-12) {
      failures.push_back("radius of face '" + id + "' inconsistent with its curvature");
    }
  }

  const cps::GeometryReport report = cps::gauss_bonnet_report(g, k);
  if (report.bigon_identity_residual >= 1e-10) {
    failures.push_back("bigon area identity residual " +
                       std::to_string(report.bigon_identity_residual) + " >= 1e-10");
  }
  if (report.area_residual >= 1e-9) {
    failures.push_back("surface area cross-check residual " +
                       std::to_string(report.area_residual) + " >= 1e-9");
  }
  if (report.gauss_bonnet_residual && *report.gauss_bonnet_residual >= 1e-9) {
    failures.push_back("global Gauss-Bonnet residual " +
                       std::to_string(*report.gauss_bonnet_residual) + " >= 1e-9");
  }
  for (int e = 0; e < g.edge_count(); ++e) {
    if (report.edges[e].bigon_area <= 0.0) {
      failures.push_back("nonpositive bigon area on edge '" + g.edge(e).id + "'");
    }
  }
  if (solution.status == "converged") {
    const auto targets = cps::targets_from_data(g, data);
    if (targets) {
      double residual = 0.0;
      const auto totals = cps::total_curvatures(g, k);
      for (int f = 0; f < g.face_count(); ++f) {
        residual = std::max(residual, std::abs(totals[f] - (*targets)[f]));
      }
      if (residual > 10.0 * solution.tol_total) {
        failures.push_back("recomputed residual " + std::to_string(residual) +
                           " exceeds the recorded tolerance");
      }
    }
  }

  json doc = cps::geometry_report_json(g, report);
  doc["conservation_ok"] = failures.empty();
  doc["conservation_failures"] = failures;
  emit(doc);

  if (!svg_path.empty()) {
    cps::atomic_write_file(svg_path, render_svg(g, solution.curvatures, solution.radii));
  }
  return failures.empty() ? kExitOk : kExitDomain;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ideal circle pattern solver"};
  app.require_subcommand(1);

  std::string input;
  std::string output;
  std::string method = "auto";
  bool verify = false;
  std::string mode = "jacobi";
  double tol = 1e-10;
  int max_iter = 100000;
  std::string trace_path;
  std::string init_text = "subpattern";
  std::string pattern_override;
  std::string svg_path;
  int gen_n = 3;
  double gen_theta = 1.5707963267948966;

  auto* cmd_validate = app.add_subcommand("validate", "check a pattern document");
  cmd_validate->add_option("input", input, "pattern file")->required();

  auto* cmd_feasible = app.add_subcommand("feasible", "test target admissibility");
  cmd_feasible->add_option("input", input, "pattern file with targets")->required();
  cmd_feasible->add_option("--method", method, "auto|bruteforce|mincut")
      ->check(CLI::IsMember({"auto", "bruteforce", "mincut"}));
  cmd_feasible->add_flag("--verify", verify, "cross-check both methods");

  auto* cmd_solve = app.add_subcommand("solve", "compute the circle pattern");
  cmd_solve->add_option("input", input, "pattern file with targets")->required();
  cmd_solve->add_option("--mode", mode, "jacobi|gauss-seidel")
      ->check(CLI::IsMember({"jacobi", "gauss-seidel"}));
  cmd_solve->add_option("--tol", tol, "sup-norm tolerance on totals");
  cmd_solve->add_option("--max-iter", max_iter, "outer iteration budget");
  cmd_solve->add_option("--trace", trace_path, "write per-iteration CSV");
  cmd_solve->add_option("--init", init_text, "subpattern|uniform:K|file:PATH");
  cmd_solve->add_option("-o,--output", output, "solution file (stdout if omitted)");

  auto* cmd_report = app.add_subcommand("report", "conservation report for a solution");
  cmd_report->add_option("solution", input, "solution file")->required();
  cmd_report->add_option("--pattern", pattern_override, "pattern file override");
  cmd_report->add_option("--svg", svg_path, "write a schematic SVG");

  auto* cmd_generate = app.add_subcommand("generate", "emit canonical fixtures");
  auto* cmd_torus = cmd_generate->add_subcommand("torus", "n-by-n torus grid");
  cmd_torus->add_option("--n", gen_n, "grid size (>= 3)")->required();
  cmd_torus->add_option("--theta", gen_theta, "uniform edge weight in (0, pi/2]");
  cmd_torus->add_option("-o,--output", output, "pattern file (stdout if omitted)");
  cmd_generate->require_subcommand(1);

  const auto started = std::chrono::steady_clock::now();
  int status = kExitOk;
  std::string command = "none";
  json resolved_config = json::object();

  try {
    app.parse(argc, argv);
    const int threads = env_threads();
    resolved_config["threads"] = threads;
    if (cmd_validate->parsed()) {
      command = "validate";
      status = run_validate(input);
    } else if (cmd_feasible->parsed()) {
      command = "feasible";
      resolved_config["method"] = method;
      resolved_config["verify"] = verify;
      status = run_feasible(input, method, verify, threads);
    } else if (cmd_solve->parsed()) {
      command = "solve";
      resolved_config["mode"] = mode;
      resolved_config["tol"] = tol;
      resolved_config["max_iter"] = max_iter;
      resolved_config["init"] = init_text;
      if (!trace_path.empty()) resolved_config["trace"] = trace_path;
      if (!output.empty()) resolved_config["output"] = output;
      status = run_solve(input, mode, tol, max_iter, trace_path, init_text, output,
                         threads);
    } else if (cmd_report->parsed()) {
      command = "report";
      if (!pattern_override.empty()) resolved_config["pattern"] = pattern_override;
      if (!svg_path.empty()) resolved_config["svg"] = svg_path;
      status = run_report(input, pattern_override, svg_path);
    } else if (cmd_generate->parsed()) {
      command = "generate";
      resolved_config["n"] = gen_n;
      resolved_config["theta"] = gen_theta;
      status = run_generate(gen_n, gen_theta, output);
    }
  } catch (const CLI::ParseError& err) {
    const int cli_status = app.exit(err);
    status = cli_status == 0 ? kExitOk : kExitInput;
  } catch (const cps::parse_error& err) {
    std::cerr << "error: " << err.what() << "\n";
    status = kExitInput;
  } catch (const std::invalid_argument& err) {
    std::cerr << "error: " << err.what() << "\n";
    status = kExitInput;
  } catch (const std::domain_error& err) {
    std::cerr << "error: " << err.what() << "\n";
    status = kExitInput;
  } catch (const std::exception& err) {
    std::cerr << "internal error: " << err.what() << "\n";
    status = kExitInternal;
  }

  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  json manifest{{"command", command},
                {"inputs", json::array()},
                {"config", resolved_config},
                {"version", cps::kVersion},
                {"wall_time_s", wall},
                {"status", status}};
  if (!input.empty()) manifest["inputs"].push_back(input);
  std::cerr << manifest.dump() << "\n";
  return status;
}
