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

#include "cps/io.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <sstream>

namespace cps {

namespace {

using nlohmann::json;

void require_fields(const json& object, const char* where,
                    std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : object.items()) {
    bool known = false;
    for (const char* name : allowed) {
      if (key == name) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw parse_error(std::string(where) + ": unknown field '" + key + "'");
    }
  }
}

std::string require_string(const json& object, const char* where, const char* field) {
  if (!object.contains(field) || !object[field].is_string()) {
    throw parse_error(std::string(where) + ": missing or non-string '" + field + "'");
  }
  return object[field].get<std::string>();
}

double require_number(const json& object, const char* where, const char* field) {
  if (!object.contains(field) || !object[field].is_number()) {
    throw parse_error(std::string(where) + ": missing or non-numeric '" + field + "'");
  }
  return object[field].get<double>();
}

}  // namespace

PatternData parse_pattern_data(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& err) {
    throw parse_error(std::string("pattern document: ") + err.what());
  }
  if (!doc.is_object()) throw parse_error("pattern document: top level must be an object");
  require_fields(doc, "pattern document", {"vertices", "edges", "faces", "targets"});

  PatternData data;

  if (doc.contains("vertices")) {
    if (!doc["vertices"].is_array()) throw parse_error("vertices: must be an array");
    data.vertices.emplace();
    for (const auto& v : doc["vertices"]) {
      if (!v.is_string()) throw parse_error("vertices: entries must be strings");
      data.vertices->push_back(v.get<std::string>());
    }
  }

  if (!doc.contains("edges") || !doc["edges"].is_array()) {
    throw parse_error("pattern document: missing 'edges' array");
  }
  int index = 0;
  for (const auto& e : doc["edges"]) {
    const std::string where = "edges[" + std::to_string(index++) + "]";
    if (!e.is_object()) throw parse_error(where + ": must be an object");
    require_fields(e, where.c_str(), {"id", "v", "theta", "faces"});
    PatternData::Edge edge;
    edge.id = require_string(e, where.c_str(), "id");
    edge.theta = require_number(e, where.c_str(), "theta");
    if (!e.contains("faces") || !e["faces"].is_array() || e["faces"].size() != 2 ||
        !e["faces"][0].is_string() || !e["faces"][1].is_string()) {
      throw parse_error(where + ": 'faces' must be a pair of face ids");
    }
    edge.faces = {e["faces"][0].get<std::string>(), e["faces"][1].get<std::string>()};
    if (e.contains("v")) {
      if (!e["v"].is_array() || e["v"].size() != 2 || !e["v"][0].is_string() ||
          !e["v"][1].is_string()) {
        throw parse_error(where + ": 'v' must be a pair of vertex ids");
      }
      edge.vertices = {e["v"][0].get<std::string>(), e["v"][1].get<std::string>()};
    }
    data.edges.push_back(std::move(edge));
  }

  if (!doc.contains("faces") || !doc["faces"].is_array()) {
    throw parse_error("pattern document: missing 'faces' array");
  }
  index = 0;
  for (const auto& f : doc["faces"]) {
    const std::string where = "faces[" + std::to_string(index++) + "]";
    if (!f.is_object()) throw parse_error(where + ": must be an object");
    require_fields(f, where.c_str(), {"id", "edges"});
    PatternData::Face face;
    face.id = require_string(f, where.c_str(), "id");
    if (!f.contains("edges") || !f["edges"].is_array()) {
      throw parse_error(where + ": 'edges' must be an array");
    }
    for (const auto& eid : f["edges"]) {
      if (!eid.is_string()) throw parse_error(where + ": edge ids must be strings");
      face.edges.push_back(eid.get<std::string>());
    }
    data.faces.push_back(std::move(face));
  }

  if (doc.contains("targets")) {
    if (!doc["targets"].is_object()) throw parse_error("targets: must be an object");
    data.targets.emplace();
    for (const auto& [fid, value] : doc["targets"].items()) {
      if (!value.is_number()) {
        throw parse_error("targets: value for '" + fid + "' must be a number");
      }
      (*data.targets)[fid] = value.get<double>();
    }
  }

  return data;
}

PatternData read_pattern_data(const std::filesystem::path& path) {
  return parse_pattern_data(read_file(path));
}

PatternGraph parse_pattern(const std::string& text) {
  return PatternGraph::from_data(parse_pattern_data(text));
}

std::string serialize_pattern(const PatternData& data) {
  json doc = json::object();
  if (data.vertices) {
    std::vector<std::string> vertices = *data.vertices;
    std::sort(vertices.begin(), vertices.end());
    doc["vertices"] = vertices;
  }

  std::vector<PatternData::Edge> edges = data.edges;
  std::sort(edges.begin(), edges.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });
  doc["edges"] = json::array();
  for (const auto& edge : edges) {
    json e = {{"id", edge.id}, {"theta", edge.theta}, {"faces", edge.faces}};
    if (edge.vertices) e["v"] = *edge.vertices;
    doc["edges"].push_back(std::move(e));
  }

  std::vector<PatternData::Face> faces = data.faces;
  std::sort(faces.begin(), faces.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });
  doc["faces"] = json::array();
  for (const auto& face : faces) {
    doc["faces"].push_back({{"id", face.id}, {"edges", face.edges}});
  }

  if (data.targets) doc["targets"] = *data.targets;
  return format_json(doc);
}

std::optional<TargetVector> targets_from_data(const PatternGraph& g,
                                              const PatternData& data) {
  if (!data.targets) return std::nullopt;
  return TargetVector::from_map(g, *data.targets);
}

nlohmann::json validation_report_json(const ValidationReport& report) {
  json diagnostics = json::array();
  for (const auto& diag : report.diagnostics) {
    diagnostics.push_back({{"severity", diag.severity == Severity::error ? "error" : "warning"},
                           {"location", diag.location},
                           {"message", diag.message}});
  }
  return json{{"ok", report.ok}, {"diagnostics", std::move(diagnostics)}};
}

nlohmann::json feasibility_result_json(const PatternGraph& g,
                                       const FeasibilityResult& result,
                                       const std::string& method) {
  json witness = json::array();
  for (int f : result.witness) witness.push_back(g.face(f).id);
  return json{{"feasible", result.feasible},
              {"boundary", result.boundary},
              {"min_slack", result.min_slack},
              {"witness", std::move(witness)},
              {"method", method}};
}

nlohmann::json geometry_report_json(const PatternGraph& g, const GeometryReport& report) {
  json faces = json::object();
  for (int f = 0; f < g.face_count(); ++f) {
    const auto& entry = report.faces[f];
    faces[g.face(f).id] = {{"radius", entry.radius},
                           {"cone_angle", entry.cone_angle},
                           {"disk_area", entry.disk_area},
                           {"total_curvature", entry.total_curvature}};
  }
  json edges = json::object();
  for (int e = 0; e < g.edge_count(); ++e) {
    const auto& entry = report.edges[e];
    edges[g.edge(e).id] = {{"central_angles", entry.central_angles},
                           {"arc_curvatures", entry.arc_curvatures},
                           {"bigon_area", entry.bigon_area}};
  }
  json doc{{"faces", std::move(faces)},
           {"edges", std::move(edges)},
           {"surface_area", report.surface_area},
           {"area_residual", report.area_residual},
           {"bigon_identity_residual", report.bigon_identity_residual},
           {"warnings", report.warnings}};
  if (report.gauss_bonnet_residual) {
    doc["gauss_bonnet_residual"] = *report.gauss_bonnet_residual;
  }
  return doc;
}

std::string solve_status_name(SolveStatus status) {
  switch (status) {
    case SolveStatus::converged:
      return "converged";
    case SolveStatus::max_iterations:
      return "max-iterations";
    default:
      return "error";
  }
}

nlohmann::json solution_json(const SolutionFile& solution) {
  return json{{"format", "cps-solution"},
              {"pattern", {{"path", solution.pattern_path}, {"fnv1a", solution.pattern_hash}}},
              {"status", solution.status},
              {"mode", solution.mode},
              {"tol_total", solution.tol_total},
              {"tol_inner", solution.tol_inner},
              {"iterations", solution.iterations},
              {"final_residual", solution.final_residual},
              {"contraction_estimate", solution.contraction_estimate},
              {"monotone_up", solution.monotone_up},
              {"monotone_down", solution.monotone_down},
              {"curvatures", solution.curvatures},
              {"radii", solution.radii},
              {"warnings", solution.warnings},
              {"gauss_bonnet", solution.gauss_bonnet}};
}

SolutionFile parse_solution(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& err) {
    throw parse_error(std::string("solution document: ") + err.what());
  }
  if (!doc.is_object() || doc.value("format", "") != "cps-solution") {
    throw parse_error("solution document: missing format tag 'cps-solution'");
  }
  try {
    SolutionFile solution;
    solution.pattern_path = doc.at("pattern").at("path").get<std::string>();
    solution.pattern_hash = doc.at("pattern").at("fnv1a").get<std::string>();
    solution.status = doc.at("status").get<std::string>();
    solution.mode = doc.at("mode").get<std::string>();
    solution.tol_total = doc.at("tol_total").get<double>();
    solution.tol_inner = doc.at("tol_inner").get<double>();
    solution.iterations = doc.at("iterations").get<int>();
    solution.final_residual = doc.at("final_residual").get<double>();
    solution.contraction_estimate = doc.at("contraction_estimate").get<double>();
    solution.monotone_up = doc.at("monotone_up").get<bool>();
    solution.monotone_down = doc.at("monotone_down").get<bool>();
    solution.curvatures = doc.at("curvatures").get<std::map<std::string, double>>();
    solution.radii = doc.at("radii").get<std::map<std::string, double>>();
    solution.warnings = doc.value("warnings", std::vector<std::string>{});
    solution.gauss_bonnet = doc.value("gauss_bonnet", json::object());
    return solution;
  } catch (const json::exception& err) {
    throw parse_error(std::string("solution document: ") + err.what());
  }
}

SolutionFile read_solution(const std::filesystem::path& path) {
  return parse_solution(read_file(path));
}

std::string write_trace_csv(const SolveTrace& trace) {
  std::ostringstream out;
  out << "iteration,residual,monotone_up,monotone_down,max_target_overshoot,"
         "contraction_estimate\n";
  out.precision(17);
  for (size_t m = 0; m < trace.iterations.size(); ++m) {
    const auto& rec = trace.iterations[m];
    out << (m + 1) << ',' << rec.residual << ',' << (rec.monotone_up ? 1 : 0) << ','
        << (rec.monotone_down ? 1 : 0) << ',' << rec.max_target_overshoot << ','
        << rec.contraction_estimate << '\n';
  }
  return out.str();
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ull;
  }
  std::ostringstream out;
  out << std::hex;
  out.width(16);
  out.fill('0');
  out << hash;
  return out.str();
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw parse_error("cannot read '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void atomic_write_file(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out << content;
  }
  std::filesystem::rename(tmp, path);
}

std::string format_json(const nlohmann::json& value) { return value.dump(2) + "\n"; }

}  // namespace cps
