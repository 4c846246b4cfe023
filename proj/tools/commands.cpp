// Copyright 2026 The SurfCover Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "commands.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "surfcover/error.hpp"
#include "surfcover/io_json.hpp"
#include "surfcover/metrics.hpp"
#include "surfcover/tour.hpp"

namespace surfcover::cli {

namespace fs = std::filesystem;

namespace {

std::string join(const std::string& stage, const Violations& v) {
  std::ostringstream out;
  out << stage << ": " << v.size() << " invariant violation(s)";
  for (const auto& s : v) out << "\n  " << s;
  return out.str();
}

void enforce(const std::string& stage, const Violations& v) {
  if (!v.empty()) throw InvariantFailure(stage, v);
}

void append(Violations& into, const Violations& more) {
  into.insert(into.end(), more.begin(), more.end());
}

fs::path prepare_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + dir.string() + ": " + ec.message());
  return dir;
}

std::ofstream open_text(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << std::setprecision(17);
  return out;
}

std::optional<std::size_t> parse_count(const std::string& value, const char* what) {
  if (value == "auto") return std::nullopt;
  std::size_t pos = 0;
  unsigned long long n = 0;
  try {
    n = std::stoull(value, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != value.size() || n == 0) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(what) + " must be a positive integer or 'auto', got '" + value + "'");
  }
  return static_cast<std::size_t>(n);
}

Tessellation load_segmentation(const fs::path& path, const TriangleMesh& mesh) {
  return segmentation_from_json(read_json(path), mesh.faceCount());
}

std::vector<std::array<std::uint8_t, 3>> cluster_colors(const Tessellation& t) {
  std::vector<std::array<std::uint8_t, 3>> colors;
  colors.reserve(t.faceToCluster.size());
  for (auto c : t.faceToCluster) colors.push_back(cluster_color(c));
  return colors;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

InvariantFailure::InvariantFailure(const std::string& stage, Violations violations)
    : std::runtime_error(join(stage, violations)), violations_(std::move(violations)) {}

TriangleMesh MeshInput::load() const {
  if (format.empty()) return load_mesh(path);
  const auto f = parse_mesh_format(format);
  if (!f) throw Error(ErrorCode::kInvalidArgument, "unknown mesh format '" + format + "'");
  return load_mesh(path, *f);
}

void cmd_segment(const SegmentConfig& config, bool check) {
  const auto mesh = config.mesh.load();
  auto params = EnergyParams::recipe(mesh, config.rough);
  if (config.norm == "l1") {
    params.norm = Norm::kL1;
  } else if (config.norm == "l2") {
    params.norm = Norm::kL2;
  } else {
    throw Error(ErrorCode::kInvalidArgument, "norm must be l1 or l2");
  }
  if (config.normalCost != "on" && config.normalCost != "off") {
    throw Error(ErrorCode::kInvalidArgument, "normal-cost must be on or off");
  }
  params.normalCostEnabled = config.normalCost == "on";
  if (config.alpha1) params.alpha1 = *config.alpha1;
  if (config.alpha2) params.alpha2 = *config.alpha2;
  if (config.alpha3) params.alpha3 = *config.alpha3;
  if (config.alpha4) params.alpha4 = *config.alpha4;
  params.clusters = parse_count(config.clusters, "clusters");
  params.validate();

  LloydOptions options;
  options.clusters = params.clusters ? *params.clusters
                                     : expected_cluster_count(mesh, config.nozzleRadius);
  options.seed = config.seed;
  options.maxIterations = config.maxIterations;
  options.convergenceTol = config.tolerance;
  options.repairConnectivity = config.repair;
  const auto t = lloyd_run(mesh, params, options);

  if (check) {
    Violations v = check_partition(mesh, t);
    append(v, check_generators(mesh, t));
    if (config.repair) append(v, check_connectivity(mesh, t));
    enforce("segment", v);
  }

  const auto dir = prepare_dir(config.out);
  write_json(dir / "seg.json", segmentation_to_json(t, params, mesh.faceCount()));
  write_colored_ply(dir / "seg_colored.ply", mesh, cluster_colors(t));
  auto csv = open_text(dir / "energy_trace.csv");
  csv << "iteration,energy\n";
  for (std::size_t i = 0; i < t.energyTrace.size(); ++i) {
    csv << i + 1 << ',' << t.energyTrace[i] << '\n';
  }
  std::cout << "segment: " << t.clusters.size() << " clusters, " << t.iterations
            << " iterations, energy " << t.energy << (t.converged ? "" : " (not converged)")
            << '\n';
}

void cmd_path(const PathConfig& config, bool check) {
  const auto mesh = config.mesh.load();
  const auto t = load_segmentation(config.seg, mesh);
  PathArtifact artifact;
  artifact.geodesic.steinerPoints = config.steinerPoints;
  artifact.seed = config.seed.value_or(t.seed);
  artifact.graph = complete_generator_graph(
      adjacent_generator_distances(mesh, t, artifact.geodesic));
  artifact.path = three_opt_tour(artifact.graph, artifact.seed);

  if (check) {
    Violations v = check_generator_graph(artifact.graph, true);
    append(v, check_permutation(artifact.path.order, artifact.graph.nodes.size()));
    enforce("path", v);
  }

  const auto dir = prepare_dir(config.out);
  write_json(dir / "path.json", path_to_json(artifact));
  write_polyline_obj(dir / "path.obj", artifact.path.polyline);
  for (const auto& w : artifact.graph.warnings) std::cerr << "warning: " << w << '\n';
  std::cout << "path: " << artifact.path.order.size() << " waypoints, cost "
            << artifact.path.totalCost << '\n';
}

void cmd_viewpoints(const ViewpointsConfig& config, bool check) {
  const auto mesh = config.mesh.load();
  const auto t = load_segmentation(config.seg, mesh);
  const auto path = path_from_json(read_json(config.path));
  if (path.graph.nodes.size() != t.clusters.size()) {
    throw Error(ErrorCode::kSchemaMismatch, "path and segmentation disagree on cluster count");
  }
  std::vector<TriangleMesh> environment;
  for (const auto& p : config.environment) environment.push_back(load_mesh(p));
  std::vector<const TriangleMesh*> env;
  for (const auto& m : environment) env.push_back(&m);

  CandidateRayParams rp;
  rp.standoff = config.standoff;
  rp.nozzleRadius = config.nozzleRadius;
  rp.capAngle = config.capAngle;
  rp.count = parse_count(config.candidates, "candidates");
  ViewpointArtifact artifact;
  artifact.candidateSet = candidate_ray_set(rp);
  artifact.thetaR = config.thetaR;
  artifact.rollCount = config.rolls;

  const DefaultValidityOracle oracle(&mesh, env, config.standoff);
  const auto rays = viewpoint_rays(t, path.path.order, config.standoff);
  artifact.plan = plan_valid_configs(rays, artifact.candidateSet, mesh, oracle, config.thetaR,
                                     config.rolls);
  std::vector<std::vector<PoseCandidate>> layers;
  for (const auto& wp : artifact.plan.waypoints) {
    if (!wp.candidates.empty()) layers.push_back(wp.candidates);
  }
  if (!layers.empty()) {
    artifact.tour = optimal_config_tour(layers, {config.angleWeight, config.rollWeight});
  }

  if (check) {
    Violations v = check_candidate_set(artifact.candidateSet);
    append(v, check_viewpoint_plan(artifact.plan, mesh, artifact.candidateSet, oracle,
                                   config.thetaR, config.rolls));
    enforce("viewpoints", v);
  }

  const auto dir = prepare_dir(config.out);
  write_json(dir / "viewpoints.json", viewpoints_to_json(artifact));
  std::cout << "viewpoints: " << artifact.plan.accepted << " accepted, "
            << artifact.plan.corrected << " corrected, " << artifact.plan.unrecoverable
            << " unrecoverable\n";
}

void cmd_metrics(const MetricsConfig& config, bool check) {
  const auto mesh = config.mesh.load();
  const auto t = load_segmentation(config.seg, mesh);
  MetricsOptions options;
  options.nozzleRadius = config.nozzleRadius;
  options.theta0 = config.theta0;
  options.threshold = config.threshold;
  options.geodesic.steinerPoints = config.steinerPoints;
  const auto report = compute_metrics(mesh, t, options);
  if (check) enforce("metrics", check_metrics(report));

  const auto dir = prepare_dir(config.out);
  write_json(dir / "metrics.json", metrics_to_json(report, t.seed));
  auto csv = open_text(dir / "metrics.csv");
  csv << metrics_csv_header() << '\n' << metrics_csv_row(report, t.seed) << '\n';
  std::cout << std::fixed << std::setprecision(2) << "metrics: coverage "
            << report.coveragePct << "%, overlap " << report.overlapPct << "%, RSD "
            << report.rsdPct << "%, unreachable " << report.unreachPct << "%\n";
}

void cmd_bench(const BenchConfig& config, bool check) {
  const auto mesh = config.mesh.load();
  if (mesh.faceCount() > config.faceCap && !config.force) {
    throw UsageFailure("mesh has " + std::to_string(mesh.faceCount()) +
                       " faces, above the full-mesh oracle cap of " +
                       std::to_string(config.faceCap) + "; pass --force to run anyway");
  }
  Tessellation t;
  if (config.seg) {
    t = load_segmentation(*config.seg, mesh);
  } else {
    LloydOptions options;
    options.clusters = config.clusters;
    options.seed = config.seed;
    t = lloyd_run(mesh, EnergyParams::recipe(mesh), options);
  }
  GeodesicOptions geodesic;
  geodesic.steinerPoints = config.steinerPoints;
  const std::size_t m = t.clusters.size();
  const std::size_t pairs = m * (m - 1) / 2;

  auto start = std::chrono::steady_clock::now();
  const auto graph = complete_generator_graph(adjacent_generator_distances(mesh, t, geodesic));
  const double decomposition = seconds_since(start);
  start = std::chrono::steady_clock::now();
  const auto full = full_mesh_all_pairs(mesh, t, geodesic);
  const double oracle = seconds_since(start);

  if (check) {
    Violations v = check_generator_graph(graph, true);
    for (std::uint32_t i = 0; i < m; ++i) {
      for (std::uint32_t j = i + 1; j < m; ++j) {
        if (graph.cost(i, j) < full[i][j] * (1.0 - 1e-12)) {
          v.push_back("pair (" + std::to_string(i) + ", " + std::to_string(j) +
                      ") undercuts the full-mesh geodesic");
        }
      }
    }
    enforce("bench", v);
  }

  if (config.out.has_parent_path()) prepare_dir(config.out.parent_path());
  auto csv = open_text(config.out);
  csv << "method,faces,clusters,pairs,seconds\n";
  csv << "decomposition," << mesh.faceCount() << ',' << m << ',' << pairs << ','
      << decomposition << '\n';
  csv << "full_mesh," << mesh.faceCount() << ',' << m << ',' << pairs << ',' << oracle << '\n';
  std::cout << "bench: decomposition " << decomposition << " s, full mesh " << oracle
            << " s\n";
}

void cmd_export(const ExportConfig& config) {
  const auto mesh = config.mesh.load();
  const auto dir = prepare_dir(config.out);
  if (!config.meshFormat.empty()) {
    const auto f = parse_mesh_format(config.meshFormat);
    if (!f) throw Error(ErrorCode::kInvalidArgument, "unknown mesh format");
    switch (*f) {
      case MeshFormat::kObj: write_obj(dir / "mesh.obj", mesh); break;
      case MeshFormat::kStl: write_ascii_stl(dir / "mesh.stl", mesh); break;
      case MeshFormat::kPly: {
        const std::vector<std::array<std::uint8_t, 3>> grey(mesh.faceCount(), {200, 200, 200});
        write_colored_ply(dir / "mesh.ply", mesh, grey);
        break;
      }
    }
  }
  if (config.seg) {
    const auto t = load_segmentation(*config.seg, mesh);
    write_colored_ply(dir / "seg_colored.ply", mesh, cluster_colors(t));
  }
  if (config.path) {
    const auto p = path_from_json(read_json(*config.path));
    write_polyline_obj(dir / "path.obj", p.path.polyline);
  }
  if (config.viewpoints) {
    const auto doc = read_json(*config.viewpoints);
    expect_format(doc, "surfcover.viewpoints");
    const double standoff = doc.at("params").at("standoff").get<double>();
    auto obj = open_text(dir / "viewpoints.obj");
    std::size_t n = 0;
    for (const auto& s : doc.at("selection")) {
      const auto o = s.at("rayOrigin").get<std::array<double, 3>>();
      const auto d = s.at("rayDirection").get<std::array<double, 3>>();
      obj << "v " << o[0] << ' ' << o[1] << ' ' << o[2] << '\n';
      obj << "v " << o[0] + standoff * d[0] << ' ' << o[1] + standoff * d[1] << ' '
          << o[2] + standoff * d[2] << '\n';
      obj << "l " << 2 * n + 1 << ' ' << 2 * n + 2 << '\n';
      ++n;
    }
  }
}

}  // namespace surfcover::cli
