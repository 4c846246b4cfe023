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

#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "commands.hpp"
#include "surfcover/error.hpp"
#include "surfcover/parallel.hpp"

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kInput = 2, kInvariant = 3 };

void add_mesh(CLI::App* app, surfcover::cli::MeshInput& mesh) {
  app->add_option("--mesh", mesh.path, "Input mesh (OBJ, STL or PLY)")
      ->required();
  app->add_option("--format", mesh.format, "Mesh format override: obj | stl | ply");
}

}  // namespace

int main(int argc, char** argv) {
  namespace cli = surfcover::cli;
  CLI::App app{"Coverage path and viewpoint planning on triangle meshes"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "INI file mirroring the flags; [section] per subcommand");

  unsigned threads = 0;
  bool check = false;
  app.add_option("--threads", threads, "Worker threads (default: all cores)")
      ->envname("SURFCOVER_THREADS")
      ->check(CLI::NonNegativeNumber);
  app.add_flag("--check", check, "Verify invariants on every output");

  cli::SegmentConfig seg;
  auto* segment = app.add_subcommand("segment", "Cluster the mesh into regions");
  add_mesh(segment, seg.mesh);
  segment->add_option("--clusters", seg.clusters, "Cluster count or 'auto'")
      ->capture_default_str();
  segment->add_option("--rc", seg.nozzleRadius, "Nozzle radius r_c for auto count [m]")
      ->capture_default_str();
  segment->add_option("--seed", seg.seed, "Random seed")->capture_default_str();
  segment->add_option("--norm", seg.norm, "Distance norm")
      ->check(CLI::IsMember({"l1", "l2"}))
      ->capture_default_str();
  segment->add_option("--normal-cost", seg.normalCost, "Normal term in the energy")
      ->check(CLI::IsMember({"on", "off"}))
      ->capture_default_str();
  segment->add_option("--alpha1", seg.alpha1, "Distance scale (default: bbox diagonal / 6)");
  segment->add_option("--alpha2", seg.alpha2, "Distance/normal balance");
  segment->add_option("--alpha3", seg.alpha3, "Normal dot-product threshold");
  segment->add_option("--alpha4", seg.alpha4, "Penalty beyond the threshold");
  segment->add_flag("--rough", seg.rough, "Rough-surface recipe (alpha3 = 1/3)");
  segment->add_option("--max-iter", seg.maxIterations, "Lloyd iteration cap")
      ->capture_default_str();
  segment->add_option("--tol", seg.tolerance, "Relative energy change for convergence")
      ->capture_default_str();
  segment->add_flag("!--no-repair", seg.repair, "Skip connectivity repair");
  segment->add_option("--out", seg.out, "Output directory")->capture_default_str();

  cli::PathConfig path;
  auto* pathCmd = app.add_subcommand("path", "Coverage tour over cluster generators");
  add_mesh(pathCmd, path.mesh);
  pathCmd->add_option("--seg", path.seg, "Segmentation JSON")->required();
  pathCmd->add_option("--steiner", path.steinerPoints, "Steiner points per edge")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  pathCmd->add_option("--seed", path.seed, "Tour seed (default: segmentation seed)");
  pathCmd->add_option("--out", path.out, "Output directory")->capture_default_str();

  cli::ViewpointsConfig view;
  auto* viewCmd = app.add_subcommand("viewpoints", "Approach rays with occlusion repair");
  add_mesh(viewCmd, view.mesh);
  viewCmd->add_option("--seg", view.seg, "Segmentation JSON")->required();
  viewCmd->add_option("--path", view.path, "Path JSON")->required();
  viewCmd->add_option("--env", view.environment, "Environment meshes");
  viewCmd->add_option("--standoff", view.standoff, "Standoff distance r_s [m]")
      ->capture_default_str();
  viewCmd->add_option("--rc", view.nozzleRadius, "Nozzle radius r_c [m]")
      ->capture_default_str();
  viewCmd->add_option("--cap-angle", view.capAngle, "Candidate cap half-angle [rad]")
      ->capture_default_str();
  viewCmd->add_option("--candidates", view.candidates, "Candidate count or 'auto'")
      ->capture_default_str();
  viewCmd->add_option("--theta-r", view.thetaR, "Maximum elevation angle [rad]")
      ->capture_default_str();
  viewCmd->add_option("--rolls", view.rolls, "Roll angles per ray")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  viewCmd->add_option("--angle-weight", view.angleWeight, "Metric weight on ray angle [m/rad]")
      ->capture_default_str();
  viewCmd->add_option("--roll-weight", view.rollWeight, "Metric weight on roll [m/rad]")
      ->capture_default_str();
  viewCmd->add_option("--out", view.out, "Output directory")->capture_default_str();

  cli::MetricsConfig met;
  auto* metCmd = app.add_subcommand("metrics", "Coverage, uniformity and reachability");
  add_mesh(metCmd, met.mesh);
  metCmd->add_option("--seg", met.seg, "Segmentation JSON")->required();
  metCmd->add_option("--rc", met.nozzleRadius, "Nozzle radius r_c [m]")->capture_default_str();
  metCmd->add_option("--theta0", met.theta0, "Unreachable-face angle [rad]")
      ->capture_default_str();
  metCmd->add_option("--threshold", met.threshold, "Coverage distance (default: r_c)");
  metCmd->add_option("--steiner", met.steinerPoints, "Steiner points per edge")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  metCmd->add_option("--out", met.out, "Output directory")->capture_default_str();

  cli::BenchConfig bench;
  auto* benchCmd = app.add_subcommand("bench", "Time decomposed vs full-mesh geodesics");
  add_mesh(benchCmd, bench.mesh);
  benchCmd->add_option("--seg", bench.seg, "Segmentation JSON (default: run segment)");
  benchCmd->add_option("--clusters", bench.clusters, "Cluster count")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  benchCmd->add_option("--seed", bench.seed, "Random seed")->capture_default_str();
  benchCmd->add_option("--steiner", bench.steinerPoints, "Steiner points per edge")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  benchCmd->add_option("--face-cap", bench.faceCap, "Largest mesh for the full-mesh oracle")
      ->capture_default_str();
  benchCmd->add_flag("--force", bench.force, "Run the oracle above the face cap");
  benchCmd->add_option("--out", bench.out, "Timing CSV")->capture_default_str();

  cli::ExportConfig exp;
  auto* expCmd = app.add_subcommand("export", "Visualization files from artifacts");
  add_mesh(expCmd, exp.mesh);
  expCmd->add_option("--seg", exp.seg, "Segmentation JSON");
  expCmd->add_option("--path", exp.path, "Path JSON");
  expCmd->add_option("--viewpoints", exp.viewpoints, "Viewpoints JSON");
  expCmd->add_option("--mesh-format", exp.meshFormat, "Also write the mesh as obj | stl | ply")
      ->check(CLI::IsMember({"obj", "stl", "ply"}));
  expCmd->add_option("--out", exp.out, "Output directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  surfcover::set_thread_count(threads);
  try {
    if (*segment) cli::cmd_segment(seg, check);
    if (*pathCmd) cli::cmd_path(path, check);
    if (*viewCmd) cli::cmd_viewpoints(view, check);
    if (*metCmd) cli::cmd_metrics(met, check);
    if (*benchCmd) cli::cmd_bench(bench, check);
    if (*expCmd) cli::cmd_export(exp);
  } catch (const cli::UsageFailure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const cli::InvariantFailure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvariant;
  } catch (const surfcover::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed JSON: " << e.what() << '\n';
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInvariant;
  }
  return kOk;
}
