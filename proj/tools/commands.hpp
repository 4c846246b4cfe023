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

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "surfcover/ccvt.hpp"
#include "surfcover/geodesic.hpp"
#include "surfcover/invariants.hpp"
#include "surfcover/mesh_io.hpp"
#include "surfcover/viewpoint.hpp"

namespace surfcover::cli {

/// Raised when --check finds a violated invariant; maps to exit code 3.
class InvariantFailure : public std::runtime_error {
 public:
  InvariantFailure(const std::string& stage, Violations violations);
  const Violations& violations() const { return violations_; }

 private:
  Violations violations_;
};

/// Raised for a request the command refuses; maps to exit code 1.
class UsageFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MeshInput {
  std::filesystem::path path;
  std::string format;  // empty: from the extension

  TriangleMesh load() const;
};

struct SegmentConfig {
  MeshInput mesh;
  std::string clusters = "auto";  // count or "auto"
  double nozzleRadius = 0.005 * 1.4142135623730951;
  std::uint64_t seed = 0;
  std::string norm = "l1";
  std::string normalCost = "on";
  std::optional<double> alpha1;
  std::optional<double> alpha2;
  std::optional<double> alpha3;
  std::optional<double> alpha4;
  bool rough = false;
  std::size_t maxIterations = 50;
  double tolerance = 1e-4;
  bool repair = true;
  std::filesystem::path out = ".";
};

struct PathConfig {
  MeshInput mesh;
  std::filesystem::path seg;
  unsigned steinerPoints = 3;
  std::optional<std::uint64_t> seed;  // default: segmentation seed
  std::filesystem::path out = ".";
};

struct ViewpointsConfig {
  MeshInput mesh;
  std::filesystem::path seg;
  std::filesystem::path path;
  std::vector<std::filesystem::path> environment;
  double standoff = 0.05;
  double nozzleRadius = 0.005 * 1.4142135623730951;
  double capAngle = kPi / 3.0;
  std::string candidates = "auto";
  double thetaR = kPi / 3.0;
  std::size_t rolls = 8;
  double angleWeight = 0.05;
  double rollWeight = 0.01;
  std::filesystem::path out = ".";
};

struct MetricsConfig {
  MeshInput mesh;
  std::filesystem::path seg;
  double nozzleRadius = 0.005 * 1.4142135623730951;
  double theta0 = kPi / 3.0;
  std::optional<double> threshold;
  unsigned steinerPoints = 3;
  std::filesystem::path out = ".";
};

struct BenchConfig {
  MeshInput mesh;
  std::optional<std::filesystem::path> seg;
  std::size_t clusters = 50;
  std::uint64_t seed = 0;
  unsigned steinerPoints = 3;
  std::size_t faceCap = 20000;
  bool force = false;
  std::filesystem::path out = "bench.csv";
};

struct ExportConfig {
  MeshInput mesh;
  std::optional<std::filesystem::path> seg;
  std::optional<std::filesystem::path> path;
  std::optional<std::filesystem::path> viewpoints;
  std::string meshFormat;  // obj | stl | ply, empty: no mesh copy
  std::filesystem::path out = ".";
};

void cmd_segment(const SegmentConfig& config, bool check);
void cmd_path(const PathConfig& config, bool check);
void cmd_viewpoints(const ViewpointsConfig& config, bool check);
void cmd_metrics(const MetricsConfig& config, bool check);
void cmd_bench(const BenchConfig& config, bool check);
void cmd_export(const ExportConfig& config);

}  // namespace surfcover::cli
