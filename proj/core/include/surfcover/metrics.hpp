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
#include <optional>
#include <string>
#include <vector>

#include "surfcover/ccvt.hpp"
#include "surfcover/geodesic.hpp"
#include "surfcover/mesh.hpp"

namespace surfcover {

struct CoverageResult {
  double coveragePct = 0.0;
  double overlapPct = 0.0;
  /// Number of generators within the threshold, per face.
  std::vector<std::uint32_t> hits;
};

/// A face counts once for every generator of its own or an adjacent cluster
/// within `threshold` geodesic distance of its centroid, measured on that
/// generator's cluster submesh. Covered means at least one hit, overlapping
/// at least two. Percentages are area-weighted.
CoverageResult coverage_and_overlap(const TriangleMesh& mesh,
                                    const Tessellation& tessellation,
                                    const GeodesicOptions& options, double threshold);

/// 100 * population SD / mean of cluster area over sigma_e.
double rsd(const Tessellation& tessellation, double sigmaE);

struct UnreachableResult {
  std::vector<std::uint32_t> faces;
  double countPct = 0.0;
  double areaPct = 0.0;
};

/// Faces whose normal is more than theta0 away from their cluster's proxy
/// normal.
UnreachableResult unreachable_faces(const TriangleMesh& mesh,
                                    const Tessellation& tessellation, double theta0);

/// Population SD of cluster areas.
double area_sd(const Tessellation& tessellation);

struct MetricsOptions {
  double nozzleRadius = 0.005 * 1.4142135623730951;
  double theta0 = kPi / 3.0;
  std::optional<double> threshold;  // defaults to nozzleRadius
  GeodesicOptions geodesic;
};

struct MetricsReport {
  double coveragePct = 0.0;
  double overlapPct = 0.0;
  double rsdPct = 0.0;
  double unreachPct = 0.0;
  double unreachAreaPct = 0.0;
  double areaSD = 0.0;
  double sigmaE = 0.0;
  std::vector<double> clusterAreas;
  std::vector<std::uint32_t> unreachableFaces;
  double nozzleRadius = 0.0;
  double theta0 = 0.0;
  double coverageThreshold = 0.0;
  double runtimeSeconds = 0.0;
};

MetricsReport compute_metrics(const TriangleMesh& mesh, const Tessellation& tessellation,
                              const MetricsOptions& options);

std::string metrics_csv_header();
std::string metrics_csv_row(const MetricsReport& report, std::uint64_t seed);

}  // namespace surfcover
