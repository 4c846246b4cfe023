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

#include "surfcover/metrics.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "surfcover/parallel.hpp"

namespace surfcover {

namespace {

double population_sd(const std::vector<double>& v, double* meanOut = nullptr) {
  if (v.empty()) return 0.0;
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double var = 0.0;
  for (double x : v) var += (x - mean) * (x - mean);
  var /= static_cast<double>(v.size());
  if (meanOut) *meanOut = mean;
  return std::sqrt(var);
}

}  // namespace

CoverageResult coverage_and_overlap(const TriangleMesh& mesh,
                                    const Tessellation& tessellation,
                                    const GeodesicOptions& options, double threshold) {
  const std::size_t m = tessellation.clusters.size();
  const auto adjacency = cluster_adjacency(mesh, tessellation.faceToCluster, m);
  std::vector<std::vector<std::uint32_t>> reached(m);
  parallel_for(m, [&](std::size_t c) {
    const auto sub = cluster_submesh(tessellation, adjacency, static_cast<std::uint32_t>(c));
    const auto solver = make_geodesic_solver(mesh, sub.faces, options);
    const auto& cl = tessellation.clusters[c];
    const auto dist = solver->centroid_distances({cl.generatorFace, cl.generator}, threshold);
    const auto faces = solver->faces();
    for (std::size_t i = 0; i < faces.size(); ++i) {
      if (std::isfinite(dist[i]) && dist[i] <= threshold) reached[c].push_back(faces[i]);
    }
  });

  CoverageResult r;
  r.hits.assign(mesh.faceCount(), 0);
  for (const auto& list : reached) {
    for (auto f : list) ++r.hits[f];
  }
  double covered = 0.0, overlapping = 0.0;
  for (std::size_t f = 0; f < mesh.faceCount(); ++f) {
    if (r.hits[f] >= 1) covered += mesh.faceAreas()[f];
    if (r.hits[f] >= 2) overlapping += mesh.faceAreas()[f];
  }
  r.coveragePct = 100.0 * covered / mesh.totalArea();
  r.overlapPct = 100.0 * overlapping / mesh.totalArea();
  return r;
}

double rsd(const Tessellation& tessellation, double sigmaE) {
  std::vector<double> ratios;
  for (const auto& c : tessellation.clusters) ratios.push_back(c.area / sigmaE);
  double mean = 0.0;
  const double sd = population_sd(ratios, &mean);
  return mean > 0.0 ? 100.0 * sd / mean : 0.0;
}

UnreachableResult unreachable_faces(const TriangleMesh& mesh,
                                    const Tessellation& tessellation, double theta0) {
  UnreachableResult r;
  double area = 0.0;
  for (std::uint32_t f = 0; f < mesh.faceCount(); ++f) {
    const auto& n = tessellation.clusters[tessellation.faceToCluster[f]].proxyNormal;
    if (angle_between(mesh.faceNormals()[f], n) > theta0) {
      r.faces.push_back(f);
      area += mesh.faceAreas()[f];
    }
  }
  r.countPct = 100.0 * static_cast<double>(r.faces.size()) / mesh.faceCount();
  r.areaPct = 100.0 * area / mesh.totalArea();
  return r;
}

double area_sd(const Tessellation& tessellation) {
  std::vector<double> areas;
  for (const auto& c : tessellation.clusters) areas.push_back(c.area);
  return population_sd(areas);
}

MetricsReport compute_metrics(const TriangleMesh& mesh, const Tessellation& tessellation,
                              const MetricsOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  MetricsReport r;
  r.nozzleRadius = options.nozzleRadius;
  r.theta0 = options.theta0;
  r.coverageThreshold = options.threshold.value_or(options.nozzleRadius);
  r.sigmaE = kPi * options.nozzleRadius * options.nozzleRadius;

  const auto cov = coverage_and_overlap(mesh, tessellation, options.geodesic,
                                        r.coverageThreshold);
  r.coveragePct = cov.coveragePct;
  r.overlapPct = cov.overlapPct;
  r.rsdPct = rsd(tessellation, r.sigmaE);
  auto unreach = unreachable_faces(mesh, tessellation, options.theta0);
  r.unreachPct = unreach.countPct;
  r.unreachAreaPct = unreach.areaPct;
  r.unreachableFaces = std::move(unreach.faces);
  r.areaSD = area_sd(tessellation);
  for (const auto& c : tessellation.clusters) r.clusterAreas.push_back(c.area);
  r.runtimeSeconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::string metrics_csv_header() {
  return "seed,clusters,r_c,theta0,threshold,coverage_pct,overlap_pct,rsd_pct,"
         "unreach_pct,unreach_area_pct,area_sd,runtime_s";
}

std::string metrics_csv_row(const MetricsReport& r, std::uint64_t seed) {
  std::ostringstream os;
  os.precision(10);
  os << seed << ',' << r.clusterAreas.size() << ',' << r.nozzleRadius << ',' << r.theta0
     << ',' << r.coverageThreshold << ',' << r.coveragePct << ',' << r.overlapPct << ','
     << r.rsdPct << ',' << r.unreachPct << ',' << r.unreachAreaPct << ',' << r.areaSD << ','
     << r.runtimeSeconds;
  return os.str();
}

}  // namespace surfcover
