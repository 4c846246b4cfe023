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

// Microbenchmarks for the hot paths of each pipeline stage.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <random>
#include <vector>

#include "surfcover/ccvt.hpp"
#include "surfcover/geodesic.hpp"
#include "surfcover/mesh.hpp"
#include "surfcover/shapes.hpp"
#include "surfcover/tour.hpp"
#include "surfcover/viewpoint.hpp"

namespace {

using namespace surfcover;

const TriangleMesh& sphere(unsigned frequency) {
  static std::vector<std::pair<unsigned, TriangleMesh>> cache;
  for (const auto& [f, m] : cache) {
    if (f == frequency) return m;
  }
  cache.emplace_back(frequency, shapes::icosphere(frequency));
  return cache.back().second;
}

std::vector<Site> random_sites(const TriangleMesh& mesh, std::size_t m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> pick(0, std::uint32_t(mesh.faceCount() - 1));
  std::vector<Site> sites;
  for (std::size_t i = 0; i < m; ++i) {
    const auto f = pick(rng);
    sites.push_back({f, mesh.faceCentroids()[f], mesh.faceNormals()[f]});
  }
  return sites;
}

void BM_AssignFaces(benchmark::State& state) {
  const auto& mesh = sphere(23);
  const auto sites = random_sites(mesh, std::size_t(state.range(0)), 1);
  const auto params = EnergyParams::recipe(mesh);
  for (auto _ : state) {
    benchmark::DoNotOptimize(assign_faces(mesh, sites, params));
  }
  state.SetItemsProcessed(state.iterations() * std::int64_t(mesh.faceCount()));
}
BENCHMARK(BM_AssignFaces)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_LloydRun(benchmark::State& state) {
  const auto& mesh = sphere(23);
  LloydOptions options;
  options.clusters = std::size_t(state.range(0));
  options.seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(lloyd_run(mesh, EnergyParams::recipe(mesh), options));
  }
}
BENCHMARK(BM_LloydRun)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_SteinerGraphBuild(benchmark::State& state) {
  const auto& mesh = sphere(unsigned(state.range(0)));
  const auto faces = all_faces(mesh);
  for (auto _ : state) {
    SteinerGraph graph(mesh, faces, 3);
    benchmark::DoNotOptimize(graph.arcCount());
  }
  state.counters["faces"] = double(mesh.faceCount());
}
BENCHMARK(BM_SteinerGraphBuild)->Arg(10)->Arg(23)->Unit(benchmark::kMillisecond);

void BM_SteinerShortestPath(benchmark::State& state) {
  const auto& mesh = sphere(23);
  const SteinerGraph graph(mesh, all_faces(mesh), unsigned(state.range(0)));
  const SurfacePoint a{0, mesh.faceCentroids()[0]};
  const auto far = std::uint32_t(mesh.faceCount() / 2);
  const SurfacePoint b{far, mesh.faceCentroids()[far]};
  for (auto _ : state) {
    benchmark::DoNotOptimize(graph.shortest_path(a, b));
  }
}
BENCHMARK(BM_SteinerShortestPath)->Arg(1)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_AdjacentGeneratorDistances(benchmark::State& state) {
  const auto& mesh = sphere(23);
  LloydOptions options;
  options.clusters = std::size_t(state.range(0));
  options.seed = 7;
  const auto t = lloyd_run(mesh, EnergyParams::recipe(mesh), options);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        complete_generator_graph(adjacent_generator_distances(mesh, t, GeodesicOptions{})));
  }
}
BENCHMARK(BM_AdjacentGeneratorDistances)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_ThreeOpt(benchmark::State& state) {
  const auto n = std::size_t(state.range(0));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Vec3> points(n);
  for (auto& p : points) p = Vec3(u(rng), u(rng), 0.0);
  CostMatrix costs(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) costs.set(i, j, (points[i] - points[j]).norm());
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(three_opt(costs, 0));
  }
}
BENCHMARK(BM_ThreeOpt)->Arg(20)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_CandidateRaySet(benchmark::State& state) {
  CandidateRayParams params;
  params.count = std::size_t(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(candidate_ray_set(params));
  }
}
BENCHMARK(BM_CandidateRaySet)->Arg(10)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_RayIntersect(benchmark::State& state) {
  const auto& mesh = sphere(23);
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<Ray> rays(1024);
  for (auto& r : rays) r = Ray{Vec3::Zero(), Vec3(n(rng), n(rng), n(rng)).normalized()};
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ray_intersect(mesh, rays[i++ % rays.size()]));
  }
}
BENCHMARK(BM_RayIntersect);

}  // namespace

BENCHMARK_MAIN();
