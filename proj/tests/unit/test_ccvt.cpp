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

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "surfcover/ccvt.hpp"
#include "surfcover/error.hpp"
#include "surfcover/invariants.hpp"
#include "surfcover/shapes.hpp"

namespace surfcover {
namespace {

EnergyParams distance_only(Norm norm) {
  EnergyParams p;
  p.norm = norm;
  p.normalCostEnabled = false;
  return p;
}

// Cost written out independently of the library.
double reference_cost(const EnergyParams& p, const Vec3& z, const Vec3& n, const TriangleMesh& m,
                      std::uint32_t f) {
  const Vec3 d = m.faceCentroids()[f] - z;
  const double dist = p.norm == Norm::kL1 ? d.cwiseAbs().sum() : d.norm();
  const double area = m.faceAreas()[f];
  if (!p.normalCostEnabled) return area * dist / p.alpha1;
  const double dot = m.faceNormals()[f].dot(n);
  const double beta = dot > p.alpha3 ? 1.0 : p.alpha4;
  return p.alpha2 / p.alpha1 * area * dist + (1.0 - p.alpha2) * area * beta * (1.0 - dot) / 2.0;
}

std::vector<Site> random_sites(const TriangleMesh& mesh, std::size_t m, std::mt19937_64& rng) {
  std::vector<Site> sites;
  std::uniform_int_distribution<std::uint32_t> pick(0, mesh.faceCount() - 1);
  for (std::size_t i = 0; i < m; ++i) {
    const auto f = pick(rng);
    sites.push_back({f, mesh.faceCentroids()[f], oracle::random_unit(rng)});
  }
  return sites;
}

TEST(ExpectedClusterCount, Definition) {
  const auto sphere = shapes::icosphere(10);
  const double rc = std::sqrt(sphere.totalArea() / kPi);
  EXPECT_EQ(expected_cluster_count(sphere, rc), 1u);
  EXPECT_EQ(expected_cluster_count(sphere, 1e3), 1u);
}

TEST(ExpectedClusterCount, UnitSphereHundred) {
  // Icosphere area approaches 4 pi from below; 0.2% is still rounded to 100.
  const auto sphere = shapes::icosphere(40);
  EXPECT_EQ(expected_cluster_count(sphere, 0.2), 100u);
}

TEST(NormalCost, HandValues) {
  EXPECT_DOUBLE_EQ(normal_cost(Vec3::UnitZ(), Vec3::UnitZ(), 0.5, 7.0), 0.0);
  EXPECT_DOUBLE_EQ(normal_cost(Vec3::UnitZ(), -Vec3::UnitZ(), 0.5, 7.0), 7.0);
  const Vec3 a(0.6, 0.8, 0.0);
  EXPECT_NEAR(normal_cost(a, Vec3::UnitX(), 0.5, 7.0), 0.2, 1e-15);
}

TEST(NormalCost, EqualityTakesPenalty) {
  const Vec3 a(0.5, std::sqrt(0.75), 0.0);
  const double dot = a.dot(Vec3::UnitX());
  EXPECT_DOUBLE_EQ(normal_cost(a, Vec3::UnitX(), dot, 7.0), 7.0 * (1.0 - dot) / 2.0);
}

TEST(CostXi, HandValues) {
  EnergyParams p;
  p.alpha1 = 1.0;
  p.alpha2 = 0.5;
  const FaceData face{2.0, Vec3(1, 1, 1), Vec3::UnitZ()};
  p.norm = Norm::kL1;
  EXPECT_DOUBLE_EQ(cost_xi(p, Vec3::Zero(), Vec3::UnitZ(), face), 3.0);
  p.norm = Norm::kL2;
  EXPECT_NEAR(cost_xi(p, Vec3::Zero(), Vec3::UnitZ(), face), std::sqrt(3.0), 1e-12);
  EXPECT_DOUBLE_EQ(cost_xi(p, Vec3(1, 1, 1), Vec3::UnitZ(), face), 0.0);
}

TEST(CostXi, DistanceOnlyDropsAlpha2) {
  EnergyParams p = distance_only(Norm::kL2);
  p.alpha1 = 2.0;
  p.alpha2 = 0.1;
  const FaceData face{3.0, Vec3(3, 4, 0), Vec3::UnitX()};
  EXPECT_DOUBLE_EQ(cost_xi(p, Vec3::Zero(), Vec3::UnitZ(), face), 7.5);
}

TEST(EnergyParams, ValidationAndRecipe) {
  EnergyParams p;
  EXPECT_NO_THROW(p.validate());
  p.alpha1 = 0.0;
  EXPECT_THROW(p.validate(), Error);
  p = {};
  p.alpha4 = 1.0;
  EXPECT_THROW(p.validate(), Error);
  p = {};
  p.alpha3 = 1.0;
  EXPECT_THROW(p.validate(), Error);

  const auto cube = shapes::cube(6.0);
  const auto r = EnergyParams::recipe(cube);
  EXPECT_NEAR(r.alpha1, std::sqrt(108.0) / 6.0, 1e-12);
  EXPECT_DOUBLE_EQ(r.alpha2, 0.93);
  EXPECT_DOUBLE_EQ(r.alpha3, 1.0 / 1.9);
  EXPECT_DOUBLE_EQ(r.alpha4, 7.0);
  EXPECT_DOUBLE_EQ(EnergyParams::recipe(cube, true).alpha3, 1.0 / 3.0);
}

TEST(AssignFaces, SingleGeneratorTakesEverything) {
  const auto sphere = shapes::icosphere(4);
  const std::vector<Site> sites{{7, sphere.faceCentroids()[7], sphere.faceNormals()[7]}};
  const auto a = assign_faces(sphere, sites, EnergyParams{});
  for (auto c : a.faceToCluster) EXPECT_EQ(c, 0u);
  EXPECT_TRUE(a.emptyClusters.empty());
}

TEST(AssignFaces, OppositePolesMatchBruteForceArgmin) {
  const auto sphere = shapes::icosphere(8);
  std::uint32_t north = 0, south = 0;
  for (std::uint32_t f = 0; f < sphere.faceCount(); ++f) {
    if (sphere.faceCentroids()[f].z() > sphere.faceCentroids()[north].z()) north = f;
    if (sphere.faceCentroids()[f].z() < sphere.faceCentroids()[south].z()) south = f;
  }
  const std::vector<Site> sites{{north, sphere.faceCentroids()[north], Vec3::UnitZ()},
                                {south, sphere.faceCentroids()[south], -Vec3::UnitZ()}};
  const auto p = distance_only(Norm::kL2);
  const auto a = assign_faces(sphere, sites, p);
  for (std::uint32_t f = 0; f < sphere.faceCount(); ++f) {
    const double c0 = reference_cost(p, sites[0].point, sites[0].normal, sphere, f);
    const double c1 = reference_cost(p, sites[1].point, sites[1].normal, sphere, f);
    EXPECT_EQ(a.faceToCluster[f], c1 < c0 ? 1u : 0u);
    if (std::abs(sphere.faceCentroids()[f].z()) > 0.05) {
      EXPECT_EQ(a.faceToCluster[f], sphere.faceCentroids()[f].z() > 0 ? 0u : 1u);
    }
  }
}

TEST(AssignFaces, RandomSitesMatchBruteForceArgmin) {
  const auto knot = shapes::torus_knot(60, 8);
  std::mt19937_64 rng(3);
  for (Norm norm : {Norm::kL1, Norm::kL2}) {
    EnergyParams p;
    p.norm = norm;
    p.alpha1 = 0.4;
    const auto sites = random_sites(knot, 12, rng);
    const auto a = assign_faces(knot, sites, p);
    for (std::uint32_t f = 0; f < knot.faceCount(); ++f) {
      std::uint32_t best = 0;
      double bestCost = oracle::kInf;
      for (std::uint32_t s = 0; s < sites.size(); ++s) {
        const double c = reference_cost(p, sites[s].point, sites[s].normal, knot, f);
        if (c < bestCost) {
          bestCost = c;
          best = s;
        }
      }
      ASSERT_EQ(a.faceToCluster[f], best);
    }
  }
}

TEST(AssignFaces, TiesGoToLowestIndexAndResultIsDeterministic) {
  const auto sphere = shapes::icosphere(3);
  const Site s{5, sphere.faceCentroids()[5], sphere.faceNormals()[5]};
  const std::vector<Site> sites{s, s, s};
  const auto a = assign_faces(sphere, sites, EnergyParams{});
  for (auto c : a.faceToCluster) EXPECT_EQ(c, 0u);
  EXPECT_EQ(a.emptyClusters, (std::vector<std::uint32_t>{1, 2}));
  EXPECT_EQ(assign_faces(sphere, sites, EnergyParams{}).faceToCluster, a.faceToCluster);
}

TEST(AssignFaces, NeverIncreasesEnergy) {
  const auto knot = shapes::torus_knot(40, 8);
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    EnergyParams p;
    p.norm = trial % 2 ? Norm::kL1 : Norm::kL2;
    const auto sites = random_sites(knot, 6, rng);
    std::vector<std::uint32_t> other(knot.faceCount());
    std::uniform_int_distribution<std::uint32_t> pick(0, 5);
    for (auto& c : other) c = pick(rng);
    const auto a = assign_faces(knot, sites, p);
    EXPECT_LE(assignment_energy(knot, a.faceToCluster, sites, p),
              assignment_energy(knot, other, sites, p));
  }
}

TEST(MassCentroid, SingleFacePairAndRandomSubset) {
  const auto sphere = shapes::icosphere(6);
  const std::uint32_t one[] = {9};
  EXPECT_EQ(mass_centroid(sphere, one), sphere.faceCentroids()[9]);

  const auto plane = shapes::grid(2, 1, 2.0, 1.0);
  const std::uint32_t pair[] = {0, 1};
  EXPECT_TRUE(mass_centroid(plane, pair).isApprox(
      0.5 * (plane.faceCentroids()[0] + plane.faceCentroids()[1]), 1e-15));

  std::mt19937_64 rng(2);
  std::vector<std::uint32_t> subset;
  std::uniform_int_distribution<std::uint32_t> pick(0, sphere.faceCount() - 1);
  for (int i = 0; i < 10; ++i) subset.push_back(pick(rng));
  std::sort(subset.begin(), subset.end());
  subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
  Vec3 num = Vec3::Zero();
  double den = 0.0;
  for (auto f : subset) {
    num += sphere.faceAreas()[f] * sphere.faceCentroids()[f];
    den += sphere.faceAreas()[f];
  }
  EXPECT_LE((mass_centroid(sphere, subset) - num / den).norm(), 1e-12);
}

TEST(ConstrainCentroid, MatchesExhaustiveScan) {
  const auto sphere = shapes::icosphere(10);
  std::vector<std::uint32_t> faces;
  for (std::uint32_t f = 0; f < 50; ++f) faces.push_back(f * 13 % sphere.faceCount());
  std::sort(faces.begin(), faces.end());
  const std::uint32_t single[] = {faces[3]};
  EXPECT_EQ(constrain_centroid(sphere, single, Vec3(5, 5, 5)), faces[3]);
  EXPECT_EQ(constrain_centroid(sphere, faces, sphere.faceCentroids()[faces[7]]), faces[7]);
  std::mt19937_64 rng(8);
  for (int t = 0; t < 20; ++t) {
    const Vec3 target = oracle::random_unit(rng) * 0.7;
    std::uint32_t best = faces[0];
    for (auto f : faces) {
      if ((sphere.faceCentroids()[f] - target).squaredNorm() <
          (sphere.faceCentroids()[best] - target).squaredNorm())
        best = f;
    }
    EXPECT_EQ(constrain_centroid(sphere, faces, target), best);
  }
}

TEST(ProxyNormal, HandCasesAndHemisphere) {
  const auto plane = shapes::grid(3, 3, 1.0, 1.0);
  const auto all = [](const TriangleMesh& m) {
    std::vector<std::uint32_t> v(m.faceCount());
    std::iota(v.begin(), v.end(), 0u);
    return v;
  };
  EXPECT_TRUE(proxy_normal(plane, all(plane))->isApprox(Vec3::UnitZ()));

  const auto corner = TriangleMesh::build({{0, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 0, 0}, {0, 0, 1}},
                                          {{0, 1, 2}, {0, 4, 3}});
  const std::uint32_t both[] = {0, 1};
  const auto n = proxy_normal(corner, both);
  ASSERT_TRUE(n);
  EXPECT_NEAR(std::abs(n->x()), 1.0 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(std::abs(n->y()), 1.0 / std::sqrt(2.0), 1e-12);

  const auto sphere = shapes::icosphere(12);
  std::vector<std::uint32_t> top;
  for (std::uint32_t f = 0; f < sphere.faceCount(); ++f)
    if (sphere.faceCentroids()[f].z() > 0) top.push_back(f);
  EXPECT_LT(angle_between(*proxy_normal(sphere, top), Vec3::UnitZ()), 5.0 * kPi / 180.0);
  EXPECT_FALSE(proxy_normal(sphere, all(sphere)).has_value());
}

TEST(TotalEnergy, HandBuiltFourFaceMesh) {
  const auto plane = shapes::grid(2, 1, 2.0, 1.0);  // 4 faces
  Tessellation t;
  t.faceToCluster = {0, 0, 1, 1};
  t.clusters = build_clusters(plane, t.faceToCluster, 2);
  const auto p = distance_only(Norm::kL1);
  double expected = 0.0;
  for (std::uint32_t f = 0; f < 4; ++f) {
    const auto& c = t.clusters[t.faceToCluster[f]];
    expected += reference_cost(p, c.generator, c.proxyNormal, plane, f);
  }
  EXPECT_NEAR(total_energy(plane, t, p), expected, 1e-15);
  EXPECT_GT(expected, 0.0);
}

TEST(BuildClusters, FallbackNormalAndEmptyError) {
  const auto sphere = shapes::icosphere(3);
  std::vector<std::uint32_t> f2c(sphere.faceCount(), 0);
  const auto clusters = build_clusters(sphere, f2c, 1);
  EXPECT_TRUE(clusters[0].normalFallback);
  EXPECT_EQ(clusters[0].proxyNormal, sphere.faceNormals()[clusters[0].generatorFace]);
  EXPECT_NEAR(clusters[0].area, sphere.totalArea(), 1e-12);
  EXPECT_THROW(build_clusters(sphere, f2c, 2), Error);
}

TEST(LloydRun, SingleClusterFixedPoint) {
  const auto plane = shapes::grid(9, 9, 1.0, 1.0);
  LloydOptions o;
  o.clusters = 1;
  o.seed = 4;
  const auto t = lloyd_run(plane, EnergyParams::recipe(plane), o);
  ASSERT_EQ(t.clusters.size(), 1u);
  EXPECT_LE(t.iterations, 2u);
  std::vector<std::uint32_t> all(plane.faceCount());
  std::iota(all.begin(), all.end(), 0u);
  EXPECT_EQ(t.clusters[0].generatorFace,
            constrain_centroid(plane, all, mass_centroid(plane, all)));
}

TEST(LloydRun, DeterministicForSeed) {
  const auto knot = shapes::torus_knot(80, 8);
  LloydOptions o;
  o.clusters = 20;
  o.seed = 99;
  const auto p = EnergyParams::recipe(knot);
  const auto a = lloyd_run(knot, p, o);
  const auto b = lloyd_run(knot, p, o);
  EXPECT_EQ(a.faceToCluster, b.faceToCluster);
  EXPECT_EQ(a.energyTrace, b.energyTrace);
  EXPECT_EQ(a.energy, b.energy);
  o.seed = 100;
  EXPECT_NE(lloyd_run(knot, p, o).faceToCluster, a.faceToCluster);
}

TEST(LloydRun, SphereL2ClustersAreUniform) {
  const auto sphere = shapes::icosphere(12);
  LloydOptions o;
  o.clusters = 32;
  o.seed = 1;
  const auto t = lloyd_run(sphere, distance_only(Norm::kL2), o);
  std::vector<double> areas;
  for (const auto& c : t.clusters) areas.push_back(c.area);
  const double mean = sphere.totalArea() / 32.0;
  double var = 0.0;
  for (double a : areas) var += (a - mean) * (a - mean);
  EXPECT_LT(std::sqrt(var / 32.0) / mean, 0.25);
}

TEST(LloydRun, PartitionAndGeneratorInvariants) {
  const auto knot = shapes::torus_knot(100, 10);
  LloydOptions o;
  o.clusters = 40;
  o.seed = 7;
  const auto t = lloyd_run(knot, EnergyParams::recipe(knot), o);
  EXPECT_TRUE(check_partition(knot, t).empty());
  EXPECT_TRUE(check_generators(knot, t).empty());
  EXPECT_TRUE(check_connectivity(knot, t).empty());
  EXPECT_EQ(t.energyTrace.size(), t.iterations);
  EXPECT_NEAR(t.energy, total_energy(knot, t, EnergyParams::recipe(knot)), 1e-9 * t.energy);
}

TEST(LloydRun, TooManyClusters) {
  const auto cube = shapes::cube();
  LloydOptions o;
  o.clusters = 13;
  try {
    lloyd_run(cube, EnergyParams{}, o);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTooManyClusters);
  }
  o.clusters = 12;
  EXPECT_EQ(lloyd_run(cube, EnergyParams{}, o).clusters.size(), 12u);
}

TEST(RepairConnectivity, ConnectedInputIsUnchanged) {
  const auto plane = shapes::grid(4, 4, 1.0, 1.0);
  Tessellation t;
  t.faceToCluster.resize(plane.faceCount());
  for (std::uint32_t f = 0; f < plane.faceCount(); ++f)
    t.faceToCluster[f] = plane.faceCentroids()[f].x() < 0.5 ? 0 : 1;
  t.clusters = build_clusters(plane, t.faceToCluster, 2);
  const auto r = repair_connectivity(plane, t, EnergyParams{});
  EXPECT_EQ(r.faceToCluster, t.faceToCluster);
}

TEST(RepairConnectivity, IslandIsAbsorbed) {
  const auto plane = shapes::grid(6, 2, 3.0, 1.0);
  Tessellation t;
  t.faceToCluster.resize(plane.faceCount());
  // Cluster 0 owns the left third plus an island at the far right.
  for (std::uint32_t f = 0; f < plane.faceCount(); ++f) {
    const double x = plane.faceCentroids()[f].x();
    t.faceToCluster[f] = x < 1.0 || x > 2.5 ? 0 : 1;
  }
  t.clusters = build_clusters(plane, t.faceToCluster, 2);
  ASSERT_EQ(oracle::component_count(plane, t.faceToCluster, 0), 2u);
  const auto r = repair_connectivity(plane, t, distance_only(Norm::kL2));
  EXPECT_TRUE(check_partition(plane, r).empty());
  for (std::uint32_t c = 0; c < 2; ++c) {
    EXPECT_EQ(oracle::component_count(plane, r.faceToCluster, c), 1u);
  }
  for (std::uint32_t f = 0; f < plane.faceCount(); ++f) {
    if (plane.faceCentroids()[f].x() > 2.5) EXPECT_EQ(r.faceToCluster[f], 1u);
  }
}

TEST(RepairConnectivity, LloydOutputIsFloodFillConnected) {
  const auto knot = shapes::torus_knot(120, 10);
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    LloydOptions o;
    o.clusters = 60;
    o.seed = seed;
    o.repairConnectivity = false;
    const auto params = EnergyParams::recipe(knot);
    const auto raw = lloyd_run(knot, params, o);
    const auto fixed = repair_connectivity(knot, raw, params);
    EXPECT_TRUE(check_partition(knot, fixed).empty());
    for (std::uint32_t c = 0; c < fixed.clusters.size(); ++c) {
      EXPECT_EQ(oracle::component_count(knot, fixed.faceToCluster, c), 1u);
    }
  }
}

}  // namespace
}  // namespace surfcover
