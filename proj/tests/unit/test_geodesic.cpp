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

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "oracles.hpp"
#include "surfcover/ccvt.hpp"
#include "surfcover/error.hpp"
#include "surfcover/geodesic.hpp"
#include "surfcover/invariants.hpp"
#include "surfcover/shapes.hpp"

namespace surfcover {
namespace {

Tessellation segment(const TriangleMesh& mesh, std::size_t m, std::uint64_t seed) {
  LloydOptions o;
  o.clusters = m;
  o.seed = seed;
  return lloyd_run(mesh, EnergyParams::recipe(mesh), o);
}

SurfacePoint centroid(const TriangleMesh& mesh, std::uint32_t f) {
  return {f, mesh.faceCentroids()[f]};
}

TEST(SteinerGraph, PlanarDistanceIsNearlyEuclidean) {
  const auto plane = shapes::grid(20, 20, 1.0, 1.0);
  SteinerGraph g(plane, all_faces(plane), 3);
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<std::uint32_t> pick(0, plane.faceCount() - 1);
  for (int i = 0; i < 30; ++i) {
    const auto a = pick(rng), b = pick(rng);
    const auto p = g.shortest_path(centroid(plane, a), centroid(plane, b));
    ASSERT_TRUE(p);
    const double euclid = (plane.faceCentroids()[a] - plane.faceCentroids()[b]).norm();
    EXPECT_GE(p->cost, euclid * (1.0 - 1e-12));
    EXPECT_LE(p->cost, euclid * 1.01 + 1e-12);
    EXPECT_NEAR(polyline_length(p->polyline), p->cost, 1e-9 * std::max(1.0, p->cost));
    EXPECT_EQ(p->polyline.front(), plane.faceCentroids()[a]);
    EXPECT_EQ(p->polyline.back(), plane.faceCentroids()[b]);
  }
}

TEST(SteinerGraph, SameFaceIsStraightSegment) {
  const auto plane = shapes::grid(2, 2, 1.0, 1.0);
  SteinerGraph g(plane, all_faces(plane), 3);
  const SurfacePoint a{0, plane.faceCentroids()[0]};
  const auto p = g.shortest_path(a, a);
  ASSERT_TRUE(p);
  EXPECT_EQ(p->cost, 0.0);
}

TEST(SteinerGraph, SphereNearAntipodesApproachPi) {
  const auto sphere = shapes::icosphere(16);
  SteinerGraph g(sphere, all_faces(sphere), 3);
  std::uint32_t a = 0, b = 0;
  for (std::uint32_t f = 0; f < sphere.faceCount(); ++f) {
    if (sphere.faceCentroids()[f].z() > sphere.faceCentroids()[a].z()) a = f;
  }
  for (std::uint32_t f = 0; f < sphere.faceCount(); ++f) {
    if (sphere.faceCentroids()[f].dot(sphere.faceCentroids()[a]) <
        sphere.faceCentroids()[b].dot(sphere.faceCentroids()[a]))
      b = f;
  }
  const auto p = g.shortest_path(centroid(sphere, a), centroid(sphere, b));
  ASSERT_TRUE(p);
  const double truth = oracle::great_circle(sphere.faceCentroids()[a], sphere.faceCentroids()[b],
                                            1.0);
  EXPECT_NEAR(p->cost / truth, 1.0, 0.02);
  EXPECT_GE(p->cost, (sphere.faceCentroids()[a] - sphere.faceCentroids()[b]).norm());
}

TEST(SteinerGraph, CentroidDistancesAgreeWithPointQueries) {
  const auto knot = shapes::torus_knot(40, 8);
  SteinerGraph g(knot, all_faces(knot), 2);
  const auto src = centroid(knot, 17);
  const auto all = g.centroid_distances(src, oracle::kInf);
  for (std::uint32_t f = 0; f < knot.faceCount(); f += 37) {
    const auto p = g.shortest_path(src, centroid(knot, f));
    ASSERT_TRUE(p);
    EXPECT_NEAR(all[f], p->cost, 1e-12 * std::max(1.0, p->cost));
  }
  const auto bounded = g.centroid_distances(src, 0.5);
  for (std::uint32_t f = 0; f < knot.faceCount(); ++f) {
    if (all[f] <= 0.5) EXPECT_EQ(bounded[f], all[f]);
    else EXPECT_GT(bounded[f], 0.5);
  }
}

TEST(SteinerGraph, DisconnectedFaceSetsThrow) {
  const auto two = TriangleMesh::build({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {5, 0, 0}, {6, 0, 0}, {5, 1, 0}},
                                       {{0, 1, 2}, {3, 4, 5}});
  const auto solver = make_geodesic_solver(two, all_faces(two), {});
  try {
    geodesic_between(*solver, centroid(two, 0), centroid(two, 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDisconnected);
  }
}

TEST(ClusterSubmesh, SingleAndTwoClusters) {
  const auto sphere = shapes::icosphere(6);
  const auto one = segment(sphere, 1, 0);
  EXPECT_EQ(cluster_submesh(sphere, one, 0).faces, all_faces(sphere));
  const auto two = segment(sphere, 2, 0);
  for (std::uint32_t c = 0; c < 2; ++c) {
    const auto sub = cluster_submesh(sphere, two, c);
    EXPECT_EQ(sub.faces, all_faces(sphere));
    EXPECT_EQ(sub.clusters.front(), c);
  }
}

TEST(ClusterSubmesh, SizeFollowsNeighborCount) {
  const auto sphere = shapes::icosphere(12);
  const auto t = segment(sphere, 32, 3);
  const auto adj = cluster_adjacency(sphere, t.faceToCluster, 32);
  double avg = 0.0;
  for (const auto& a : adj) avg += static_cast<double>(a.size());
  avg /= 32.0;
  double meanFaces = 0.0;
  for (std::uint32_t c = 0; c < 32; ++c) meanFaces += cluster_submesh(t, adj, c).faces.size();
  meanFaces /= 32.0;
  const double predicted = (1.0 + avg) * sphere.faceCount() / 32.0;
  EXPECT_LT(meanFaces, 2.0 * predicted);
  EXPECT_GT(meanFaces, 0.5 * predicted);
}

TEST(ExtractMesh, VertexMapPointsIntoParent) {
  const auto sphere = shapes::icosphere(4);
  const std::vector<std::uint32_t> faces{0, 1, 2, 40};
  std::vector<std::uint32_t> map;
  const auto sub = extract_mesh(sphere, faces, &map);
  ASSERT_EQ(sub.faceCount(), faces.size());
  for (std::size_t f = 0; f < faces.size(); ++f) {
    for (int k = 0; k < 3; ++k) {
      EXPECT_EQ(map[sub.faces()[f][k]], sphere.faces()[faces[f]][k]);
    }
  }
}

TEST(AdjacentDistances, TwoClustersGiveOneEdge) {
  const auto sphere = shapes::icosphere(6);
  const auto g = adjacent_generator_distances(sphere, segment(sphere, 2, 1), {});
  EXPECT_EQ(g.edges.size(), 1u);
  EXPECT_TRUE(g.warnings.empty());
}

TEST(AdjacentDistances, EdgesMatchClusterAdjacencyAndDominateOracle) {
  const auto sphere = shapes::icosphere(10);
  const auto t = segment(sphere, 24, 5);
  const auto g = adjacent_generator_distances(sphere, t, {});
  // Recount adjacency directly from face labels.
  std::set<std::pair<std::uint32_t, std::uint32_t>> adjacent;
  for (std::uint32_t f = 0; f < sphere.faceCount(); ++f) {
    for (auto h : sphere.adjacentFaces(f)) {
      const auto a = t.faceToCluster[f], b = t.faceToCluster[h];
      if (a != b) adjacent.insert({std::min(a, b), std::max(a, b)});
    }
  }
  EXPECT_EQ(g.edges.size(), adjacent.size());
  for (const auto& [k, e] : g.edges) {
    EXPECT_TRUE(adjacent.count(k));
    const double full = full_mesh_geodesic_oracle(
        sphere, {g.nodes[k.first].face, g.nodes[k.first].point},
        {g.nodes[k.second].face, g.nodes[k.second].point}, {});
    EXPECT_GE(e.cost, full);
    EXPECT_NEAR(polyline_length(e.path), e.cost, 1e-6 * e.cost);
  }
  EXPECT_TRUE(check_generator_graph(g, false).empty());
  EXPECT_GT(g.avgNeighbors, 2.0);
}

GeneratorGraph hand_graph(std::size_t n) {
  GeneratorGraph g;
  for (std::uint32_t i = 0; i < n; ++i) g.nodes.push_back({i, i, Vec3(double(i), 0.0, 0.0)});
  return g;
}

void add_edge(GeneratorGraph& g, std::uint32_t i, std::uint32_t j, double cost) {
  g.edges[GeneratorGraph::key(i, j)] = {cost, {g.nodes[std::min(i, j)].point,
                                               g.nodes[std::max(i, j)].point}, false};
}

TEST(CompleteGraph, PathGraphGetsConcatenatedEdge) {
  auto g = hand_graph(3);
  add_edge(g, 0, 1, 1.0);
  add_edge(g, 1, 2, 2.0);
  const auto c = complete_generator_graph(g);
  ASSERT_TRUE(c.is_complete());
  const auto* e = c.find(0, 2);
  ASSERT_TRUE(e);
  EXPECT_EQ(e->cost, 3.0);
  EXPECT_TRUE(e->derived);
  EXPECT_EQ(e->path, (std::vector<Vec3>{Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(2, 0, 0)}));
  EXPECT_EQ(c.path(2, 0).front(), Vec3(2, 0, 0));
  EXPECT_EQ(c.cost(0, 2), c.cost(2, 0));
}

TEST(CompleteGraph, CompleteInputIsUnchanged) {
  auto g = hand_graph(3);
  add_edge(g, 0, 1, 1.0);
  add_edge(g, 1, 2, 1.0);
  add_edge(g, 0, 2, 5.0);
  const auto c = complete_generator_graph(g);
  EXPECT_EQ(c.find(0, 2)->cost, 5.0);
  EXPECT_FALSE(c.find(0, 2)->derived);
}

TEST(CompleteGraph, MatchesFloydWarshallExactlyOnIntegerCosts) {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> w(1, 20);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 9;
    auto g = hand_graph(n);
    std::vector<std::vector<double>> d(n, std::vector<double>(n, oracle::kInf));
    for (std::size_t i = 0; i < n; ++i) d[i][i] = 0.0;
    for (std::uint32_t i = 0; i + 1 < n; ++i) {  // spanning path keeps it connected
      const double c = w(rng);
      add_edge(g, i, i + 1, c);
      d[i][i + 1] = d[i + 1][i] = c;
    }
    for (int extra = 0; extra < 8; ++extra) {
      const std::uint32_t i = rng() % n, j = rng() % n;
      if (i == j || g.find(i, j)) continue;
      const double c = w(rng);
      add_edge(g, i, j, c);
      d[i][j] = d[j][i] = c;
    }
    const auto c = complete_generator_graph(g);
    const auto fw = oracle::floyd_warshall(d);
    for (std::uint32_t i = 0; i < n; ++i) {
      for (std::uint32_t j = i + 1; j < n; ++j) {
        const auto* e = c.find(i, j);
        ASSERT_TRUE(e);
        if (e->derived) EXPECT_EQ(e->cost, fw[i][j]);
        else EXPECT_EQ(e->cost, d[i][j]);
        const auto path = c.path(i, j);
        ASSERT_FALSE(path.empty());
        EXPECT_EQ(path.front(), c.nodes[i].point);
        EXPECT_EQ(path.back(), c.nodes[j].point);
      }
    }
  }
}

TEST(CompleteGraph, DerivedEdgesSatisfyTriangleInequality) {
  const auto sphere = shapes::icosphere(8);
  const auto c = complete_generator_graph(
      adjacent_generator_distances(sphere, segment(sphere, 16, 2), {}));
  ASSERT_TRUE(c.is_complete());
  const auto n = static_cast<std::uint32_t>(c.nodes.size());
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = i + 1; j < n; ++j) {
      if (!c.find(i, j)->derived) continue;
      for (std::uint32_t k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        EXPECT_LE(c.cost(i, j), (c.cost(i, k) + c.cost(k, j)) * (1.0 + 1e-12));
      }
    }
  EXPECT_TRUE(check_generator_graph(c, true).empty());
}

TEST(CompleteGraph, DisconnectedGraphThrows) {
  auto g = hand_graph(4);
  add_edge(g, 0, 1, 1.0);
  add_edge(g, 2, 3, 1.0);
  try {
    complete_generator_graph(g);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDisconnectedGraph);
  }
  EXPECT_THROW(g.cost(0, 2), Error);
  EXPECT_THROW(g.path(0, 2), Error);
}

TEST(FullMeshOracle, EqualsSubmeshQueryForSingleCluster) {
  const auto sphere = shapes::icosphere(6);
  const auto t = segment(sphere, 1, 0);
  const auto sub = cluster_submesh(sphere, t, 0);
  const auto solver = make_geodesic_solver(sphere, sub.faces, {});
  const auto a = centroid(sphere, 3), b = centroid(sphere, 500);
  EXPECT_EQ(geodesic_between(*solver, a, b).cost, full_mesh_geodesic_oracle(sphere, a, b, {}));
}

TEST(FullMeshOracle, AllPairsBoundDecomposition) {
  const auto sphere = shapes::icosphere(8);
  const auto t = segment(sphere, 12, 4);
  const auto c = complete_generator_graph(adjacent_generator_distances(sphere, t, {}));
  const auto full = full_mesh_all_pairs(sphere, t, {});
  for (std::uint32_t i = 0; i < 12; ++i) {
    EXPECT_EQ(full[i][i], 0.0);
    for (std::uint32_t j = i + 1; j < 12; ++j) {
      EXPECT_EQ(full[i][j], full[j][i]);
      EXPECT_GE(c.cost(i, j), full[i][j]);
    }
  }
}

}  // namespace
}  // namespace surfcover
