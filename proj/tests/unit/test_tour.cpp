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

#include <random>

#include "oracles.hpp"
#include "surfcover/error.hpp"
#include "surfcover/invariants.hpp"
#include "surfcover/tour.hpp"

namespace surfcover {
namespace {

CostMatrix euclidean(const std::vector<Vec3>& pts) {
  CostMatrix m(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) m.set(i, j, (pts[i] - pts[j]).norm());
  return m;
}

std::vector<std::vector<double>> dense(const CostMatrix& m) {
  std::vector<std::vector<double>> d(m.size(), std::vector<double>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) d[i][j] = m(i, j);
  return d;
}

GeneratorGraph graph_from(const std::vector<Vec3>& pts) {
  GeneratorGraph g;
  for (std::uint32_t i = 0; i < pts.size(); ++i) g.nodes.push_back({i, i, pts[i]});
  for (std::uint32_t i = 0; i < pts.size(); ++i)
    for (std::uint32_t j = i + 1; j < pts.size(); ++j)
      g.edges[{i, j}] = {(pts[i] - pts[j]).norm(), {pts[i], pts[j]}, false};
  return g;
}

TEST(ThreeOpt, TinyInstancesHaveOneTour) {
  for (std::size_t n : {2u, 3u}) {
    std::vector<Vec3> pts{{0, 0, 0}, {1, 0, 0}, {0, 2, 0}};
    pts.resize(n);
    const auto g = graph_from(pts);
    const auto p = three_opt_tour(g, 0);
    EXPECT_TRUE(check_permutation(p.order, n).empty());
    double expected = 0.0;
    for (std::size_t i = 0; i < n; ++i) expected += (pts[i] - pts[(i + 1) % n]).norm();
    EXPECT_NEAR(p.totalCost, expected, 1e-12);
  }
}

TEST(ThreeOpt, SquareGivesPerimeter) {
  const std::vector<Vec3> pts{{0, 0, 0}, {1, 1, 0}, {1, 0, 0}, {0, 1, 0}};
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const auto r = three_opt(euclidean(pts), seed);
    EXPECT_NEAR(r.cost, 4.0, 1e-12);
  }
}

TEST(ThreeOpt, RandomEightNodeInstancesNearOptimal) {
  std::mt19937_64 rng(123);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Vec3> pts;
    for (int i = 0; i < 8; ++i) pts.emplace_back(u(rng), u(rng), 0.0);
    const auto m = euclidean(pts);
    const auto r = three_opt(m, trial);
    const double best = oracle::brute_force_tsp(dense(m));
    EXPECT_TRUE(check_permutation(r.order, 8).empty());
    EXPECT_GE(r.cost, best * (1.0 - 1e-12));
    EXPECT_LE(r.cost, best * 1.05) << "trial " << trial;
    EXPECT_LE(r.cost, r.initialCost);
    EXPECT_DOUBLE_EQ(r.cost, tour_cost(m, r.order));
  }
}

TEST(ThreeOpt, NonMetricInstancesReachLocalOptimum) {
  std::mt19937_64 rng(321);
  std::uniform_real_distribution<double> u(1.0, 100.0);
  for (int trial = 0; trial < 200; ++trial) {
    CostMatrix m(8);
    for (std::size_t i = 0; i < 8; ++i)
      for (std::size_t j = i + 1; j < 8; ++j) m.set(i, j, u(rng));
    const auto r = three_opt(m, trial);
    const auto d = dense(m);
    EXPECT_GE(r.cost, oracle::brute_force_tsp(d) * (1.0 - 1e-12));
    EXPECT_GE(oracle::best_three_exchange(d, r.order), r.cost * (1.0 - 1e-12));
  }
}

TEST(ThreeOpt, LocalOptimumHasNoImprovingSegmentReversal) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Vec3> pts;
  for (int i = 0; i < 40; ++i) pts.emplace_back(u(rng), u(rng), 0.0);
  const auto m = euclidean(pts);
  const auto r = three_opt(m, 5);
  auto order = r.order;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t j = i + 2; j <= order.size(); ++j) {
      auto alt = order;
      std::reverse(alt.begin() + i, alt.begin() + j);
      EXPECT_GE(tour_cost(m, alt), r.cost - 1e-9);
    }
  }
}

TEST(ThreeOpt, RelabelingKeepsCost) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Vec3> pts;
  for (int i = 0; i < 7; ++i) pts.emplace_back(u(rng), u(rng), 0.0);
  const double opt = oracle::brute_force_tsp(dense(euclidean(pts)));
  std::vector<Vec3> shuffled = pts;
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  EXPECT_NEAR(oracle::brute_force_tsp(dense(euclidean(shuffled))), opt, 1e-12);
  EXPECT_NEAR(three_opt(euclidean(pts), 0).cost, opt, 1e-9);
  EXPECT_NEAR(three_opt(euclidean(shuffled), 0).cost, opt, 1e-9);
}

TEST(NearestNeighbor, StartsAtSeedAndIsGreedy) {
  const std::vector<Vec3> pts{{0, 0, 0}, {10, 0, 0}, {1, 0, 0}, {3, 0, 0}};
  const auto order = nearest_neighbor_tour(euclidean(pts), 0);
  EXPECT_EQ(order, (std::vector<std::uint32_t>{0, 2, 3, 1}));
  EXPECT_EQ(nearest_neighbor_tour(euclidean(pts), 5).front(), 1u);
}

TEST(ExtractCoveragePath, TriangleKeepsJunctions) {
  const std::vector<Vec3> pts{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
  const auto g = graph_from(pts);
  const std::vector<std::uint32_t> order{0, 1, 2};
  const auto p = extract_coverage_path(order, g);
  EXPECT_EQ(p.polyline.size(), 6u);
  EXPECT_EQ(p.polyline.front(), pts[0]);
  EXPECT_EQ(p.polyline.back(), pts[0]);
  for (std::size_t k = 1; k + 1 < p.polyline.size(); k += 2) {
    EXPECT_LE((p.polyline[k] - p.polyline[k + 1]).norm(), 1e-9);
  }
  EXPECT_NEAR(polyline_length(p.polyline), p.totalCost, 1e-12);
}

TEST(ExtractCoveragePath, ReversalAndOpenPath) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Vec3> pts;
  for (int i = 0; i < 6; ++i) pts.emplace_back(u(rng), u(rng), 0.0);
  const auto g = graph_from(pts);
  std::vector<std::uint32_t> order{0, 3, 1, 5, 2, 4};
  const auto fwd = extract_coverage_path(order, g);
  std::reverse(order.begin(), order.end());
  const auto rev = extract_coverage_path(order, g);
  EXPECT_NEAR(fwd.totalCost, rev.totalCost, 1e-12);
  auto back = rev.polyline;
  std::reverse(back.begin(), back.end());
  // Same closed curve, traversed from a different start node.
  EXPECT_NEAR(polyline_length(back), polyline_length(fwd.polyline), 1e-12);

  double longest = 0.0;
  for (std::size_t i = 0; i < 6; ++i)
    longest = std::max(longest, g.cost(fwd.order[i], fwd.order[(i + 1) % 6]));
  EXPECT_NEAR(fwd.openCost, fwd.totalCost - longest, 1e-12);
  EXPECT_TRUE(check_permutation(fwd.openOrder, 6).empty());
}

TEST(ExtractCoveragePath, MissingEdge) {
  auto g = graph_from({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}});
  g.edges.erase({0, 2});
  const std::vector<std::uint32_t> order{0, 1, 2};
  try {
    extract_coverage_path(order, g);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMissingEdgePath);
  }
  try {
    three_opt_tour(g, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIncompleteGraph);
  }
}

}  // namespace
}  // namespace surfcover
