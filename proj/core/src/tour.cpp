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

#include "surfcover/tour.hpp"

#include <algorithm>
#include <limits>

#include "surfcover/error.hpp"

namespace surfcover {

CostMatrix CostMatrix::from_graph(const GeneratorGraph& graph) {
  const std::size_t n = graph.nodes.size();
  if (!graph.is_complete()) {
    throw Error(ErrorCode::kIncompleteGraph,
                std::to_string(graph.edges.size()) + " of " +
                    std::to_string(n * (n - 1) / 2) + " edges present");
  }
  CostMatrix m(n);
  for (const auto& [k, e] : graph.edges) m.set(k.first, k.second, e.cost);
  return m;
}

double tour_cost(const CostMatrix& costs, std::span<const std::uint32_t> order) {
  double total = 0.0;
  const std::size_t n = order.size();
  if (n < 2) return 0.0;
  for (std::size_t i = 0; i < n; ++i) total += costs(order[i], order[(i + 1) % n]);
  return total;
}

std::vector<std::uint32_t> nearest_neighbor_tour(const CostMatrix& costs,
                                                 std::uint32_t start) {
  const std::size_t n = costs.size();
  std::vector<std::uint32_t> order;
  if (n == 0) return order;
  std::vector<char> seen(n, 0);
  std::uint32_t cur = start % n;
  order.push_back(cur);
  seen[cur] = 1;
  while (order.size() < n) {
    double best = std::numeric_limits<double>::infinity();
    std::uint32_t next = 0;
    bool found = false;
    for (std::uint32_t j = 0; j < n; ++j) {
      if (seen[j]) continue;
      if (!found || costs(cur, j) < best) {
        best = costs(cur, j);
        next = j;
        found = true;
      }
    }
    order.push_back(next);
    seen[next] = 1;
    cur = next;
  }
  return order;
}

TourResult three_opt(const CostMatrix& costs, std::uint64_t seed, std::size_t maxPasses) {
  const std::size_t n = costs.size();
  TourResult r;
  if (n == 0) return r;
  r.order = nearest_neighbor_tour(costs, static_cast<std::uint32_t>(seed % n));
  r.initialCost = tour_cost(costs, r.order);
  r.cost = r.initialCost;
  if (n < 4) return r;

  auto& t = r.order;
  std::vector<std::uint32_t> next(n);
  bool improved = true;
  while (improved && r.passes < maxPasses) {
    improved = false;
    ++r.passes;
    for (std::size_t i = 0; i + 2 < n; ++i) {
      for (std::size_t j = i + 1; j + 1 < n; ++j) {
        for (std::size_t k = j + 1; k < n; ++k) {
          // Tour = S0 [..a] A [b..c] B [d..e] S1 [f..]; S0 and S1 join cyclically.
          const auto a = t[i], b = t[i + 1], c = t[j], d = t[j + 1], e = t[k];
          const auto f = t[(k + 1) % n];
          const double base = costs(a, b) + costs(c, d) + costs(e, f);
          const double alt[7] = {
              costs(a, c) + costs(b, d) + costs(e, f),  // A reversed
              costs(a, b) + costs(c, e) + costs(d, f),  // B reversed
              costs(a, e) + costs(d, c) + costs(b, f),  // (A B) reversed
              costs(a, c) + costs(b, e) + costs(d, f),  // A rev, B rev
              costs(a, d) + costs(e, b) + costs(c, f),  // B A
              costs(a, d) + costs(e, c) + costs(b, f),  // B A reversed
              costs(a, e) + costs(d, b) + costs(c, f),  // B reversed, A
          };
          int move = -1;
          const double eps = 1e-12 * std::max(1.0, base);
          for (int m = 0; m < 7; ++m) {
            if (alt[m] < base - eps) {
              move = m;
              break;
            }
          }
          if (move < 0) continue;

          const auto A0 = t.begin() + i + 1, A1 = t.begin() + j + 1;
          const auto B1 = t.begin() + k + 1;
          std::vector<std::uint32_t> segA(A0, A1), segB(A1, B1);
          auto rev = [](std::vector<std::uint32_t> s) {
            std::reverse(s.begin(), s.end());
            return s;
          };
          std::vector<std::uint32_t> mid;
          auto put = [&](const std::vector<std::uint32_t>& s) {
            mid.insert(mid.end(), s.begin(), s.end());
          };
          switch (move) {
            case 0: put(rev(segA)); put(segB); break;
            case 1: put(segA); put(rev(segB)); break;
            case 2: put(rev(segB)); put(rev(segA)); break;
            case 3: put(rev(segA)); put(rev(segB)); break;
            case 4: put(segB); put(segA); break;
            case 5: put(segB); put(rev(segA)); break;
            case 6: put(rev(segB)); put(segA); break;
          }
          std::copy(mid.begin(), mid.end(), A0);
          ++r.moves;
          improved = true;
        }
      }
    }
  }
  r.cost = tour_cost(costs, r.order);
  return r;
}

CoveragePath extract_coverage_path(std::span<const std::uint32_t> order,
                                   const GeneratorGraph& graph) {
  CoveragePath path;
  path.order.assign(order.begin(), order.end());
  const std::size_t n = order.size();
  if (n < 2) {
    if (n == 1) {
      path.polyline.push_back(graph.nodes[order[0]].point);
      path.openOrder = path.order;
    }
    return path;
  }
  // A 2-cycle traverses its single edge twice.
  std::vector<double> legs(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto u = order[i], v = order[(i + 1) % n];
    const auto* e = graph.find(u, v);
    if (!e) {
      throw Error(ErrorCode::kMissingEdgePath,
                  "tour uses missing edge " + std::to_string(u) + "-" + std::to_string(v));
    }
    auto seg = graph.path(u, v);
    path.polyline.insert(path.polyline.end(), seg.begin(), seg.end());
    legs[i] = e->cost;
    path.totalCost += e->cost;
  }
  // Open path: drop the longest leg (first on ties).
  const std::size_t cut = static_cast<std::size_t>(
      std::max_element(legs.begin(), legs.end()) - legs.begin());
  for (std::size_t s = 0; s < n; ++s) path.openOrder.push_back(order[(cut + 1 + s) % n]);
  path.openCost = 0.0;
  for (std::size_t s = 0; s + 1 < n; ++s) path.openCost += legs[(cut + 1 + s) % n];
  return path;
}

CoveragePath three_opt_tour(const GeneratorGraph& graph, std::uint64_t seed) {
  if (graph.nodes.empty()) throw Error(ErrorCode::kInvalidArgument, "empty graph");
  const CostMatrix costs = CostMatrix::from_graph(graph);
  const TourResult r = three_opt(costs, seed);
  return extract_coverage_path(r.order, graph);
}

}  // namespace surfcover
