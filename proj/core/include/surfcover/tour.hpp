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
#include <span>
#include <vector>

#include "surfcover/geodesic.hpp"

namespace surfcover {

/// Dense symmetric cost matrix, row-major.
class CostMatrix {
 public:
  CostMatrix() = default;
  explicit CostMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

  /// Copies every edge of a complete graph; throws IncompleteGraph otherwise.
  static CostMatrix from_graph(const GeneratorGraph& graph);

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, double c) {
    data_[i * n_ + j] = c;
    data_[j * n_ + i] = c;
  }

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

/// Closed-tour cost, summed edge by edge starting at order[0].
double tour_cost(const CostMatrix& costs, std::span<const std::uint32_t> order);

/// Greedy tour from `start`, nearest unvisited node next, lowest index on ties.
std::vector<std::uint32_t> nearest_neighbor_tour(const CostMatrix& costs,
                                                 std::uint32_t start);

struct TourResult {
  std::vector<std::uint32_t> order;
  double cost = 0.0;
  double initialCost = 0.0;
  std::size_t passes = 0;
  std::size_t moves = 0;
};

/// 3-Opt local search from a nearest-neighbor start at node seed % n. Scans
/// every 3-edge removal and applies the first improving reconnection among
/// the seven alternatives, repeating until a full pass finds none (at most
/// `maxPasses` passes).
TourResult three_opt(const CostMatrix& costs, std::uint64_t seed,
                     std::size_t maxPasses = 1000);

struct CoveragePath {
  std::vector<std::uint32_t> order;
  double totalCost = 0.0;
  std::vector<Vec3> polyline;
  /// Closed tour with its longest edge removed.
  std::vector<std::uint32_t> openOrder;
  double openCost = 0.0;
};

/// Concatenates the stored edge paths along the closed tour (endpoints of
/// consecutive paths coincide and are both kept). Throws MissingEdgePath.
CoveragePath extract_coverage_path(std::span<const std::uint32_t> order,
                                   const GeneratorGraph& graph);

/// Tour over a complete generator graph; throws IncompleteGraph.
CoveragePath three_opt_tour(const GeneratorGraph& graph, std::uint64_t seed);

}  // namespace surfcover
