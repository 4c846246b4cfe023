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
#include <string>
#include <vector>

#include "surfcover/ccvt.hpp"
#include "surfcover/geodesic.hpp"
#include "surfcover/metrics.hpp"
#include "surfcover/mesh.hpp"
#include "surfcover/viewpoint.hpp"

namespace surfcover {

/// Each checker returns human-readable violations; empty means the
/// invariants hold.
using Violations = std::vector<std::string>;

/// Every face belongs to exactly one non-empty cluster and the cluster
/// records agree with faceToCluster.
Violations check_partition(const TriangleMesh& mesh, const Tessellation& tessellation);

/// Every cluster is edge-connected.
Violations check_connectivity(const TriangleMesh& mesh, const Tessellation& tessellation);

/// Generators sit on member face centroids; proxy normals have unit length.
Violations check_generators(const TriangleMesh& mesh, const Tessellation& tessellation);

/// Edge costs finite and non-negative, paths anchored at their nodes.
Violations check_generator_graph(const GeneratorGraph& graph, bool requireComplete);

/// `order` is a permutation of 0..n-1.
Violations check_permutation(std::span<const std::uint32_t> order, std::size_t n);

Violations check_candidate_set(const CandidateRaySet& set, double tol = 1e-6);

/// Kept rays are clear of the mesh and accepted by the oracle; roll angles
/// follow the discretization.
Violations check_viewpoint_plan(const ViewpointPlan& plan, const TriangleMesh& mesh,
                                const CandidateRaySet& set, const ValidityOracle& oracle,
                                double thetaR, std::size_t rollCount);

Violations check_metrics(const MetricsReport& report);

}  // namespace surfcover
