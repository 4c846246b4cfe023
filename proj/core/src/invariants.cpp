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

#include "surfcover/invariants.hpp"

#include <algorithm>
#include <cmath>

namespace surfcover {

namespace {

std::string at(const char* what, std::size_t i) { return std::string(what) + " " + std::to_string(i); }

}  // namespace

Violations check_partition(const TriangleMesh& mesh, const Tessellation& t) {
  Violations v;
  const std::size_t n = mesh.faceCount();
  if (t.faceToCluster.size() != n) {
    v.push_back("faceToCluster has " + std::to_string(t.faceToCluster.size()) +
                " entries for " + std::to_string(n) + " faces");
    return v;
  }
  std::vector<std::uint32_t> seen(n, 0);
  for (std::size_t c = 0; c < t.clusters.size(); ++c) {
    const auto& faces = t.clusters[c].faces;
    if (faces.empty()) v.push_back(at("empty cluster", c));
    for (auto f : faces) {
      if (f >= n) {
        v.push_back(at("cluster", c) + " lists out-of-range face " + std::to_string(f));
        continue;
      }
      ++seen[f];
      if (t.faceToCluster[f] != c) {
        v.push_back(at("face", f) + " listed by cluster " + std::to_string(c) +
                    " but mapped to " + std::to_string(t.faceToCluster[f]));
      }
    }
  }
  for (std::size_t f = 0; f < n; ++f) {
    if (seen[f] != 1) {
      v.push_back(at("face", f) + " appears in " + std::to_string(seen[f]) + " clusters");
    }
    if (t.faceToCluster[f] >= t.clusters.size()) v.push_back(at("face", f) + " has no cluster");
  }
  return v;
}

Violations check_connectivity(const TriangleMesh& mesh, const Tessellation& t) {
  Violations v;
  std::vector<char> visited(mesh.faceCount(), 0);
  std::vector<std::uint32_t> stack;
  for (std::size_t c = 0; c < t.clusters.size(); ++c) {
    const auto& faces = t.clusters[c].faces;
    if (faces.empty()) continue;
    std::size_t reached = 0;
    stack.assign(1, faces.front());
    visited[faces.front()] = 1;
    while (!stack.empty()) {
      const auto f = stack.back();
      stack.pop_back();
      ++reached;
      for (auto g : mesh.adjacentFaces(f)) {
        if (!visited[g] && t.faceToCluster[g] == c) {
          visited[g] = 1;
          stack.push_back(g);
        }
      }
    }
    if (reached != faces.size()) {
      v.push_back(at("cluster", c) + " is disconnected (" + std::to_string(reached) + " of " +
                  std::to_string(faces.size()) + " faces reachable)");
    }
  }
  return v;
}

Violations check_generators(const TriangleMesh& mesh, const Tessellation& t) {
  Violations v;
  for (std::size_t c = 0; c < t.clusters.size(); ++c) {
    const auto& cl = t.clusters[c];
    if (!std::binary_search(cl.faces.begin(), cl.faces.end(), cl.generatorFace)) {
      v.push_back(at("generator of cluster", c) + " lies outside the cluster");
      continue;
    }
    if (cl.generator != mesh.faceCentroids()[cl.generatorFace]) {
      v.push_back(at("generator of cluster", c) + " is not its face centroid");
    }
    if (std::abs(cl.proxyNormal.norm() - 1.0) > 1e-9) {
      v.push_back(at("proxy normal of cluster", c) + " is not unit length");
    }
  }
  return v;
}

Violations check_generator_graph(const GeneratorGraph& g, bool requireComplete) {
  Violations v;
  if (requireComplete && !g.is_complete()) v.push_back("generator graph is incomplete");
  for (const auto& [k, e] : g.edges) {
    const std::string name = "edge " + std::to_string(k.first) + "-" + std::to_string(k.second);
    if (k.first >= g.nodes.size() || k.second >= g.nodes.size()) {
      v.push_back(name + " references a missing node");
      continue;
    }
    if (!std::isfinite(e.cost) || e.cost < 0.0) v.push_back(name + " has invalid cost");
    if (e.path.empty()) continue;
    if (e.path.front() != g.nodes[k.first].point || e.path.back() != g.nodes[k.second].point) {
      v.push_back(name + " path is not anchored at its generators");
    }
  }
  return v;
}

Violations check_permutation(std::span<const std::uint32_t> order, std::size_t n) {
  Violations v;
  if (order.size() != n) {
    v.push_back("tour visits " + std::to_string(order.size()) + " of " + std::to_string(n) +
                " nodes");
  }
  std::vector<char> seen(n, 0);
  for (auto i : order) {
    if (i >= n || seen[i]) {
      v.push_back(at("tour repeats or exceeds node", i));
      continue;
    }
    seen[i] = 1;
  }
  return v;
}

Violations check_candidate_set(const CandidateRaySet& s, double tol) {
  Violations v;
  const auto& c = s.centers;
  const double r = s.params.standoff;
  const double l = s.params.separation();
  if (c.empty()) return {"candidate set is empty"};
  if ((c[0] - Vec3(0.0, 0.0, r)).norm() > tol) v.push_back("first center is not the pole");
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (std::abs(c[i].norm() - r) > tol) v.push_back(at("center", i) + " is off the sphere");
    if (c[i].z() < r * std::cos(s.params.capAngle) - tol) {
      v.push_back(at("center", i) + " is outside the cap");
    }
    for (std::size_t j = i + 1; j < c.size(); ++j) {
      if ((c[i] - c[j]).norm() < l - tol) {
        v.push_back("centers " + std::to_string(i) + " and " + std::to_string(j) +
                    " are closer than the separation");
      }
    }
    if (i > 0 && (c[i] - c[0]).norm() < (c[i - 1] - c[0]).norm()) {
      v.push_back(at("center", i) + " breaks the distance ordering");
    }
  }
  return v;
}

Violations check_viewpoint_plan(const ViewpointPlan& plan, const TriangleMesh& mesh,
                                const CandidateRaySet& set, const ValidityOracle& oracle,
                                double thetaR, std::size_t rollCount) {
  Violations v;
  const double eps = occlusion_epsilon(mesh);
  const auto rolls = roll_angles(rollCount);
  for (std::size_t w = 0; w < plan.waypoints.size(); ++w) {
    const auto& wp = plan.waypoints[w];
    if (wp.status == WaypointStatus::kUnrecoverable) {
      if (!wp.candidates.empty()) v.push_back(at("unrecoverable waypoint", w) + " has poses");
      continue;
    }
    if (!wp.final) {
      v.push_back(at("waypoint", w) + " has no final ray");
      continue;
    }
    const Vec3 waypoint = wp.original.at(set.params.standoff);
    const std::uint32_t own[] = {wp.face};
    if (!segment_clear(mesh, waypoint, wp.final->origin, eps, own)) {
      v.push_back(at("waypoint", w) + " ray is occluded");
    }
    if (!oracle.is_valid(*wp.final, thetaR)) v.push_back(at("waypoint", w) + " ray is invalid");
    if ((wp.final->at(set.params.standoff) - waypoint).norm() > 1e-9 * std::max(1.0, set.params.standoff)) {
      v.push_back(at("waypoint", w) + " ray misses its waypoint");
    }
    if (wp.candidates.size() != rolls.size()) {
      v.push_back(at("waypoint", w) + " has the wrong number of poses");
      continue;
    }
    for (std::size_t i = 0; i < rolls.size(); ++i) {
      if (wp.candidates[i].rollAngle != rolls[i]) v.push_back(at("waypoint", w) + " roll mismatch");
    }
  }
  return v;
}

Violations check_metrics(const MetricsReport& r) {
  Violations v;
  auto pct = [&](const char* name, double x) {
    if (!(x >= 0.0 && x <= 100.0 + 1e-9)) v.push_back(std::string(name) + " out of [0, 100]");
  };
  pct("coverage", r.coveragePct);
  pct("overlap", r.overlapPct);
  pct("unreachable", r.unreachPct);
  if (!(r.rsdPct >= 0.0)) v.push_back("negative RSD");
  if (r.overlapPct > r.coveragePct) v.push_back("overlap exceeds coverage");
  return v;
}

}  // namespace surfcover
