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

#include "surfcover/ccvt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "surfcover/error.hpp"
#include "surfcover/parallel.hpp"

namespace surfcover {

void EnergyParams::validate() const {
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::kInvalidArgument, what);
  };
  if (!(alpha1 > 0.0)) fail("alpha1 must be positive");
  if (!(alpha2 >= 0.0 && alpha2 <= 1.0)) fail("alpha2 must lie in [0, 1]");
  if (!(alpha3 > -1.0 && alpha3 < 1.0)) fail("alpha3 must lie in (-1, 1)");
  if (!(alpha4 > 1.0)) fail("alpha4 must exceed 1");
  if (clusters && *clusters == 0) fail("cluster count must be positive");
}

EnergyParams EnergyParams::recipe(const TriangleMesh& mesh, bool roughSurface) {
  EnergyParams p;
  p.alpha1 = bbox_diagonal(mesh) / 6.0;
  p.alpha2 = 0.93;
  p.alpha3 = roughSurface ? 1.0 / 3.0 : 1.0 / 1.9;
  p.alpha4 = 7.0;
  p.norm = Norm::kL1;
  p.normalCostEnabled = true;
  return p;
}

double normal_cost(const Vec3& faceNormal, const Vec3& proxyNormal,
                   double alpha3, double alpha4) {
  const double dot = faceNormal.dot(proxyNormal);
  const double beta = dot > alpha3 ? 1.0 : alpha4;
  return beta * (1.0 - dot) / 2.0;
}

double cost_xi(const EnergyParams& params, const Vec3& generator,
               const Vec3& proxyNormal, const FaceData& face) {
  const Vec3 d = face.centroid - generator;
  const double dist = params.norm == Norm::kL1 ? d.lpNorm<1>() : d.norm();
  if (!params.normalCostEnabled) return face.area * dist / params.alpha1;
  return params.alpha2 / params.alpha1 * face.area * dist +
         (1.0 - params.alpha2) * face.area *
             normal_cost(face.normal, proxyNormal, params.alpha3, params.alpha4);
}

std::vector<Site> Tessellation::sites() const {
  std::vector<Site> out;
  out.reserve(clusters.size());
  for (const auto& c : clusters) out.push_back(c.site());
  return out;
}

Assignment assign_faces(const TriangleMesh& mesh, std::span<const Site> sites,
                        const EnergyParams& params) {
  if (sites.empty()) throw Error(ErrorCode::kInvalidArgument, "no generators");
  const std::size_t nf = mesh.faceCount();
  Assignment out;
  out.faceToCluster.resize(nf);
  constexpr std::size_t kChunk = 1024;
  parallel_for((nf + kChunk - 1) / kChunk, [&](std::size_t chunk) {
    const std::size_t end = std::min(nf, (chunk + 1) * kChunk);
    for (std::size_t f = chunk * kChunk; f < end; ++f) {
      const FaceData face = face_data(mesh, static_cast<std::uint32_t>(f));
      double best = std::numeric_limits<double>::infinity();
      std::uint32_t arg = 0;
      for (std::size_t i = 0; i < sites.size(); ++i) {
        const double c = cost_xi(params, sites[i].point, sites[i].normal, face);
        if (c < best) {
          best = c;
          arg = static_cast<std::uint32_t>(i);
        }
      }
      out.faceToCluster[f] = arg;
    }
  });
  std::vector<char> used(sites.size(), 0);
  for (auto c : out.faceToCluster) used[c] = 1;
  for (std::size_t i = 0; i < sites.size(); ++i) {
    if (!used[i]) out.emptyClusters.push_back(static_cast<std::uint32_t>(i));
  }
  return out;
}

double assignment_energy(const TriangleMesh& mesh,
                         std::span<const std::uint32_t> faceToCluster,
                         std::span<const Site> sites, const EnergyParams& params) {
  const std::size_t nf = mesh.faceCount();
  std::vector<double> costs(nf);
  constexpr std::size_t kChunk = 4096;
  parallel_for((nf + kChunk - 1) / kChunk, [&](std::size_t chunk) {
    const std::size_t end = std::min(nf, (chunk + 1) * kChunk);
    for (std::size_t f = chunk * kChunk; f < end; ++f) {
      const Site& s = sites[faceToCluster[f]];
      costs[f] = cost_xi(params, s.point, s.normal,
                         face_data(mesh, static_cast<std::uint32_t>(f)));
    }
  });
  double total = 0.0;
  for (double c : costs) total += c;
  return total;
}

Vec3 mass_centroid(const TriangleMesh& mesh, std::span<const std::uint32_t> faces) {
  Vec3 weighted = Vec3::Zero();
  double area = 0.0;
  for (auto f : faces) {
    weighted += mesh.faceAreas()[f] * mesh.faceCentroids()[f];
    area += mesh.faceAreas()[f];
  }
  return weighted / area;
}

std::uint32_t constrain_centroid(const TriangleMesh& mesh,
                                 std::span<const std::uint32_t> faces,
                                 const Vec3& target) {
  if (faces.empty()) throw Error(ErrorCode::kInvalidArgument, "empty cluster");
  std::uint32_t best = faces[0];
  double bestD = std::numeric_limits<double>::infinity();
  for (auto f : faces) {
    const double d = (mesh.faceCentroids()[f] - target).squaredNorm();
    if (d < bestD || (d == bestD && f < best)) {
      bestD = d;
      best = f;
    }
  }
  return best;
}

std::optional<Vec3> proxy_normal(const TriangleMesh& mesh,
                                 std::span<const std::uint32_t> faces) {
  Vec3 sum = Vec3::Zero();
  for (auto f : faces) sum += mesh.faceAreas()[f] * mesh.faceNormals()[f];
  const double len = sum.norm();
  if (!(len > 1e-9)) return std::nullopt;
  return Vec3(sum / len);
}

std::vector<Cluster> build_clusters(const TriangleMesh& mesh,
                                    std::span<const std::uint32_t> faceToCluster,
                                    std::size_t clusterCount) {
  std::vector<Cluster> clusters(clusterCount);
  for (std::uint32_t f = 0; f < faceToCluster.size(); ++f) {
    clusters[faceToCluster[f]].faces.push_back(f);
  }
  parallel_for(clusterCount, [&](std::size_t i) {
    Cluster& c = clusters[i];
    if (c.faces.empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "cluster " + std::to_string(i) + " has no faces");
    }
    for (auto f : c.faces) c.area += mesh.faceAreas()[f];
    c.massCentroid = mass_centroid(mesh, c.faces);
    c.generatorFace = constrain_centroid(mesh, c.faces, c.massCentroid);
    c.generator = mesh.faceCentroids()[c.generatorFace];
    if (auto n = proxy_normal(mesh, c.faces)) {
      c.proxyNormal = *n;
    } else {
      c.proxyNormal = mesh.faceNormals()[c.generatorFace];
      c.normalFallback = true;
    }
  });
  return clusters;
}

double total_energy(const TriangleMesh& mesh, const Tessellation& tessellation,
                    const EnergyParams& params) {
  const auto sites = tessellation.sites();
  return assignment_energy(mesh, tessellation.faceToCluster, sites, params);
}

std::size_t expected_cluster_count(const TriangleMesh& mesh, double nozzleRadius) {
  if (!(nozzleRadius > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "nozzle radius must be positive");
  }
  const double sigma = kPi * nozzleRadius * nozzleRadius;
  const double m = std::round(mesh.totalArea() / sigma);
  return m < 1.0 ? 1 : static_cast<std::size_t>(m);
}

namespace {

Site face_site(const TriangleMesh& mesh, std::uint32_t f) {
  return {f, mesh.faceCentroids()[f], mesh.faceNormals()[f]};
}

// Moves each empty site onto the face with the largest cost to its current
// site, skipping faces that host a site, then reassigns.
Assignment assign_without_empties(const TriangleMesh& mesh,
                                  std::vector<Site>& sites,
                                  const EnergyParams& params) {
  Assignment a = assign_faces(mesh, sites, params);
  for (std::size_t attempt = 0; !a.emptyClusters.empty() && attempt < sites.size();
       ++attempt) {
    std::vector<char> isSite(mesh.faceCount(), 0);
    for (const Site& s : sites) isSite[s.face] = 1;
    for (std::uint32_t e : a.emptyClusters) {
      double worst = -1.0;
      std::uint32_t arg = 0;
      bool found = false;
      for (std::uint32_t f = 0; f < mesh.faceCount(); ++f) {
        if (isSite[f]) continue;
        const Site& s = sites[a.faceToCluster[f]];
        const double c = cost_xi(params, s.point, s.normal, face_data(mesh, f));
        if (c > worst) {
          worst = c;
          arg = f;
          found = true;
        }
      }
      if (!found) {
        throw Error(ErrorCode::kTooManyClusters, "no face left to reseed a cluster");
      }
      sites[e] = face_site(mesh, arg);
      isSite[arg] = 1;
    }
    a = assign_faces(mesh, sites, params);
  }
  // Duplicate centroids can keep a reseeded site empty; hand it its own face.
  for (std::uint32_t e : a.emptyClusters) a.faceToCluster[sites[e].face] = e;
  if (!a.emptyClusters.empty()) {
    std::vector<std::size_t> counts(sites.size(), 0);
    for (auto c : a.faceToCluster) ++counts[c];
    a.emptyClusters.clear();
    for (std::size_t i = 0; i < counts.size(); ++i) {
      if (counts[i] == 0) a.emptyClusters.push_back(static_cast<std::uint32_t>(i));
    }
    if (!a.emptyClusters.empty()) {
      throw Error(ErrorCode::kTooManyClusters, "could not populate every cluster");
    }
  }
  return a;
}

}  // namespace

Tessellation lloyd_run(const TriangleMesh& mesh, const EnergyParams& params,
                       const LloydOptions& options) {
  params.validate();
  const std::size_t m = options.clusters;
  const std::size_t nf = mesh.faceCount();
  if (m == 0) throw Error(ErrorCode::kInvalidArgument, "cluster count must be positive");
  if (m > nf) {
    throw Error(ErrorCode::kTooManyClusters,
                std::to_string(m) + " clusters requested for " +
                    std::to_string(nf) + " faces");
  }

  // (i) seeded choice of m distinct faces (partial Fisher-Yates).
  std::mt19937_64 rng(options.seed);
  std::vector<std::uint32_t> pool(nf);
  std::iota(pool.begin(), pool.end(), 0u);
  std::vector<Site> sites(m);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng() % (nf - i));
    std::swap(pool[i], pool[j]);
    sites[i] = face_site(mesh, pool[i]);
  }

  Tessellation tess;
  tess.seed = options.seed;
  double previous = 0.0;
  const std::size_t cap = std::max<std::size_t>(1, options.maxIterations);
  for (std::size_t it = 1; it <= cap; ++it) {
    // (ii) assignment against frozen generators and proxy normals.
    Assignment a = assign_without_empties(mesh, sites, params);
    tess.faceToCluster = std::move(a.faceToCluster);
    // (iii) + (iv) mass centroids, projection, proxy normals.
    tess.clusters = build_clusters(mesh, tess.faceToCluster, m);
    sites = tess.sites();
    const double energy = total_energy(mesh, tess, params);
    tess.energyTrace.push_back(energy);
    tess.energy = energy;
    tess.iterations = it;
    // (v) relative energy change.
    if (it > 1) {
      const double change = std::abs(previous - energy);
      if (change < options.convergenceTol * std::abs(previous) ||
          (previous == 0.0 && energy == 0.0)) {
        tess.converged = true;
        break;
      }
    }
    previous = energy;
  }

  if (options.repairConnectivity) {
    Tessellation repaired = repair_connectivity(mesh, tess, params);
    repaired.energyTrace = tess.energyTrace;
    repaired.iterations = tess.iterations;
    repaired.converged = tess.converged;
    repaired.seed = tess.seed;
    return repaired;
  }
  return tess;
}

std::vector<std::vector<std::uint32_t>> cluster_adjacency(
    const TriangleMesh& mesh, std::span<const std::uint32_t> faceToCluster,
    std::size_t clusterCount) {
  std::vector<std::vector<std::uint32_t>> adj(clusterCount);
  for (std::uint32_t f = 0; f < mesh.faceCount(); ++f) {
    const auto cf = faceToCluster[f];
    for (auto g : mesh.adjacentFaces(f)) {
      const auto cg = faceToCluster[g];
      if (cg != cf) adj[cf].push_back(cg);
    }
  }
  for (auto& a : adj) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
  return adj;
}

Tessellation repair_connectivity(const TriangleMesh& mesh,
                                 const Tessellation& tessellation,
                                 const EnergyParams& params) {
  const std::size_t m = tessellation.clusters.size();
  const std::size_t nf = mesh.faceCount();
  std::vector<std::uint32_t> owner = tessellation.faceToCluster;
  const std::vector<Site> sites = tessellation.sites();
  std::vector<char> changed(m, 0);

  constexpr std::size_t kMaxRounds = 100;
  for (std::size_t round = 0; round < kMaxRounds; ++round) {
    bool progress = false;
    std::vector<std::vector<std::uint32_t>> members(m);
    for (std::uint32_t f = 0; f < nf; ++f) members[owner[f]].push_back(f);

    // Visited marks are per cluster: faces moved earlier in this round may be
    // revisited by the cluster that absorbed them.
    std::vector<std::uint32_t> visitedBy(nf, std::numeric_limits<std::uint32_t>::max());
    for (std::size_t c = 0; c < m; ++c) {
      // Components in order of their lowest face.
      std::vector<std::vector<std::uint32_t>> comps;
      for (auto seed : members[c]) {
        if (visitedBy[seed] == c) continue;
        comps.emplace_back();
        std::vector<std::uint32_t> stack{seed};
        visitedBy[seed] = static_cast<std::uint32_t>(c);
        while (!stack.empty()) {
          const auto f = stack.back();
          stack.pop_back();
          comps.back().push_back(f);
          for (auto g : mesh.adjacentFaces(f)) {
            if (owner[g] == c && visitedBy[g] != c) {
              visitedBy[g] = static_cast<std::uint32_t>(c);
              stack.push_back(g);
            }
          }
        }
      }
      if (comps.size() <= 1) continue;
      std::size_t keep = 0;
      for (std::size_t k = 1; k < comps.size(); ++k) {
        if (comps[k].size() > comps[keep].size()) keep = k;
      }
      std::vector<char> pending(nf, 0);
      std::vector<std::uint32_t> queue;
      for (std::size_t k = 0; k < comps.size(); ++k) {
        if (k == keep) continue;
        for (auto f : comps[k]) {
          pending[f] = 1;
          queue.push_back(f);
        }
      }
      std::sort(queue.begin(), queue.end());
      // Peel island faces from their boundary inward.
      bool moved = true;
      while (!queue.empty() && moved) {
        moved = false;
        std::vector<std::uint32_t> rest;
        for (auto f : queue) {
          double best = std::numeric_limits<double>::infinity();
          std::int64_t target = -1;
          for (auto g : mesh.adjacentFaces(f)) {
            if (pending[g] || owner[g] == c) continue;
            const Site& s = sites[owner[g]];
            const double cost = cost_xi(params, s.point, s.normal, face_data(mesh, f));
            if (cost < best || (cost == best && owner[g] < target)) {
              best = cost;
              target = owner[g];
            }
          }
          if (target < 0) {
            rest.push_back(f);
            continue;
          }
          owner[f] = static_cast<std::uint32_t>(target);
          pending[f] = 0;
          changed[c] = 1;
          changed[target] = 1;
          moved = true;
          progress = true;
        }
        queue.swap(rest);
      }
    }
    if (!progress) break;
  }

  Tessellation out = tessellation;
  out.faceToCluster = owner;
  if (std::none_of(changed.begin(), changed.end(), [](char c) { return c; })) {
    return out;
  }
  const auto rebuilt = build_clusters(mesh, owner, m);
  for (std::size_t c = 0; c < m; ++c) {
    if (changed[c]) out.clusters[c] = rebuilt[c];
  }
  out.energy = total_energy(mesh, out, params);
  return out;
}

}  // namespace surfcover
