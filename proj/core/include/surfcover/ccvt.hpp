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
#include <optional>
#include <span>
#include <vector>

#include "surfcover/geometry.hpp"
#include "surfcover/mesh.hpp"

namespace surfcover {

enum class Norm { kL1, kL2 };

/// Weights of the combined distance/normal clustering energy.
///
/// The per-face cost against a cluster with generator z and proxy normal n is
///   alpha2 / alpha1 * area * |centroid - z|_p + (1 - alpha2) * area * U(n_f, n)
/// where U = beta * (1 - n_f . n) / 2 and beta = 1 when n_f . n > alpha3,
/// alpha4 otherwise. With the normal term disabled the cost is
/// area * |centroid - z|_p / alpha1.
struct EnergyParams {
  double alpha1 = 1.0;
  double alpha2 = 0.93;
  double alpha3 = 1.0 / 1.9;
  double alpha4 = 7.0;
  Norm norm = Norm::kL1;
  bool normalCostEnabled = true;
  std::optional<std::size_t> clusters;  // empty means Auto

  /// Throws InvalidArgument when a weight is outside its admissible range.
  void validate() const;

  /// alpha1 = d/6 for bounding-box diagonal d, alpha2 = 0.93, alpha4 = 7,
  /// alpha3 = 1/1.9 (1/3 for rough surfaces), l1 norm with normal cost.
  static EnergyParams recipe(const TriangleMesh& mesh, bool roughSurface = false);
};

struct FaceData {
  double area = 0.0;
  Vec3 centroid = Vec3::Zero();
  Vec3 normal = Vec3::UnitZ();
};

inline FaceData face_data(const TriangleMesh& mesh, std::uint32_t f) {
  return {mesh.faceAreas()[f], mesh.faceCentroids()[f], mesh.faceNormals()[f]};
}

double normal_cost(const Vec3& faceNormal, const Vec3& proxyNormal,
                   double alpha3, double alpha4);

double cost_xi(const EnergyParams& params, const Vec3& generator,
               const Vec3& proxyNormal, const FaceData& face);

/// A generator with the normal used for its cost evaluations.
struct Site {
  std::uint32_t face = 0;
  Vec3 point = Vec3::Zero();
  Vec3 normal = Vec3::UnitZ();
};

struct Cluster {
  std::vector<std::uint32_t> faces;  // ascending
  std::uint32_t generatorFace = 0;
  Vec3 generator = Vec3::Zero();
  Vec3 massCentroid = Vec3::Zero();
  Vec3 proxyNormal = Vec3::UnitZ();
  double area = 0.0;
  bool normalFallback = false;  // resultant normal vanished

  Site site() const { return {generatorFace, generator, proxyNormal}; }
};

struct Tessellation {
  std::vector<Cluster> clusters;
  std::vector<std::uint32_t> faceToCluster;
  double energy = 0.0;
  std::size_t iterations = 0;
  std::uint64_t seed = 0;
  bool converged = false;
  std::vector<double> energyTrace;

  std::vector<Site> sites() const;
};

struct Assignment {
  std::vector<std::uint32_t> faceToCluster;
  std::vector<std::uint32_t> emptyClusters;  // sites that received no face
};

/// Assigns every face to the site with minimal cost_xi, lowest index on ties.
Assignment assign_faces(const TriangleMesh& mesh, std::span<const Site> sites,
                        const EnergyParams& params);

/// Sum of cost_xi over faces against their assigned sites, in face order.
double assignment_energy(const TriangleMesh& mesh,
                         std::span<const std::uint32_t> faceToCluster,
                         std::span<const Site> sites, const EnergyParams& params);

Vec3 mass_centroid(const TriangleMesh& mesh, std::span<const std::uint32_t> faces);

/// Member face whose centroid is closest to `target`; lowest index on ties.
std::uint32_t constrain_centroid(const TriangleMesh& mesh,
                                 std::span<const std::uint32_t> faces,
                                 const Vec3& target);

/// Normalized area-weighted mean of member normals, or empty when the
/// resultant is shorter than 1e-9.
std::optional<Vec3> proxy_normal(const TriangleMesh& mesh,
                                 std::span<const std::uint32_t> faces);

/// Builds cluster records from an assignment: mass centroid, constrained
/// generator and proxy normal per cluster. Every cluster must be non-empty.
/// A cluster whose normals cancel takes its generator face normal and is
/// flagged with normalFallback.
std::vector<Cluster> build_clusters(const TriangleMesh& mesh,
                                    std::span<const std::uint32_t> faceToCluster,
                                    std::size_t clusterCount);

double total_energy(const TriangleMesh& mesh, const Tessellation& tessellation,
                    const EnergyParams& params);

/// round(total area / (pi r_c^2)), at least 1.
std::size_t expected_cluster_count(const TriangleMesh& mesh, double nozzleRadius);

struct LloydOptions {
  std::size_t clusters = 1;
  std::uint64_t seed = 0;
  std::size_t maxIterations = 50;
  double convergenceTol = 1e-4;
  bool repairConnectivity = true;
};

/// Lloyd relaxation: seeded random generators, assignment, mass centroid,
/// projection onto a member face centroid, repeated until the relative energy
/// change drops below the tolerance or the iteration cap is hit.
Tessellation lloyd_run(const TriangleMesh& mesh, const EnergyParams& params,
                       const LloydOptions& options);

/// Reassigns every non-largest component of a cluster to the edge-adjacent
/// cluster of minimal cost, face by face, until all clusters are connected.
Tessellation repair_connectivity(const TriangleMesh& mesh,
                                 const Tessellation& tessellation,
                                 const EnergyParams& params);

/// Edge-adjacent cluster pairs; entry i lists neighbors of cluster i ascending.
std::vector<std::vector<std::uint32_t>> cluster_adjacency(
    const TriangleMesh& mesh, std::span<const std::uint32_t> faceToCluster,
    std::size_t clusterCount);

}  // namespace surfcover
