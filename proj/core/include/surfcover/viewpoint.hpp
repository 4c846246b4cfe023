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

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "surfcover/ccvt.hpp"
#include "surfcover/geometry.hpp"
#include "surfcover/mesh.hpp"

namespace surfcover {

/// Spherical-cap packing parameters for alternative approach directions.
struct CandidateRayParams {
  double standoff = 0.05;               // r_s, sphere radius
  double nozzleRadius = 0.005 * 1.4142135623730951;  // r_c
  double capAngle = kPi / 3.0;          // phi
  std::optional<std::size_t> count;     // N_c; empty means Auto

  void validate() const;
  /// Minimum separation between adjacent centers.
  double separation() const;
  double cap_area() const;
  /// floor(0.5 * cap area / (pi (l/2)^2)), at least 1.
  std::size_t auto_count() const;
  std::size_t resolved_count() const { return count ? *count : auto_count(); }
};

/// Centers on the sphere of radius r_s about the local origin, the first at
/// the pole (0, 0, r_s), sorted by distance to the first.
struct CandidateRaySet {
  CandidateRayParams params;
  std::vector<Vec3> centers;
  double objective = 0.0;  // sum of x^2 + y^2
  std::size_t iterations = 0;
};

/// Packs N_c centers in the cap z >= r_s cos(phi) with pairwise distance at
/// least l, pulling them toward the pole. Throws InfeasiblePacking when the
/// count exceeds 1.1 times the area bound or no feasible packing is found.
CandidateRaySet candidate_ray_set(const CandidateRayParams& params);

/// Sum of x^2 + y^2 over centers.
double packing_objective(std::span<const Vec3> centers);

/// Ray from generator + r_s * normal toward the generator.
Ray make_viewpoint(const Vec3& generator, const Vec3& proxyNormal, double standoff);

/// Maps local centers into the world frame of a ray aimed at its waypoint
/// ray.at(r_s): rotate the pole onto -ray.direction, then translate.
std::vector<Vec3> align_candidates(const Ray& ray, const CandidateRaySet& set);

/// Decides whether an approach ray is acceptable.
class ValidityOracle {
 public:
  virtual ~ValidityOracle() = default;
  /// Must be safe to call concurrently.
  virtual bool is_valid(const Ray& ray, double thetaR) const = 0;
};

/// True when no face of `mesh` other than `ignore` meets the open segment
/// from waypoint + eps * u to standoff, u the unit direction between them.
bool segment_clear(const TriangleMesh& mesh, const Vec3& waypoint, const Vec3& standoff,
                   double eps, std::span<const std::uint32_t> ignore = {});

/// Elevation angle from `up` at most theta_r, and the segment between the
/// waypoint and the standoff point clear of the part and environment meshes.
class DefaultValidityOracle final : public ValidityOracle {
 public:
  DefaultValidityOracle(const TriangleMesh* part,
                        std::vector<const TriangleMesh*> environment, double standoff,
                        Vec3 up = Vec3::UnitZ());

  bool is_valid(const Ray& ray, double thetaR) const override;

 private:
  const TriangleMesh* part_;
  std::vector<const TriangleMesh*> environment_;
  double standoff_;
  Vec3 up_;
  double eps_;
};

/// Accepts everything; useful when only occlusion matters.
class PermissiveOracle final : public ValidityOracle {
 public:
  bool is_valid(const Ray&, double) const override { return true; }
};

/// Angle between -ray.direction and `up`.
double elevation_angle(const Ray& ray, const Vec3& up = Vec3::UnitZ());

/// Offset used to lift a waypoint off its face: 1e-6 times the bbox diagonal.
double occlusion_epsilon(const TriangleMesh& mesh);

/// An approach ray and the face containing its waypoint.
struct ViewRay {
  Ray ray;
  std::uint32_t face = 0;
};

/// View rays of a tessellation, in the given cluster order.
std::vector<ViewRay> viewpoint_rays(const Tessellation& tessellation,
                                    std::span<const std::uint32_t> order, double standoff);

/// First aligned candidate whose waypoint segment is clear of the mesh (own
/// face excluded) and which the oracle accepts.
std::optional<Ray> get_free_ray(const ViewRay& view, const CandidateRaySet& set,
                                const TriangleMesh& mesh, const ValidityOracle& oracle,
                                double thetaR);

struct PoseCandidate {
  Ray ray;
  double rollAngle = 0.0;
  std::uint32_t waypointIndex = 0;
};

/// 2 pi i / I for i = 0 .. I-1.
std::vector<double> roll_angles(std::size_t count);

enum class WaypointStatus { kAccepted, kCorrected, kUnrecoverable };
std::string to_string(WaypointStatus status);

struct WaypointPlan {
  WaypointStatus status = WaypointStatus::kAccepted;
  Ray original;
  std::optional<Ray> final;
  std::uint32_t face = 0;
  std::vector<PoseCandidate> candidates;
};

struct ViewpointPlan {
  std::vector<WaypointPlan> waypoints;
  std::size_t accepted = 0;
  std::size_t corrected = 0;
  std::size_t unrecoverable = 0;
};

/// Keeps valid rays, substitutes candidates for invalid ones and drops the
/// rest. Each kept waypoint gets one pose per roll angle.
ViewpointPlan plan_valid_configs(std::span<const ViewRay> rays, const CandidateRaySet& set,
                                 const TriangleMesh& mesh, const ValidityOracle& oracle,
                                 double thetaR, std::size_t rollCount);

/// Distance between poses in configuration space.
struct ConfigMetric {
  double angleWeight = 0.05;  // m/rad
  double rollWeight = 0.01;   // m/rad

  double operator()(const PoseCandidate& a, const PoseCandidate& b) const;
};

struct LayeredPath {
  std::vector<std::size_t> selection;  // candidate index per layer
  double cost = 0.0;
};

/// Cheapest one-per-layer selection where consecutive picks pay
/// edge(layer, i, j) from candidate i of `layer` to candidate j of layer+1.
/// Lowest index wins ties. Throws EmptyLayer.
LayeredPath layered_shortest_path(
    std::span<const std::size_t> layerSizes,
    const std::function<double(std::size_t, std::size_t, std::size_t)>& edge);

struct ConfigTour {
  std::vector<PoseCandidate> poses;
  std::vector<std::size_t> selection;
  double cost = 0.0;
};

ConfigTour optimal_config_tour(std::span<const std::vector<PoseCandidate>> layers,
                               const ConfigMetric& metric = {});

}  // namespace surfcover
