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

#include "surfcover/viewpoint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "surfcover/error.hpp"
#include "surfcover/parallel.hpp"

namespace surfcover {

namespace {

constexpr std::size_t kMaxPackingIterations = 10000;
constexpr double kGoldenAngle = 2.399963229728653;

struct CapGeometry {
  double radius;
  double cosCap;
  double sinCap;
  double separation;
};

// Nearest point of the sphere inside the cap, keeping the azimuth.
Vec3 project_to_cap(const CapGeometry& g, const Vec3& p) {
  Vec3 q = p;
  const double n = q.norm();
  if (n < 1e-300) return {0.0, 0.0, g.radius};
  q *= g.radius / n;
  if (q.z() >= g.radius * g.cosCap) return q;
  const double rho = std::hypot(q.x(), q.y());
  if (rho < 1e-300) return {g.radius * g.sinCap, 0.0, g.radius * g.cosCap};
  return {g.radius * g.sinCap * q.x() / rho, g.radius * g.sinCap * q.y() / rho,
          g.radius * g.cosCap};
}

bool in_cap(const CapGeometry& g, const Vec3& p) {
  return p.z() >= g.radius * g.cosCap - 1e-12 * g.radius;
}

bool feasible(const CapGeometry& g, const std::vector<Vec3>& c) {
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (!in_cap(g, c[i])) return false;
    for (std::size_t j = i + 1; j < c.size(); ++j) {
      if ((c[i] - c[j]).norm() < g.separation) return false;
    }
  }
  return true;
}

// Point of the sphere at chord distance d from `anchor`, closest to q.
std::optional<Vec3> onto_contact_circle(const CapGeometry& g, const Vec3& anchor,
                                        const Vec3& q, double d) {
  const Vec3 u = anchor / g.radius;
  const double h = (g.radius * g.radius - 0.5 * d * d) / g.radius;
  const double rho = std::sqrt(std::max(0.0, g.radius * g.radius - h * h));
  const Vec3 perp = q - q.dot(u) * u;
  const double pn = perp.norm();
  if (pn < 1e-15 * g.radius) return std::nullopt;
  return Vec3(h * u + rho * perp / pn);
}

double planar_sq(const Vec3& p) { return p.x() * p.x() + p.y() * p.y(); }

std::vector<Vec3> ring_initialization(const CapGeometry& g, std::size_t count) {
  std::vector<Vec3> c{{0.0, 0.0, g.radius}};
  const double ratio = std::min(1.0, g.separation / (2.0 * g.radius));
  const double dTheta = 2.0 * std::asin(ratio) * (1.0 + 1e-6);
  for (std::size_t ring = 1; c.size() < count; ++ring) {
    const double theta = std::min(kPi, ring * dTheta);
    const double s = g.separation * (1.0 + 1e-6) / (2.0 * g.radius * std::sin(theta));
    std::size_t slots = 1;
    if (s < 1.0) slots = std::max<std::size_t>(1, std::floor(kPi / std::asin(s)));
    const double offset = ring * kGoldenAngle;
    for (std::size_t k = 0; k < slots && c.size() < count; ++k) {
      const double az = offset + 2.0 * kPi * k / slots;
      c.push_back(project_to_cap(g, {g.radius * std::sin(theta) * std::cos(az),
                                     g.radius * std::sin(theta) * std::sin(az),
                                     g.radius * std::cos(theta)}));
    }
  }
  return c;
}

// Pushes close pairs apart until every pair is separated. The pole is pinned.
bool repel(const CapGeometry& g, std::vector<Vec3>& c, std::size_t& iterations) {
  const double target = g.separation * (1.0 + 1e-7);
  while (!feasible(g, c)) {
    if (iterations >= kMaxPackingIterations) return false;
    ++iterations;
    for (std::size_t i = 0; i < c.size(); ++i) {
      for (std::size_t j = i + 1; j < c.size(); ++j) {
        Vec3 diff = c[j] - c[i];
        double d = diff.norm();
        if (d >= target) continue;
        if (d < 1e-15 * g.radius) {
          diff = Vec3(-c[j].y(), c[j].x(), 0.0);
          if (diff.norm() < 1e-300) diff = Vec3::UnitX();
          d = 0.0;
        }
        const Vec3 dir = diff.normalized();
        const double push = target - d;
        if (i == 0) {
          c[j] = project_to_cap(g, c[j] + push * dir);
        } else {
          c[i] = project_to_cap(g, c[i] - 0.5 * push * dir);
          c[j] = project_to_cap(g, c[j] + 0.5 * push * dir);
        }
      }
    }
  }
  return true;
}

// Feasible descent on sum(x^2 + y^2): each center moves toward the pole,
// sliding along a single blocking neighbor when it touches one.
void descend(const CapGeometry& g, std::vector<Vec3>& c, std::size_t& iterations) {
  const double target = g.separation * (1.0 + 1e-9);
  const double maxStep = 0.25 * g.separation;
  const double minStep = 1e-11 * g.radius;
  std::vector<double> step(c.size(), maxStep);
  const Vec3 pole(0.0, 0.0, g.radius);

  auto admissible = [&](std::size_t i, const Vec3& q) {
    if (!in_cap(g, q)) return false;
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (j != i && (q - c[j]).norm() < g.separation) return false;
    }
    return true;
  };

  while (iterations < kMaxPackingIterations) {
    ++iterations;
    bool active = false;
    for (std::size_t i = 1; i < c.size(); ++i) {
      if (step[i] < minStep) continue;
      active = true;
      const Vec3 p = c[i];
      const Vec3 radial = p / g.radius;
      Vec3 toward = pole / g.radius - radial.dot(pole / g.radius) * radial;
      if (toward.norm() < 1e-15) {
        step[i] = 0.0;
        continue;
      }
      Vec3 q = project_to_cap(g, p + step[i] * toward.normalized());

      std::size_t blocker = c.size();
      std::size_t blockers = 0;
      for (std::size_t j = 0; j < c.size(); ++j) {
        if (j != i && (q - c[j]).norm() < target) {
          blocker = j;
          ++blockers;
        }
      }
      bool ok = blockers <= 1;
      if (ok && blockers == 1) {
        const auto slid = onto_contact_circle(g, c[blocker], q, target);
        ok = slid.has_value();
        if (ok) q = *slid;
      }
      ok = ok && planar_sq(q) < planar_sq(p) && admissible(i, q);
      if (ok) {
        c[i] = q;
        step[i] = std::min(maxStep, step[i] * 1.5);
      } else {
        step[i] *= 0.5;
      }
    }
    if (!active) break;
  }
}

}  // namespace

void CandidateRayParams::validate() const {
  if (!(standoff > 0.0)) throw Error(ErrorCode::kInvalidArgument, "r_s must be positive");
  if (!(nozzleRadius > 0.0)) throw Error(ErrorCode::kInvalidArgument, "r_c must be positive");
  if (!(capAngle > 0.0 && capAngle <= kPi / 2.0)) {
    throw Error(ErrorCode::kInvalidArgument, "cap angle must lie in (0, pi/2]");
  }
  if (count && *count == 0) throw Error(ErrorCode::kInvalidArgument, "N_c must be positive");
}

double CandidateRayParams::separation() const {
  return 2.0 * nozzleRadius * std::cos(std::atan(nozzleRadius / standoff));
}

double CandidateRayParams::cap_area() const {
  return 2.0 * kPi * standoff * standoff * (1.0 - std::cos(capAngle));
}

std::size_t CandidateRayParams::auto_count() const {
  const double half = 0.5 * separation();
  const double n = std::floor(0.5 * cap_area() / (kPi * half * half));
  return std::max<std::size_t>(1, static_cast<std::size_t>(n));
}

double packing_objective(std::span<const Vec3> centers) {
  double s = 0.0;
  for (const auto& c : centers) s += planar_sq(c);
  return s;
}

CandidateRaySet candidate_ray_set(const CandidateRayParams& params) {
  params.validate();
  CandidateRaySet set;
  set.params = params;
  const std::size_t n = params.resolved_count();
  const double l = params.separation();
  const double disk = kPi * 0.25 * l * l;
  if (n * disk > 1.1 * params.cap_area()) {
    const auto maxFeasible = static_cast<std::size_t>(1.1 * params.cap_area() / disk);
    throw Error(ErrorCode::kInfeasiblePacking,
                std::to_string(n) + " candidates cannot fit in the cap (at most " +
                    std::to_string(maxFeasible) + ")");
  }
  const CapGeometry g{params.standoff, std::cos(params.capAngle), std::sin(params.capAngle), l};
  std::vector<Vec3> c = ring_initialization(g, n);
  std::size_t iterations = 0;
  if (!repel(g, c, iterations)) {
    throw Error(ErrorCode::kInfeasiblePacking,
                "no separated packing of " + std::to_string(n) + " candidates found");
  }
  descend(g, c, iterations);
  const Vec3 pole = c[0];
  std::stable_sort(c.begin() + 1, c.end(), [&](const Vec3& a, const Vec3& b) {
    return (a - pole).norm() < (b - pole).norm();
  });
  set.centers = std::move(c);
  set.objective = packing_objective(set.centers);
  set.iterations = iterations;
  return set;
}

Ray make_viewpoint(const Vec3& generator, const Vec3& proxyNormal, double standoff) {
  return {generator + standoff * proxyNormal, -proxyNormal};
}

std::vector<Vec3> align_candidates(const Ray& ray, const CandidateRaySet& set) {
  const Vec3 n = -ray.direction;
  const Vec3 waypoint = ray.at(set.params.standoff);
  const double phiY = std::acos(std::clamp(n.z(), -1.0, 1.0));
  const double phiZ = std::atan2(n.y(), n.x());
  const Eigen::Matrix3d rot = (Eigen::AngleAxisd(phiZ, Vec3::UnitZ()) *
                               Eigen::AngleAxisd(phiY, Vec3::UnitY()))
                                  .toRotationMatrix();
  std::vector<Vec3> out;
  out.reserve(set.centers.size());
  for (const auto& c : set.centers) out.push_back(waypoint + rot * c);
  return out;
}

bool segment_clear(const TriangleMesh& mesh, const Vec3& waypoint, const Vec3& standoff,
                   double eps, std::span<const std::uint32_t> ignore) {
  const Vec3 diff = standoff - waypoint;
  const double len = diff.norm();
  if (len <= eps) return true;
  const Vec3 u = diff / len;
  const Ray probe{waypoint + eps * u, u};
  return !ray_intersect(mesh, probe, ignore, len - eps).has_value();
}

double elevation_angle(const Ray& ray, const Vec3& up) {
  return angle_between(-ray.direction, up);
}

double occlusion_epsilon(const TriangleMesh& mesh) { return 1e-6 * bbox_diagonal(mesh); }

DefaultValidityOracle::DefaultValidityOracle(const TriangleMesh* part,
                                             std::vector<const TriangleMesh*> environment,
                                             double standoff, Vec3 up)
    : part_(part),
      environment_(std::move(environment)),
      standoff_(standoff),
      up_(up.normalized()),
      eps_(part ? occlusion_epsilon(*part) : 0.0) {}

bool DefaultValidityOracle::is_valid(const Ray& ray, double thetaR) const {
  if (elevation_angle(ray, up_) > thetaR) return false;
  const Vec3 waypoint = ray.at(standoff_);
  if (part_ && !segment_clear(*part_, waypoint, ray.origin, eps_)) return false;
  for (const auto* env : environment_) {
    if (!segment_clear(*env, waypoint, ray.origin, eps_)) return false;
  }
  return true;
}

std::vector<ViewRay> viewpoint_rays(const Tessellation& tessellation,
                                    std::span<const std::uint32_t> order, double standoff) {
  std::vector<ViewRay> rays;
  rays.reserve(order.size());
  for (auto c : order) {
    const auto& cl = tessellation.clusters.at(c);
    rays.push_back({make_viewpoint(cl.generator, cl.proxyNormal, standoff), cl.generatorFace});
  }
  return rays;
}

std::optional<Ray> get_free_ray(const ViewRay& view, const CandidateRaySet& set,
                                const TriangleMesh& mesh, const ValidityOracle& oracle,
                                double thetaR) {
  const Vec3 waypoint = view.ray.at(set.params.standoff);
  const double eps = occlusion_epsilon(mesh);
  const std::uint32_t own[] = {view.face};
  for (const auto& o : align_candidates(view.ray, set)) {
    const Ray r{o, (waypoint - o).normalized()};
    if (segment_clear(mesh, waypoint, o, eps, own) && oracle.is_valid(r, thetaR)) return r;
  }
  return std::nullopt;
}

std::vector<double> roll_angles(std::size_t count) {
  std::vector<double> a(count);
  for (std::size_t i = 0; i < count; ++i) a[i] = 2.0 * kPi * static_cast<double>(i) / count;
  return a;
}

std::string to_string(WaypointStatus status) {
  switch (status) {
    case WaypointStatus::kAccepted: return "accepted";
    case WaypointStatus::kCorrected: return "corrected";
    case WaypointStatus::kUnrecoverable: return "unrecoverable";
  }
  return "unknown";
}

ViewpointPlan plan_valid_configs(std::span<const ViewRay> rays, const CandidateRaySet& set,
                                 const TriangleMesh& mesh, const ValidityOracle& oracle,
                                 double thetaR, std::size_t rollCount) {
  if (rollCount == 0) throw Error(ErrorCode::kInvalidArgument, "roll count must be positive");
  ViewpointPlan plan;
  plan.waypoints.resize(rays.size());
  const auto rolls = roll_angles(rollCount);
  const double eps = occlusion_epsilon(mesh);
  parallel_for(rays.size(), [&](std::size_t w) {
    const ViewRay& view = rays[w];
    WaypointPlan& wp = plan.waypoints[w];
    wp.original = view.ray;
    wp.face = view.face;
    const Vec3 waypoint = view.ray.at(set.params.standoff);
    const std::uint32_t own[] = {view.face};
    if (segment_clear(mesh, waypoint, view.ray.origin, eps, own) &&
        oracle.is_valid(view.ray, thetaR)) {
      wp.status = WaypointStatus::kAccepted;
      wp.final = view.ray;
    } else if (auto r = get_free_ray(view, set, mesh, oracle, thetaR)) {
      wp.status = WaypointStatus::kCorrected;
      wp.final = *r;
    } else {
      wp.status = WaypointStatus::kUnrecoverable;
      return;
    }
    for (double roll : rolls) {
      wp.candidates.push_back({*wp.final, roll, static_cast<std::uint32_t>(w)});
    }
  });
  for (const auto& wp : plan.waypoints) {
    switch (wp.status) {
      case WaypointStatus::kAccepted: ++plan.accepted; break;
      case WaypointStatus::kCorrected: ++plan.corrected; break;
      case WaypointStatus::kUnrecoverable: ++plan.unrecoverable; break;
    }
  }
  return plan;
}

double ConfigMetric::operator()(const PoseCandidate& a, const PoseCandidate& b) const {
  double roll = std::fmod(std::abs(a.rollAngle - b.rollAngle), 2.0 * kPi);
  roll = std::min(roll, 2.0 * kPi - roll);
  return (a.ray.origin - b.ray.origin).norm() +
         angleWeight * angle_between(a.ray.direction, b.ray.direction) + rollWeight * roll;
}

LayeredPath layered_shortest_path(
    std::span<const std::size_t> layerSizes,
    const std::function<double(std::size_t, std::size_t, std::size_t)>& edge) {
  LayeredPath out;
  if (layerSizes.empty()) return out;
  for (std::size_t k = 0; k < layerSizes.size(); ++k) {
    if (layerSizes[k] == 0) {
      throw Error(ErrorCode::kEmptyLayer, "layer " + std::to_string(k) + " has no candidates");
    }
  }
  std::vector<std::vector<double>> dist(layerSizes.size());
  std::vector<std::vector<std::size_t>> prev(layerSizes.size());
  dist[0].assign(layerSizes[0], 0.0);
  for (std::size_t k = 1; k < layerSizes.size(); ++k) {
    dist[k].assign(layerSizes[k], std::numeric_limits<double>::infinity());
    prev[k].assign(layerSizes[k], 0);
    for (std::size_t j = 0; j < layerSizes[k]; ++j) {
      for (std::size_t i = 0; i < layerSizes[k - 1]; ++i) {
        const double v = dist[k - 1][i] + edge(k - 1, i, j);
        if (v < dist[k][j]) {
          dist[k][j] = v;
          prev[k][j] = i;
        }
      }
    }
  }
  const auto& last = dist.back();
  std::size_t best = static_cast<std::size_t>(std::min_element(last.begin(), last.end()) -
                                              last.begin());
  out.cost = last[best];
  out.selection.assign(layerSizes.size(), 0);
  for (std::size_t k = layerSizes.size(); k-- > 0;) {
    out.selection[k] = best;
    if (k > 0) best = prev[k][best];
  }
  return out;
}

ConfigTour optimal_config_tour(std::span<const std::vector<PoseCandidate>> layers,
                               const ConfigMetric& metric) {
  std::vector<std::size_t> sizes;
  sizes.reserve(layers.size());
  for (const auto& l : layers) sizes.push_back(l.size());
  const LayeredPath path = layered_shortest_path(
      sizes, [&](std::size_t k, std::size_t i, std::size_t j) {
        return metric(layers[k][i], layers[k + 1][j]);
      });
  ConfigTour tour;
  tour.selection = path.selection;
  tour.cost = path.cost;
  for (std::size_t k = 0; k < layers.size(); ++k) tour.poses.push_back(layers[k][path.selection[k]]);
  return tour;
}

}  // namespace surfcover
