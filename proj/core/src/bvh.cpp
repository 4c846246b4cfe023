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

#include "surfcover/bvh.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace surfcover {

namespace {

constexpr std::uint32_t kLeafSize = 4;

// Slab test; returns entry distance or +inf on a miss.
double slab_entry(const Eigen::Vector3d& lo, const Eigen::Vector3d& hi,
                  const Ray& ray, const Eigen::Vector3d& inv, double tMax) {
  double t0 = 0.0;
  double t1 = tMax;
  for (int k = 0; k < 3; ++k) {
    if (ray.direction[k] == 0.0) {
      if (ray.origin[k] < lo[k] || ray.origin[k] > hi[k]) {
        return std::numeric_limits<double>::infinity();
      }
      continue;
    }
    double a = (lo[k] - ray.origin[k]) * inv[k];
    double b = (hi[k] - ray.origin[k]) * inv[k];
    if (a > b) std::swap(a, b);
    t0 = std::max(t0, a);
    t1 = std::min(t1, b);
    if (t0 > t1) return std::numeric_limits<double>::infinity();
  }
  return t0;
}

}  // namespace

Bvh::Bvh(const std::vector<Vec3>& vertices,
         const std::vector<TriangleMesh::Face>& faces) {
  const auto n = static_cast<std::uint32_t>(faces.size());
  std::vector<Vec3> centroids(n);
  std::vector<Eigen::Vector3d> faceLo(n), faceHi(n);
  for (std::uint32_t f = 0; f < n; ++f) {
    const Vec3& a = vertices[faces[f][0]];
    const Vec3& b = vertices[faces[f][1]];
    const Vec3& c = vertices[faces[f][2]];
    centroids[f] = (a + b + c) / 3.0;
    faceLo[f] = a.cwiseMin(b).cwiseMin(c);
    faceHi[f] = a.cwiseMax(b).cwiseMax(c);
    // Pad so rounding in the slab test cannot reject a true hit.
    const double pad =
        1e-9 * (1.0 + (faceHi[f] - faceLo[f]).cwiseAbs().maxCoeff() +
                faceHi[f].cwiseAbs().maxCoeff());
    faceLo[f].array() -= pad;
    faceHi[f].array() += pad;
  }
  order_.resize(n);
  std::iota(order_.begin(), order_.end(), 0u);
  nodes_.reserve(2 * (n / kLeafSize + 1));
  if (n > 0) build(0, n, centroids, faceLo, faceHi);
}

std::uint32_t Bvh::build(std::uint32_t begin, std::uint32_t end,
                         const std::vector<Vec3>& centroids,
                         const std::vector<Eigen::Vector3d>& faceLo,
                         const std::vector<Eigen::Vector3d>& faceHi) {
  const auto index = static_cast<std::uint32_t>(nodes_.size());
  nodes_.emplace_back();
  Eigen::Vector3d lo = Eigen::Vector3d::Constant(
      std::numeric_limits<double>::infinity());
  Eigen::Vector3d hi = -lo;
  Eigen::Vector3d clo = lo, chi = hi;
  for (std::uint32_t i = begin; i < end; ++i) {
    const std::uint32_t f = order_[i];
    lo = lo.cwiseMin(faceLo[f]);
    hi = hi.cwiseMax(faceHi[f]);
    clo = clo.cwiseMin(centroids[f]);
    chi = chi.cwiseMax(centroids[f]);
  }
  nodes_[index].lo = lo;
  nodes_[index].hi = hi;
  if (end - begin <= kLeafSize) {
    nodes_[index].first = begin;
    nodes_[index].count = end - begin;
    return index;
  }
  int axis = 0;
  (chi - clo).maxCoeff(&axis);
  const std::uint32_t mid = begin + (end - begin) / 2;
  std::nth_element(order_.begin() + begin, order_.begin() + mid,
                   order_.begin() + end, [&](std::uint32_t a, std::uint32_t b) {
                     if (centroids[a][axis] != centroids[b][axis]) {
                       return centroids[a][axis] < centroids[b][axis];
                     }
                     return a < b;
                   });
  const std::uint32_t left = build(begin, mid, centroids, faceLo, faceHi);
  const std::uint32_t right = build(mid, end, centroids, faceLo, faceHi);
  nodes_[index].first = left;
  nodes_[index].right = right;
  nodes_[index].count = 0;
  return index;
}

std::optional<RayHit> Bvh::closest_hit(
    const std::vector<Vec3>& vertices,
    const std::vector<TriangleMesh::Face>& faces, const Ray& ray,
    std::span<const std::uint32_t> ignore, double maxDistance) const {
  if (nodes_.empty()) return std::nullopt;
  const Eigen::Vector3d inv = ray.direction.cwiseInverse();
  std::optional<RayHit> best;
  // Box pruning uses a slightly inflated bound so ties with the current best
  // (resolved by face index) are still visited.
  auto bound = [&] {
    const double t = best ? best->distance : maxDistance;
    return std::isinf(t) ? t : t * (1.0 + 1e-12) + 1e-300;
  };
  std::uint32_t stack[128];
  int top = 0;
  stack[top++] = 0;
  while (top > 0) {
    const Node& node = nodes_[stack[--top]];
    if (std::isinf(slab_entry(node.lo, node.hi, ray, inv, bound()))) continue;
    if (node.count > 0) {
      for (std::uint32_t i = node.first; i < node.first + node.count; ++i) {
        const std::uint32_t f = order_[i];
        if (std::find(ignore.begin(), ignore.end(), f) != ignore.end()) continue;
        const auto t = intersect_triangle(vertices[faces[f][0]],
                                          vertices[faces[f][1]],
                                          vertices[faces[f][2]], ray);
        if (!t || !(*t < maxDistance)) continue;
        if (!best || *t < best->distance ||
            (*t == best->distance && f < best->face)) {
          best = RayHit{f, *t};
        }
      }
      continue;
    }
    stack[top++] = node.first;
    stack[top++] = node.right;
  }
  return best;
}

}  // namespace surfcover
