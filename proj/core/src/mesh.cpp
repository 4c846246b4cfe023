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

#include "surfcover/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "surfcover/bvh.hpp"
#include "surfcover/error.hpp"

namespace surfcover {

namespace {

std::uint64_t edge_key(std::uint32_t a, std::uint32_t b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

}  // namespace

TriangleMesh TriangleMesh::build(std::vector<Vec3> vertices,
                                 std::vector<Face> faces, MeshReport* report) {
  MeshReport local;
  MeshReport& rep = report ? *report : local;
  rep = MeshReport{};

  TriangleMesh mesh;
  mesh.vertices_ = std::move(vertices);
  const auto nv = static_cast<std::uint32_t>(mesh.vertices_.size());

  mesh.faces_.reserve(faces.size());
  for (std::size_t i = 0; i < faces.size(); ++i) {
    const Face& f = faces[i];
    for (std::uint32_t v : f) {
      if (v >= nv) {
        throw Error(ErrorCode::kInvalidArgument,
                    "face " + std::to_string(i) + " references vertex " +
                        std::to_string(v) + " of " + std::to_string(nv));
      }
    }
    const Vec3& a = mesh.vertices_[f[0]];
    const Vec3& b = mesh.vertices_[f[1]];
    const Vec3& c = mesh.vertices_[f[2]];
    const Vec3 cross = (b - a).cross(c - a);
    const double area = 0.5 * cross.norm();
    if (!(area > kMinFaceArea)) {
      rep.droppedFaces.push_back(i);
      continue;
    }
    mesh.faces_.push_back(f);
    mesh.areas_.push_back(area);
    mesh.centroids_.push_back((a + b + c) / 3.0);
    mesh.normals_.push_back(cross / cross.norm());
  }
  if (!rep.droppedFaces.empty()) {
    rep.warnings.push_back("dropped " + std::to_string(rep.droppedFaces.size()) +
                           " degenerate face(s)");
  }
  if (mesh.faces_.empty()) {
    throw Error(ErrorCode::kEmptyMesh, "no non-degenerate faces");
  }

  const auto nf = static_cast<std::uint32_t>(mesh.faces_.size());

  // Edge table in first-seen order.
  std::unordered_map<std::uint64_t, std::uint32_t> edgeIds;
  edgeIds.reserve(nf * 2);
  std::vector<std::vector<std::uint32_t>> edgeFaces;
  mesh.faceEdges_.resize(nf);
  for (std::uint32_t f = 0; f < nf; ++f) {
    for (int k = 0; k < 3; ++k) {
      const std::uint32_t a = mesh.faces_[f][k];
      const std::uint32_t b = mesh.faces_[f][(k + 1) % 3];
      auto [it, inserted] = edgeIds.try_emplace(
          edge_key(a, b), static_cast<std::uint32_t>(mesh.edges_.size()));
      if (inserted) {
        mesh.edges_.push_back({std::min(a, b), std::max(a, b)});
        edgeFaces.emplace_back();
      }
      mesh.faceEdges_[f][k] = it->second;
      edgeFaces[it->second].push_back(f);
    }
  }

  std::vector<std::vector<std::uint32_t>> adjacency(nf);
  for (const auto& shared : edgeFaces) {
    if (shared.size() == 1) ++mesh.boundaryEdges_;
    if (shared.size() > 2) ++mesh.nonManifoldEdges_;
    for (std::uint32_t f : shared) {
      for (std::uint32_t g : shared) {
        if (f != g) adjacency[f].push_back(g);
      }
    }
  }
  for (std::uint32_t f = 0; f < nf; ++f) {
    auto& adj = adjacency[f];
    std::sort(adj.begin(), adj.end());
    adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
    mesh.adjacency_.insert(mesh.adjacency_.end(), adj.begin(), adj.end());
    mesh.adjacencyOffsets_.push_back(mesh.adjacency_.size());
  }
  rep.nonManifoldEdges = mesh.nonManifoldEdges_;
  rep.boundaryEdges = mesh.boundaryEdges_;
  if (mesh.nonManifoldEdges_ > 0) {
    rep.warnings.push_back("NonManifold: " +
                           std::to_string(mesh.nonManifoldEdges_) +
                           " edge(s) shared by more than two faces");
  }

  // Sum in face order so the total is reproducible.
  for (double a : mesh.areas_) mesh.totalArea_ += a;

  mesh.bboxMin_ = Vec3::Constant(std::numeric_limits<double>::infinity());
  mesh.bboxMax_ = -mesh.bboxMin_;
  for (const Face& f : mesh.faces_) {
    for (std::uint32_t v : f) {
      mesh.bboxMin_ = mesh.bboxMin_.cwiseMin(mesh.vertices_[v]);
      mesh.bboxMax_ = mesh.bboxMax_.cwiseMax(mesh.vertices_[v]);
    }
  }

  mesh.bvh_ = std::make_shared<const Bvh>(mesh.vertices_, mesh.faces_);
  return mesh;
}

double bbox_diagonal(const TriangleMesh& mesh) {
  return (mesh.bboxMax() - mesh.bboxMin()).norm();
}

std::optional<double> intersect_triangle(const Vec3& a, const Vec3& b,
                                         const Vec3& c, const Ray& ray) {
  const Vec3 e1 = b - a;
  const Vec3 e2 = c - a;
  const Vec3 p = ray.direction.cross(e2);
  const double det = e1.dot(p);
  if (det == 0.0) return std::nullopt;
  const double inv = 1.0 / det;
  const Vec3 s = ray.origin - a;
  const double u = s.dot(p) * inv;
  if (u < 0.0 || u > 1.0) return std::nullopt;
  const Vec3 q = s.cross(e1);
  const double v = ray.direction.dot(q) * inv;
  if (v < 0.0 || u + v > 1.0) return std::nullopt;
  const double t = e2.dot(q) * inv;
  if (!(t > 0.0)) return std::nullopt;
  return t;
}

std::optional<RayHit> ray_intersect(const TriangleMesh& mesh, const Ray& ray,
                                    std::span<const std::uint32_t> ignore,
                                    double maxDistance) {
  return mesh.bvh().closest_hit(mesh.vertices(), mesh.faces(), ray, ignore,
                                maxDistance);
}

}  // namespace surfcover
