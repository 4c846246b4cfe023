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

#include <array>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "surfcover/geometry.hpp"

namespace surfcover {

class Bvh;

/// Outcome of validating raw mesh data.
struct MeshReport {
  std::vector<std::size_t> droppedFaces;  // input face indices
  std::size_t nonManifoldEdges = 0;
  std::size_t boundaryEdges = 0;
  std::vector<std::string> warnings;
};

/// Indexed triangle mesh with per-face geometry, face adjacency and a ray
/// acceleration structure. Immutable once built; safe for concurrent reads.
class TriangleMesh {
 public:
  using Face = std::array<std::uint32_t, 3>;
  using Edge = std::array<std::uint32_t, 2>;

  static constexpr double kMinFaceArea = 1e-12;

  /// Validates and indexes raw data. Faces with area <= kMinFaceArea are
  /// dropped and listed in `report`. Throws EmptyMesh when nothing remains
  /// and InvalidArgument on out-of-range vertex indices.
  static TriangleMesh build(std::vector<Vec3> vertices, std::vector<Face> faces,
                            MeshReport* report = nullptr);

  TriangleMesh() = default;

  std::size_t vertexCount() const { return vertices_.size(); }
  std::size_t faceCount() const { return faces_.size(); }
  std::size_t edgeCount() const { return edges_.size(); }

  const std::vector<Vec3>& vertices() const { return vertices_; }
  const std::vector<Face>& faces() const { return faces_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<double>& faceAreas() const { return areas_; }
  const std::vector<Vec3>& faceCentroids() const { return centroids_; }
  const std::vector<Vec3>& faceNormals() const { return normals_; }

  /// Edge ids of face f; edge k joins corners k and (k+1)%3.
  const std::array<std::uint32_t, 3>& faceEdges(std::uint32_t f) const {
    return faceEdges_[f];
  }
  /// Faces sharing an edge with f, ascending.
  std::span<const std::uint32_t> adjacentFaces(std::uint32_t f) const {
    return {adjacency_.data() + adjacencyOffsets_[f],
            adjacencyOffsets_[f + 1] - adjacencyOffsets_[f]};
  }

  double totalArea() const { return totalArea_; }
  const Vec3& bboxMin() const { return bboxMin_; }
  const Vec3& bboxMax() const { return bboxMax_; }

  bool isManifold() const { return nonManifoldEdges_ == 0; }
  /// Manifold with every edge shared by exactly two faces.
  bool isClosed() const { return isManifold() && boundaryEdges_ == 0; }

  const Bvh& bvh() const { return *bvh_; }

 private:
  std::vector<Vec3> vertices_;
  std::vector<Face> faces_;
  std::vector<Edge> edges_;
  std::vector<std::array<std::uint32_t, 3>> faceEdges_;
  std::vector<double> areas_;
  std::vector<Vec3> centroids_;
  std::vector<Vec3> normals_;
  std::vector<std::size_t> adjacencyOffsets_{0};
  std::vector<std::uint32_t> adjacency_;
  double totalArea_ = 0.0;
  Vec3 bboxMin_ = Vec3::Zero();
  Vec3 bboxMax_ = Vec3::Zero();
  std::size_t nonManifoldEdges_ = 0;
  std::size_t boundaryEdges_ = 0;
  std::shared_ptr<const Bvh> bvh_;
};

/// Length of the axis-aligned bounding-box diagonal.
double bbox_diagonal(const TriangleMesh& mesh);

struct RayHit {
  std::uint32_t face = 0;
  double distance = 0.0;
};

/// Nearest intersection with a face not listed in `ignore` and closer than
/// `maxDistance`. Ties in distance resolve to the lowest face index.
std::optional<RayHit> ray_intersect(
    const TriangleMesh& mesh, const Ray& ray,
    std::span<const std::uint32_t> ignore = {},
    double maxDistance = std::numeric_limits<double>::infinity());

/// Two-sided Moller-Trumbore test. Returns the ray parameter of a hit with
/// t > 0, if any.
std::optional<double> intersect_triangle(const Vec3& a, const Vec3& b,
                                         const Vec3& c, const Ray& ray);

}  // namespace surfcover
