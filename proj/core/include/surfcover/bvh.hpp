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
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "surfcover/geometry.hpp"
#include "surfcover/mesh.hpp"

namespace surfcover {

/// Bounding volume hierarchy over the faces of a mesh. Box tests are padded
/// so traversal never prunes a triangle the exhaustive test would hit.
class Bvh {
 public:
  Bvh(const std::vector<Vec3>& vertices,
      const std::vector<TriangleMesh::Face>& faces);

  std::optional<RayHit> closest_hit(const std::vector<Vec3>& vertices,
                                    const std::vector<TriangleMesh::Face>& faces,
                                    const Ray& ray,
                                    std::span<const std::uint32_t> ignore,
                                    double maxDistance) const;

  std::size_t nodeCount() const { return nodes_.size(); }

 private:
  struct Node {
    Eigen::Vector3d lo;
    Eigen::Vector3d hi;
    std::uint32_t first = 0;  // leaf: first primitive; inner: left child
    std::uint32_t count = 0;  // leaf primitive count; 0 for inner nodes
    std::uint32_t right = 0;
  };

  std::uint32_t build(std::uint32_t begin, std::uint32_t end,
                      const std::vector<Vec3>& centroids,
                      const std::vector<Eigen::Vector3d>& faceLo,
                      const std::vector<Eigen::Vector3d>& faceHi);

  std::vector<Node> nodes_;
  std::vector<std::uint32_t> order_;
};

}  // namespace surfcover
