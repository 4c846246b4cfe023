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
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "surfcover/ccvt.hpp"
#include "surfcover/geometry.hpp"
#include "surfcover/mesh.hpp"

namespace surfcover {

/// A point lying on a mesh face.
struct SurfacePoint {
  std::uint32_t face = 0;
  Vec3 point = Vec3::Zero();
};

struct GeodesicPath {
  double cost = 0.0;
  std::vector<Vec3> polyline;
};

/// Shortest paths restricted to a set of faces of a parent mesh.
class GeodesicSolver {
 public:
  virtual ~GeodesicSolver() = default;

  /// Empty when no path exists inside the face set.
  virtual std::optional<GeodesicPath> shortest_path(const SurfacePoint& source,
                                                    const SurfacePoint& target) const = 0;

  /// Distance from `source` to the centroid of every face in faces(), in the
  /// same order. Values above `bound` are only known to exceed it and may be
  /// reported as +inf.
  virtual std::vector<double> centroid_distances(const SurfacePoint& source,
                                                 double bound) const = 0;

  /// Parent face indices covered by this solver, ascending.
  virtual std::span<const std::uint32_t> faces() const = 0;
};

enum class GeodesicBackend { kSteiner };

struct GeodesicOptions {
  GeodesicBackend backend = GeodesicBackend::kSteiner;
  unsigned steinerPoints = 3;  // per mesh edge
};

/// Vertex/Steiner-node graph: every mesh edge carries `k` evenly spaced
/// nodes. All boundary nodes of a face are pairwise connected by straight
/// segments across that face, and nodes of two faces sharing an edge are
/// connected by the straight line of the unfolded face pair when it crosses
/// the shared edge. Face centroids are nodes too, linked the same way plus
/// across strips of three faces, so distances between centroids obey the
/// triangle inequality. Weights depend only on the parent mesh, so the graph
/// of a face subset is a subgraph of the full-mesh graph.
class SteinerGraph final : public GeodesicSolver {
 public:
  SteinerGraph(const TriangleMesh& mesh, std::vector<std::uint32_t> faces,
               unsigned pointsPerEdge);

  std::optional<GeodesicPath> shortest_path(const SurfacePoint& source,
                                            const SurfacePoint& target) const override;
  std::vector<double> centroid_distances(const SurfacePoint& source,
                                         double bound) const override;
  std::span<const std::uint32_t> faces() const override { return faces_; }

  std::size_t nodeCount() const { return positions_.size(); }
  std::size_t arcCount() const { return targets_.size(); }

 private:
  static constexpr std::uint32_t kStrip = 1u << 31;  // via flag: index into strips_

  // Arc from the centroid of a face to the centroid of a face two steps away,
  // unfolded across both edges of the middle face.
  struct Strip {
    std::uint32_t mid;
    std::uint8_t edgeA;
    std::uint8_t edgeB;
    std::uint32_t from;  // centroid node on the edgeA side
  };

  std::uint32_t local_face(std::uint32_t parentFace) const;
  std::span<const std::uint32_t> face_nodes(std::uint32_t localFace) const {
    return {faceNodes_.data() + std::size_t(localFace) * stride_, stride_};
  }
  std::uint32_t centroid_node(std::uint32_t localFace) const {
    return centroidBase_ + localFace;
  }
  /// Calls visit(node, cost, edge) for every graph node reachable from a point
  /// on `localFace` by a straight or once-unfolded segment.
  template <typename Visit>
  void for_each_link(std::uint32_t localFace, const Vec3& point, Visit&& visit) const;
  /// Straight segment between two points on the same face, on edge-adjacent
  /// faces, or on faces joined by one middle face. Crossing points go to `via`.
  double direct(std::uint32_t faceA, const Vec3& a, std::uint32_t faceB, const Vec3& b,
                std::vector<Vec3>* via = nullptr) const;
  double unfold_strip(std::uint32_t mid, int edgeA, int edgeB, const Vec3& a, const Vec3& b,
                      std::vector<Vec3>* via) const;
  Vec3 crossing(std::uint32_t localEdge, const Vec3& a, const Vec3& b) const;
  /// Appends the crossing points of an arc traversed from `from` to `to`.
  void append_via(std::uint32_t via, std::uint32_t fromNode, const Vec3& from, const Vec3& to,
                  std::vector<Vec3>& out) const;

  const TriangleMesh* mesh_;
  std::vector<std::uint32_t> faces_;
  std::size_t stride_;
  std::vector<Vec3> positions_;  // vertices, Steiner points, face centroids
  std::uint32_t centroidBase_ = 0;
  std::vector<std::uint32_t> faceNodes_;
  std::vector<std::array<std::uint32_t, 3>> localEdges_;
  std::vector<std::uint32_t> parentEdges_;   // local edge -> parent edge
  std::vector<std::size_t> edgeFaceOffsets_;  // local edge -> (local face, corner)
  std::vector<std::pair<std::uint32_t, std::uint8_t>> edgeFaces_;
  std::vector<std::uint8_t> nodeEdgeMask_;    // per face slot
  std::vector<Strip> strips_;
  std::vector<std::size_t> offsets_;
  std::vector<std::uint32_t> targets_;
  std::vector<double> weights_;
  std::vector<std::uint32_t> viaEdge_;  // kNone, a local edge, or kStrip | strip index
};

std::unique_ptr<GeodesicSolver> make_geodesic_solver(
    const TriangleMesh& mesh, std::vector<std::uint32_t> faces,
    const GeodesicOptions& options);

/// Every face index of the mesh.
std::vector<std::uint32_t> all_faces(const TriangleMesh& mesh);

double polyline_length(std::span<const Vec3> polyline);

/// Faces of a cluster and of all edge-adjacent clusters.
struct Submesh {
  std::vector<std::uint32_t> faces;     // parent indices, ascending
  std::vector<std::uint32_t> clusters;  // the cluster itself first, then neighbors
};

Submesh cluster_submesh(const Tessellation& tessellation,
                        std::span<const std::vector<std::uint32_t>> clusterAdjacency,
                        std::uint32_t cluster);
Submesh cluster_submesh(const TriangleMesh& mesh, const Tessellation& tessellation,
                        std::uint32_t cluster);

/// Standalone mesh over a face subset; vertexMap[local] = parent vertex.
TriangleMesh extract_mesh(const TriangleMesh& mesh, std::span<const std::uint32_t> faces,
                          std::vector<std::uint32_t>* vertexMap = nullptr);

/// Throws Disconnected when the solver's face set holds no path.
GeodesicPath geodesic_between(const GeodesicSolver& solver, const SurfacePoint& source,
                              const SurfacePoint& target);

/// Weighted graph over cluster generators. Edge paths run from the lower to
/// the higher node index.
struct GeneratorGraph {
  struct Node {
    std::uint32_t cluster = 0;
    std::uint32_t face = 0;
    Vec3 point = Vec3::Zero();
  };
  struct Edge {
    double cost = 0.0;
    std::vector<Vec3> path;
    bool derived = false;  // filled in by graph completion
  };
  using Key = std::pair<std::uint32_t, std::uint32_t>;

  std::vector<Node> nodes;
  std::map<Key, Edge> edges;
  double avgNeighbors = 0.0;
  std::vector<std::string> warnings;

  static Key key(std::uint32_t i, std::uint32_t j) {
    return i < j ? Key{i, j} : Key{j, i};
  }
  const Edge* find(std::uint32_t i, std::uint32_t j) const;
  bool is_complete() const;
  /// Edge path oriented from node i to node j; throws MissingEdgePath.
  std::vector<Vec3> path(std::uint32_t i, std::uint32_t j) const;
  /// Edge cost; throws IncompleteGraph when the edge is absent.
  double cost(std::uint32_t i, std::uint32_t j) const;
};

GeneratorGraph make_generator_nodes(const Tessellation& tessellation);

/// One geodesic per adjacent cluster pair, each computed once on the
/// submesh of the lower-indexed cluster. Disconnected pairs are omitted and
/// recorded in `warnings`.
GeneratorGraph adjacent_generator_distances(const TriangleMesh& mesh,
                                            const Tessellation& tessellation,
                                            const GeodesicOptions& options);

/// Fills every missing edge with the shortest path over the generator graph
/// and the concatenation of its edge paths. Existing edges are untouched.
/// Throws DisconnectedGraph.
GeneratorGraph complete_generator_graph(GeneratorGraph partial);

/// Geodesic on the whole mesh; reference for the decomposed computation.
double full_mesh_geodesic_oracle(const TriangleMesh& mesh, const SurfacePoint& source,
                                 const SurfacePoint& target,
                                 const GeodesicOptions& options);

/// Pairwise full-mesh geodesics between all generators (one query per
/// unordered pair). Entry [i][j] is +inf when disconnected.
std::vector<std::vector<double>> full_mesh_all_pairs(const TriangleMesh& mesh,
                                                     const Tessellation& tessellation,
                                                     const GeodesicOptions& options);

}  // namespace surfcover
