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

#include "surfcover/geodesic.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>

#include "surfcover/error.hpp"
#include "surfcover/parallel.hpp"

namespace surfcover {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

using QueueItem = std::pair<double, std::uint32_t>;
using MinQueue =
    std::priority_queue<QueueItem, std::vector<QueueItem>, std::greater<QueueItem>>;

std::uint32_t index_of(std::span<const std::uint32_t> sorted, std::uint32_t value) {
  const auto it = std::lower_bound(sorted.begin(), sorted.end(), value);
  if (it == sorted.end() || *it != value) return kNone;
  return static_cast<std::uint32_t>(it - sorted.begin());
}

struct Unfolded {
  double length;
  double offset;  // crossing distance from the edge's first vertex
};

// Straight line between points on opposite sides of edge PQ after rotating
// one face into the plane of the other. Empty when the line misses PQ.
std::optional<Unfolded> unfold(const Vec3& p, const Vec3& q, const Vec3& a, const Vec3& b) {
  const Vec3 e = q - p;
  const double len = e.norm();
  const Vec3 t = e / len;
  const Vec3 da = a - p;
  const Vec3 db = b - p;
  const double sa = da.dot(t);
  const double sb = db.dot(t);
  const double ha = (da - sa * t).norm();
  const double hb = (db - sb * t).norm();
  const double tol = 1e-12 * len;
  if (ha <= tol || hb <= tol) return std::nullopt;
  const double s = sa + (sb - sa) * (ha / (ha + hb));
  if (s < 0.0 || s > len) return std::nullopt;
  return Unfolded{std::hypot(sb - sa, ha + hb), s};
}

}  // namespace

template <typename Visit>
void SteinerGraph::for_each_link(std::uint32_t localFace, const Vec3& point,
                                 Visit&& visit) const {
  for (auto u : face_nodes(localFace)) visit(u, (point - positions_[u]).norm(), kNone);
  const auto own = centroid_node(localFace);
  visit(own, (point - positions_[own]).norm(), kNone);
  for (int c = 0; c < 3; ++c) {
    const auto le = localEdges_[localFace][c];
    const auto& edge = mesh_->edges()[parentEdges_[le]];
    const Vec3& p = mesh_->vertices()[edge[0]];
    const Vec3& q = mesh_->vertices()[edge[1]];
    for (std::size_t i = edgeFaceOffsets_[le]; i < edgeFaceOffsets_[le + 1]; ++i) {
      const auto [fb, cb] = edgeFaces_[i];
      if (fb == localFace) continue;
      const auto nb = face_nodes(fb);
      for (std::size_t b = 0; b < stride_; ++b) {
        if (nodeEdgeMask_[b] & (1u << cb)) continue;
        const auto u = unfold(p, q, point, positions_[nb[b]]);
        if (u) visit(nb[b], u->length, le);
      }
      const auto u = unfold(p, q, point, positions_[centroid_node(fb)]);
      if (u) visit(centroid_node(fb), u->length, le);
    }
  }
}

SteinerGraph::SteinerGraph(const TriangleMesh& mesh, std::vector<std::uint32_t> faces,
                           unsigned pointsPerEdge)
    : mesh_(&mesh), faces_(std::move(faces)), stride_(3 + 3 * std::size_t(pointsPerEdge)) {
  std::sort(faces_.begin(), faces_.end());
  faces_.erase(std::unique(faces_.begin(), faces_.end()), faces_.end());
  const unsigned k = pointsPerEdge;

  std::vector<std::uint32_t> verts;
  auto& edges = parentEdges_;
  verts.reserve(faces_.size() * 3);
  edges.reserve(faces_.size() * 3);
  for (auto f : faces_) {
    if (f >= mesh.faceCount()) throw Error(ErrorCode::kInvalidArgument, "face out of range");
    for (int c = 0; c < 3; ++c) {
      verts.push_back(mesh.faces()[f][c]);
      edges.push_back(mesh.faceEdges(f)[c]);
    }
  }
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  const std::size_t nv = verts.size();
  const std::size_t nf = faces_.size();
  positions_.reserve(nv + edges.size() * k + nf);
  for (auto v : verts) positions_.push_back(mesh.vertices()[v]);
  for (auto e : edges) {
    const Vec3& a = mesh.vertices()[mesh.edges()[e][0]];
    const Vec3& b = mesh.vertices()[mesh.edges()[e][1]];
    for (unsigned s = 1; s <= k; ++s) {
      positions_.push_back(a + (b - a) * (double(s) / (k + 1)));
    }
  }
  centroidBase_ = static_cast<std::uint32_t>(positions_.size());
  for (auto f : faces_) positions_.push_back(mesh.faceCentroids()[f]);

  // Node lists per face with a bitmask of the face edges each node lies on.
  faceNodes_.resize(nf * stride_);
  auto& masks = nodeEdgeMask_;
  masks.assign(stride_, 0);
  for (int c = 0; c < 3; ++c) masks[c] = std::uint8_t((1u << c) | (1u << ((c + 2) % 3)));
  for (int c = 0; c < 3; ++c) {
    for (unsigned s = 0; s < k; ++s) masks[3 + c * k + s] = std::uint8_t(1u << c);
  }
  localEdges_.resize(nf);
  edgeFaceOffsets_.assign(edges.size() + 1, 0);
  for (std::size_t lf = 0; lf < nf; ++lf) {
    const auto f = faces_[lf];
    std::uint32_t* out = faceNodes_.data() + lf * stride_;
    for (int c = 0; c < 3; ++c) out[c] = index_of(verts, mesh.faces()[f][c]);
    for (int c = 0; c < 3; ++c) {
      const auto e = mesh.faceEdges(f)[c];
      const auto le = index_of(edges, e);
      localEdges_[lf][c] = le;
      ++edgeFaceOffsets_[le + 1];
      // Steiner order runs from the edge's lower parent vertex.
      const bool forward = mesh.faces()[f][c] == mesh.edges()[e][0];
      for (unsigned s = 0; s < k; ++s) {
        const unsigned slot = forward ? s : k - 1 - s;
        out[3 + c * k + s] = static_cast<std::uint32_t>(nv + std::size_t(le) * k + slot);
      }
    }
  }
  for (std::size_t i = 0; i < edges.size(); ++i) edgeFaceOffsets_[i + 1] += edgeFaceOffsets_[i];
  edgeFaces_.resize(edgeFaceOffsets_.back());
  {
    std::vector<std::size_t> cursor(edgeFaceOffsets_.begin(), edgeFaceOffsets_.end() - 1);
    for (std::size_t lf = 0; lf < nf; ++lf) {
      for (int c = 0; c < 3; ++c) {
        edgeFaces_[cursor[localEdges_[lf][c]]++] = {static_cast<std::uint32_t>(lf),
                                                    static_cast<std::uint8_t>(c)};
      }
    }
  }

  struct Arc {
    std::uint32_t u, v;
    double w;
    std::uint32_t via;
  };
  std::vector<Arc> arcs;
  arcs.reserve(nf * (stride_ * stride_ / 2 + 4 * stride_));

  // Within-face cliques; pairs on a shared edge come from its first face only.
  for (std::size_t lf = 0; lf < nf; ++lf) {
    const std::uint32_t* nodes = faceNodes_.data() + lf * stride_;
    for (std::size_t a = 0; a < stride_; ++a) {
      for (std::size_t b = a + 1; b < stride_; ++b) {
        const std::uint8_t shared = masks[a] & masks[b];
        if (shared) {
          const int c = shared & 1 ? 0 : (shared & 2 ? 1 : 2);
          if (edgeFaces_[edgeFaceOffsets_[localEdges_[lf][c]]].first != lf) continue;
        }
        arcs.push_back({nodes[a], nodes[b], (positions_[nodes[a]] - positions_[nodes[b]]).norm(),
                        kNone});
      }
    }
  }
  // Once-unfolded arcs between the off-edge nodes of each face pair.
  for (std::size_t le = 0; le < edges.size(); ++le) {
    const Vec3& p = mesh.vertices()[mesh.edges()[edges[le]][0]];
    const Vec3& q = mesh.vertices()[mesh.edges()[edges[le]][1]];
    for (std::size_t i = edgeFaceOffsets_[le]; i < edgeFaceOffsets_[le + 1]; ++i) {
      for (std::size_t j = i + 1; j < edgeFaceOffsets_[le + 1]; ++j) {
        const auto [fa, ca] = edgeFaces_[i];
        const auto [fb, cb] = edgeFaces_[j];
        const auto na = face_nodes(fa);
        const auto nb = face_nodes(fb);
        for (std::size_t a = 0; a < stride_; ++a) {
          if (masks[a] & (1u << ca)) continue;
          for (std::size_t b = 0; b < stride_; ++b) {
            if (masks[b] & (1u << cb) || na[a] == nb[b]) continue;
            const auto u = unfold(p, q, positions_[na[a]], positions_[nb[b]]);
            if (u) arcs.push_back({na[a], nb[b], u->length, static_cast<std::uint32_t>(le)});
          }
        }
      }
    }
  }
  // Centroid links: the same segments a query from the centroid would use,
  // plus centroid-to-centroid arcs across strips of three faces.
  for (std::uint32_t lf = 0; lf < nf; ++lf) {
    const auto c = centroid_node(lf);
    for_each_link(lf, positions_[c], [&](std::uint32_t v, double w, std::uint32_t via) {
      if (v >= centroidBase_ && v <= c) return;
      arcs.push_back({c, v, w, via});
    });
    for (int ca = 0; ca < 3; ++ca) {
      const auto le = localEdges_[lf][ca];
      for (std::size_t i = edgeFaceOffsets_[le]; i < edgeFaceOffsets_[le + 1]; ++i) {
        const auto [mid, cm] = edgeFaces_[i];
        if (mid == lf) continue;
        for (int cb = 0; cb < 3; ++cb) {
          const auto lb = localEdges_[mid][cb];
          if (lb == le) continue;
          for (std::size_t j = edgeFaceOffsets_[lb]; j < edgeFaceOffsets_[lb + 1]; ++j) {
            const auto t = edgeFaces_[j].first;
            if (t <= lf || t == mid) continue;
            const double w =
                unfold_strip(mid, cm, cb, positions_[c], positions_[centroid_node(t)], nullptr);
            if (w == kInf) continue;
            arcs.push_back({c, centroid_node(t), w,
                            kStrip | static_cast<std::uint32_t>(strips_.size())});
            strips_.push_back({mid, cm, static_cast<std::uint8_t>(cb), c});
          }
        }
      }
    }
  }

  const std::size_t nn = positions_.size();
  offsets_.assign(nn + 1, 0);
  for (const auto& a : arcs) {
    ++offsets_[a.u + 1];
    ++offsets_[a.v + 1];
  }
  for (std::size_t i = 0; i < nn; ++i) offsets_[i + 1] += offsets_[i];
  targets_.resize(offsets_[nn]);
  weights_.resize(offsets_[nn]);
  viaEdge_.resize(offsets_[nn]);
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const auto& a : arcs) {
    targets_[cursor[a.u]] = a.v;
    weights_[cursor[a.u]] = a.w;
    viaEdge_[cursor[a.u]++] = a.via;
    targets_[cursor[a.v]] = a.u;
    weights_[cursor[a.v]] = a.w;
    viaEdge_[cursor[a.v]++] = a.via;
  }
}

std::uint32_t SteinerGraph::local_face(std::uint32_t parentFace) const {
  const auto lf = index_of(faces_, parentFace);
  if (lf == kNone) {
    throw Error(ErrorCode::kInvalidArgument,
                "face " + std::to_string(parentFace) + " is outside the solver's face set");
  }
  return lf;
}

double SteinerGraph::direct(std::uint32_t faceA, const Vec3& a, std::uint32_t faceB,
                            const Vec3& b, std::vector<Vec3>* via) const {
  if (faceA == faceB) return (b - a).norm();
  const auto& ea = localEdges_[faceA];
  const auto& eb = localEdges_[faceB];
  for (auto le : ea) {
    if (std::find(eb.begin(), eb.end(), le) == eb.end()) continue;
    const auto& edge = mesh_->edges()[parentEdges_[le]];
    const auto u = unfold(mesh_->vertices()[edge[0]], mesh_->vertices()[edge[1]], a, b);
    if (!u) return kInf;
    if (via) via->push_back(crossing(le, a, b));
    return u->length;
  }
  double best = kInf;
  std::vector<Vec3> bestVia, scratch;
  for (auto le : ea) {
    for (std::size_t i = edgeFaceOffsets_[le]; i < edgeFaceOffsets_[le + 1]; ++i) {
      const auto mid = edgeFaces_[i].first;
      if (mid == faceA) continue;
      for (int c = 0; c < 3; ++c) {
        const auto lb = localEdges_[mid][c];
        if (lb == le || std::find(eb.begin(), eb.end(), lb) == eb.end()) continue;
        scratch.clear();
        const double d = unfold_strip(mid, edgeFaces_[i].second, c, a, b, &scratch);
        if (d < best) {
          best = d;
          bestVia = scratch;
        }
      }
    }
  }
  if (via && best < kInf) via->insert(via->end(), bestVia.begin(), bestVia.end());
  return best;
}

double SteinerGraph::unfold_strip(std::uint32_t mid, int edgeA, int edgeB, const Vec3& a,
                                  const Vec3& b, std::vector<Vec3>* via) const {
  using Vec2 = Eigen::Vector2d;
  const auto& tri = mesh_->faces()[faces_[mid]];
  const Vec3 v[3] = {mesh_->vertices()[tri[0]], mesh_->vertices()[tri[1]],
                     mesh_->vertices()[tri[2]]};
  const Vec3 ex = (v[1] - v[0]).normalized();
  const Vec3 ey = ((v[2] - v[0]) - (v[2] - v[0]).dot(ex) * ex).normalized();
  Vec2 w[3];
  for (int i = 0; i < 3; ++i) w[i] = {(v[i] - v[0]).dot(ex), (v[i] - v[0]).dot(ey)};

  // Rotates a point beyond edge c (corners c, c+1) into the middle face's plane.
  auto flatten = [&](const Vec3& x, int c, Vec2& out) {
    const Vec3& p = v[c];
    const Vec3 e = v[(c + 1) % 3] - p;
    const double len = e.norm();
    const Vec3 t = e / len;
    const double s = (x - p).dot(t);
    const double h = ((x - p) - s * t).norm();
    if (h <= 1e-12 * len) return false;
    const Vec2 t2 = (w[(c + 1) % 3] - w[c]) / len;
    Vec2 n2(-t2.y(), t2.x());
    if ((w[(c + 2) % 3] - w[c]).dot(n2) < 0.0) n2 = -n2;
    out = w[c] + s * t2 - h * n2;
    return true;
  };
  // Parameter along edge c where segment pq crosses it, with the segment parameter.
  auto cross = [&](const Vec2& p, const Vec2& q, int c, double& lambda, double& mu) {
    const Vec2 r = q - p;
    const Vec2 e = w[(c + 1) % 3] - w[c];
    const double den = r.x() * e.y() - r.y() * e.x();
    if (den == 0.0) return false;
    const Vec2 d = w[c] - p;
    lambda = (d.x() * e.y() - d.y() * e.x()) / den;
    mu = (d.x() * r.y() - d.y() * r.x()) / den;
    return lambda >= 0.0 && lambda <= 1.0 && mu >= 0.0 && mu <= 1.0;
  };

  Vec2 pa, pb;
  if (!flatten(a, edgeA, pa) || !flatten(b, edgeB, pb)) return kInf;
  double la, ma, lb, mb;
  if (!cross(pa, pb, edgeA, la, ma) || !cross(pa, pb, edgeB, lb, mb) || la > lb) return kInf;
  if (via) {
    via->push_back(v[edgeA] + ma * (v[(edgeA + 1) % 3] - v[edgeA]));
    via->push_back(v[edgeB] + mb * (v[(edgeB + 1) % 3] - v[edgeB]));
  }
  return (pb - pa).norm();
}

Vec3 SteinerGraph::crossing(std::uint32_t localEdge, const Vec3& a, const Vec3& b) const {
  const auto& edge = mesh_->edges()[parentEdges_[localEdge]];
  const Vec3& p = mesh_->vertices()[edge[0]];
  const Vec3& q = mesh_->vertices()[edge[1]];
  const auto u = unfold(p, q, a, b);
  const double s = u ? u->offset : 0.0;
  return p + (q - p).normalized() * s;
}

void SteinerGraph::append_via(std::uint32_t via, std::uint32_t fromNode, const Vec3& from,
                              const Vec3& to, std::vector<Vec3>& out) const {
  if (via == kNone) return;
  if (!(via & kStrip)) {
    out.push_back(crossing(via, from, to));
    return;
  }
  const Strip& s = strips_[via & ~kStrip];
  if (fromNode == s.from) {
    unfold_strip(s.mid, s.edgeA, s.edgeB, from, to, &out);
  } else {
    std::vector<Vec3> points;
    unfold_strip(s.mid, s.edgeA, s.edgeB, to, from, &points);
    out.insert(out.end(), points.rbegin(), points.rend());
  }
}

std::optional<GeodesicPath> SteinerGraph::shortest_path(const SurfacePoint& source,
                                                        const SurfacePoint& target) const {
  const auto sf = local_face(source.face);
  const auto tf = local_face(target.face);
  const std::size_t nn = positions_.size();
  std::vector<double> dist(nn, kInf);
  std::vector<std::uint32_t> pred(nn, kNone);
  std::vector<std::uint32_t> predVia(nn, kNone);
  std::vector<double> exit(nn, kInf);  // extra cost from a node to the target
  std::vector<std::uint32_t> exitVia(nn, kNone);
  for_each_link(tf, target.point, [&](std::uint32_t u, double c, std::uint32_t e) {
    if (c < exit[u]) {
      exit[u] = c;
      exitVia[u] = e;
    }
  });

  std::vector<Vec3> shortcutVia;
  double best = direct(sf, source.point, tf, target.point, &shortcutVia);
  std::uint32_t bestNode = kNone;

  MinQueue queue;
  for_each_link(sf, source.point, [&](std::uint32_t u, double c, std::uint32_t e) {
    if (c < dist[u]) {
      dist[u] = c;
      predVia[u] = e;
      queue.push({c, u});
    }
  });
  while (!queue.empty()) {
    const auto [d, u] = queue.top();
    queue.pop();
    if (d > dist[u]) continue;
    if (d >= best) break;
    if (exit[u] < kInf) {
      const double c = d + exit[u];
      if (c < best) {
        best = c;
        bestNode = u;
      }
    }
    for (std::size_t a = offsets_[u]; a < offsets_[u + 1]; ++a) {
      const auto v = targets_[a];
      const double nd = d + weights_[a];
      if (nd < dist[v]) {
        dist[v] = nd;
        pred[v] = u;
        predVia[v] = viaEdge_[a];
        queue.push({nd, v});
      }
    }
  }
  if (best == kInf) return std::nullopt;

  GeodesicPath path;
  path.cost = best;
  path.polyline.push_back(source.point);
  if (bestNode == kNone) {
    path.polyline.insert(path.polyline.end(), shortcutVia.begin(), shortcutVia.end());
  } else {
    std::vector<std::uint32_t> chain;
    for (auto u = bestNode; u != kNone; u = pred[u]) chain.push_back(u);
    std::reverse(chain.begin(), chain.end());
    std::uint32_t prev = kNone;
    for (auto u : chain) {
      append_via(predVia[u], prev, path.polyline.back(), positions_[u], path.polyline);
      path.polyline.push_back(positions_[u]);
      prev = u;
    }
    append_via(exitVia[bestNode], bestNode, positions_[bestNode], target.point, path.polyline);
  }
  path.polyline.push_back(target.point);
  return path;
}

std::vector<double> SteinerGraph::centroid_distances(const SurfacePoint& source,
                                                     double bound) const {
  const auto sf = local_face(source.face);
  const std::size_t nn = positions_.size();
  std::vector<double> dist(nn, kInf);
  MinQueue queue;
  for_each_link(sf, source.point, [&](std::uint32_t u, double c, std::uint32_t) {
    if (c < dist[u]) {
      dist[u] = c;
      queue.push({c, u});
    }
  });
  while (!queue.empty()) {
    const auto [d, u] = queue.top();
    queue.pop();
    if (d > dist[u]) continue;
    if (d > bound) break;
    for (std::size_t a = offsets_[u]; a < offsets_[u + 1]; ++a) {
      const auto v = targets_[a];
      const double nd = d + weights_[a];
      if (nd < dist[v]) {
        dist[v] = nd;
        queue.push({nd, v});
      }
    }
  }
  std::vector<double> out(faces_.size(), kInf);
  for (std::uint32_t lf = 0; lf < faces_.size(); ++lf) {
    out[lf] = std::min(direct(sf, source.point, lf, positions_[centroid_node(lf)]),
                       dist[centroid_node(lf)]);
  }
  return out;
}

std::unique_ptr<GeodesicSolver> make_geodesic_solver(const TriangleMesh& mesh,
                                                     std::vector<std::uint32_t> faces,
                                                     const GeodesicOptions& options) {
  switch (options.backend) {
    case GeodesicBackend::kSteiner:
      return std::make_unique<SteinerGraph>(mesh, std::move(faces), options.steinerPoints);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown geodesic backend");
}

std::vector<std::uint32_t> all_faces(const TriangleMesh& mesh) {
  std::vector<std::uint32_t> faces(mesh.faceCount());
  std::iota(faces.begin(), faces.end(), 0u);
  return faces;
}

double polyline_length(std::span<const Vec3> polyline) {
  double total = 0.0;
  for (std::size_t i = 1; i < polyline.size(); ++i) {
    total += (polyline[i] - polyline[i - 1]).norm();
  }
  return total;
}

Submesh cluster_submesh(const Tessellation& tessellation,
                        std::span<const std::vector<std::uint32_t>> clusterAdjacency,
                        std::uint32_t cluster) {
  Submesh sub;
  sub.clusters.push_back(cluster);
  for (auto a : clusterAdjacency[cluster]) sub.clusters.push_back(a);
  for (auto c : sub.clusters) {
    const auto& f = tessellation.clusters[c].faces;
    sub.faces.insert(sub.faces.end(), f.begin(), f.end());
  }
  std::sort(sub.faces.begin(), sub.faces.end());
  return sub;
}

Submesh cluster_submesh(const TriangleMesh& mesh, const Tessellation& tessellation,
                        std::uint32_t cluster) {
  const auto adj = cluster_adjacency(mesh, tessellation.faceToCluster,
                                     tessellation.clusters.size());
  return cluster_submesh(tessellation, adj, cluster);
}

TriangleMesh extract_mesh(const TriangleMesh& mesh, std::span<const std::uint32_t> faces,
                          std::vector<std::uint32_t>* vertexMap) {
  std::vector<std::uint32_t> used;
  for (auto f : faces) {
    for (auto v : mesh.faces()[f]) used.push_back(v);
  }
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());
  std::vector<Vec3> vertices;
  vertices.reserve(used.size());
  for (auto v : used) vertices.push_back(mesh.vertices()[v]);
  std::vector<TriangleMesh::Face> local;
  local.reserve(faces.size());
  for (auto f : faces) {
    TriangleMesh::Face t{};
    for (int c = 0; c < 3; ++c) t[c] = index_of(used, mesh.faces()[f][c]);
    local.push_back(t);
  }
  if (vertexMap) *vertexMap = used;
  return TriangleMesh::build(std::move(vertices), std::move(local));
}

GeodesicPath geodesic_between(const GeodesicSolver& solver, const SurfacePoint& source,
                              const SurfacePoint& target) {
  auto path = solver.shortest_path(source, target);
  if (!path) {
    throw Error(ErrorCode::kDisconnected,
                "no surface path between faces " + std::to_string(source.face) +
                    " and " + std::to_string(target.face));
  }
  return std::move(*path);
}

const GeneratorGraph::Edge* GeneratorGraph::find(std::uint32_t i, std::uint32_t j) const {
  const auto it = edges.find(key(i, j));
  return it == edges.end() ? nullptr : &it->second;
}

bool GeneratorGraph::is_complete() const {
  const std::size_t n = nodes.size();
  return edges.size() == n * (n - 1) / 2;
}

std::vector<Vec3> GeneratorGraph::path(std::uint32_t i, std::uint32_t j) const {
  const Edge* e = find(i, j);
  if (!e) {
    throw Error(ErrorCode::kMissingEdgePath,
                "no path stored for " + std::to_string(i) + "-" + std::to_string(j));
  }
  std::vector<Vec3> p = e->path;
  if (i > j) std::reverse(p.begin(), p.end());
  return p;
}

double GeneratorGraph::cost(std::uint32_t i, std::uint32_t j) const {
  const Edge* e = find(i, j);
  if (!e) {
    throw Error(ErrorCode::kIncompleteGraph,
                "missing edge " + std::to_string(i) + "-" + std::to_string(j));
  }
  return e->cost;
}

GeneratorGraph make_generator_nodes(const Tessellation& tessellation) {
  GeneratorGraph g;
  for (std::uint32_t c = 0; c < tessellation.clusters.size(); ++c) {
    const Cluster& cl = tessellation.clusters[c];
    g.nodes.push_back({c, cl.generatorFace, cl.generator});
  }
  return g;
}

GeneratorGraph adjacent_generator_distances(const TriangleMesh& mesh,
                                            const Tessellation& tessellation,
                                            const GeodesicOptions& options) {
  GeneratorGraph graph = make_generator_nodes(tessellation);
  const std::size_t m = tessellation.clusters.size();
  const auto adj = cluster_adjacency(mesh, tessellation.faceToCluster, m);
  std::size_t neighborSum = 0;
  for (const auto& a : adj) neighborSum += a.size();
  graph.avgNeighbors = m ? double(neighborSum) / double(m) : 0.0;

  struct Result {
    std::uint32_t j;
    std::optional<GeodesicPath> path;
  };
  std::vector<std::vector<Result>> results(m);
  parallel_for(m, [&](std::size_t i) {
    const auto& neighbors = adj[i];
    if (std::none_of(neighbors.begin(), neighbors.end(),
                     [&](std::uint32_t a) { return a > i; })) {
      return;
    }
    const Submesh sub = cluster_submesh(tessellation, adj, static_cast<std::uint32_t>(i));
    const auto solver = make_geodesic_solver(mesh, sub.faces, options);
    const SurfacePoint src{graph.nodes[i].face, graph.nodes[i].point};
    for (auto a : neighbors) {
      if (a <= i) continue;
      const SurfacePoint dst{graph.nodes[a].face, graph.nodes[a].point};
      results[i].push_back({a, solver->shortest_path(src, dst)});
    }
  });
  for (std::uint32_t i = 0; i < m; ++i) {
    for (auto& r : results[i]) {
      if (!r.path) {
        graph.warnings.push_back("Disconnected: no submesh path between generators " +
                                 std::to_string(i) + " and " + std::to_string(r.j));
        continue;
      }
      graph.edges[{i, r.j}] = {r.path->cost, std::move(r.path->polyline), false};
    }
  }
  return graph;
}

GeneratorGraph complete_generator_graph(GeneratorGraph graph) {
  const auto n = static_cast<std::uint32_t>(graph.nodes.size());
  std::vector<std::vector<std::pair<std::uint32_t, double>>> adj(n);
  for (const auto& [k, e] : graph.edges) {
    adj[k.first].push_back({k.second, e.cost});
    adj[k.second].push_back({k.first, e.cost});
  }
  std::map<GeneratorGraph::Key, GeneratorGraph::Edge> added;
  for (std::uint32_t s = 0; s < n; ++s) {
    std::vector<double> dist(n, kInf);
    std::vector<std::uint32_t> pred(n, kNone);
    MinQueue queue;
    dist[s] = 0.0;
    queue.push({0.0, s});
    while (!queue.empty()) {
      const auto [d, u] = queue.top();
      queue.pop();
      if (d > dist[u]) continue;
      for (const auto& [v, w] : adj[u]) {
        const double nd = d + w;
        if (nd < dist[v]) {
          dist[v] = nd;
          pred[v] = u;
          queue.push({nd, v});
        }
      }
    }
    for (std::uint32_t t = s + 1; t < n; ++t) {
      if (dist[t] == kInf) {
        throw Error(ErrorCode::kDisconnectedGraph,
                    "generators " + std::to_string(s) + " and " + std::to_string(t) +
                        " are not connected");
      }
      if (graph.find(s, t)) continue;
      std::vector<std::uint32_t> hops;
      for (auto u = t; u != kNone; u = pred[u]) hops.push_back(u);
      std::reverse(hops.begin(), hops.end());
      GeneratorGraph::Edge e;
      e.cost = dist[t];
      e.derived = true;
      for (std::size_t h = 0; h + 1 < hops.size(); ++h) {
        auto seg = graph.path(hops[h], hops[h + 1]);
        auto begin = seg.begin();
        if (!e.path.empty() && e.path.back() == seg.front()) ++begin;
        e.path.insert(e.path.end(), begin, seg.end());
      }
      added[{s, t}] = std::move(e);
    }
  }
  for (auto& [k, e] : added) graph.edges[k] = std::move(e);
  return graph;
}

double full_mesh_geodesic_oracle(const TriangleMesh& mesh, const SurfacePoint& source,
                                 const SurfacePoint& target,
                                 const GeodesicOptions& options) {
  const auto solver = make_geodesic_solver(mesh, all_faces(mesh), options);
  return geodesic_between(*solver, source, target).cost;
}

std::vector<std::vector<double>> full_mesh_all_pairs(const TriangleMesh& mesh,
                                                     const Tessellation& tessellation,
                                                     const GeodesicOptions& options) {
  const std::size_t m = tessellation.clusters.size();
  const auto solver = make_geodesic_solver(mesh, all_faces(mesh), options);
  std::vector<std::vector<double>> out(m, std::vector<double>(m, 0.0));
  parallel_for(m, [&](std::size_t i) {
    const Cluster& a = tessellation.clusters[i];
    for (std::size_t j = i + 1; j < m; ++j) {
      const Cluster& b = tessellation.clusters[j];
      const auto p = solver->shortest_path({a.generatorFace, a.generator},
                                           {b.generatorFace, b.generator});
      out[i][j] = p ? p->cost : kInf;
    }
  });
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < i; ++j) out[i][j] = out[j][i];
  }
  return out;
}

}  // namespace surfcover
