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

#include "surfcover/shapes.hpp"

#include <cmath>
#include <map>
#include <tuple>

#include "surfcover/error.hpp"

namespace surfcover::shapes {

namespace {

struct Base {
  std::vector<Vec3> vertices;
  std::vector<TriangleMesh::Face> faces;
};

Base icosahedron_base() {
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  Base b;
  b.vertices = {{-1, t, 0}, {1, t, 0},  {-1, -t, 0}, {1, -t, 0},
                {0, -1, t}, {0, 1, t},  {0, -1, -t}, {0, 1, -t},
                {t, 0, -1}, {t, 0, 1},  {-t, 0, -1}, {-t, 0, 1}};
  for (auto& v : b.vertices) v.normalize();
  b.faces = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
             {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
             {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
             {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  return b;
}

}  // namespace

TriangleMesh icosahedron(double radius) {
  Base b = icosahedron_base();
  for (auto& v : b.vertices) v *= radius;
  return TriangleMesh::build(std::move(b.vertices), std::move(b.faces));
}

TriangleMesh icosphere(unsigned frequency, double radius) {
  if (frequency == 0) throw Error(ErrorCode::kInvalidArgument, "frequency must be >= 1");
  const Base base = icosahedron_base();
  const unsigned n = frequency;
  std::vector<Vec3> vertices = base.vertices;
  // Points on a base edge are computed from the lower-indexed endpoint so
  // both incident faces produce the same vertex.
  std::map<std::tuple<std::uint32_t, std::uint32_t, unsigned>, std::uint32_t> edgePoints;
  std::vector<TriangleMesh::Face> faces;

  for (const auto& f : base.faces) {
    const std::uint32_t A = f[0], B = f[1], C = f[2];
    auto edge_point = [&](std::uint32_t a, std::uint32_t b, unsigned s) {
      if (s == 0) return a;
      if (s == n) return b;
      if (a > b) {
        std::swap(a, b);
        s = n - s;
      }
      auto [it, inserted] = edgePoints.try_emplace(
          std::make_tuple(a, b, s), static_cast<std::uint32_t>(vertices.size()));
      if (inserted) {
        vertices.push_back(base.vertices[a] +
                           (base.vertices[b] - base.vertices[a]) * (double(s) / n));
      }
      return it->second;
    };
    // grid[i][j]: i steps from A toward B, j steps toward C, i + j <= n.
    std::vector<std::vector<std::uint32_t>> grid(n + 1);
    for (unsigned i = 0; i <= n; ++i) {
      grid[i].resize(n + 1 - i);
      for (unsigned j = 0; i + j <= n; ++j) {
        std::uint32_t id;
        if (j == 0) {
          id = edge_point(A, B, i);
        } else if (i == 0) {
          id = edge_point(A, C, j);
        } else if (i + j == n) {
          id = edge_point(B, C, j);
        } else {
          id = static_cast<std::uint32_t>(vertices.size());
          const Vec3& a = base.vertices[A];
          vertices.push_back(a + (base.vertices[B] - a) * (double(i) / n) +
                             (base.vertices[C] - a) * (double(j) / n));
        }
        grid[i][j] = id;
      }
    }
    for (unsigned i = 0; i < n; ++i) {
      for (unsigned j = 0; i + j < n; ++j) {
        faces.push_back({grid[i][j], grid[i + 1][j], grid[i][j + 1]});
        if (i + j + 1 < n) {
          faces.push_back({grid[i + 1][j], grid[i + 1][j + 1], grid[i][j + 1]});
        }
      }
    }
  }
  for (auto& v : vertices) v = v.normalized() * radius;
  return TriangleMesh::build(std::move(vertices), std::move(faces));
}

TriangleMesh grid(unsigned nx, unsigned ny, double width, double height) {
  if (nx == 0 || ny == 0) throw Error(ErrorCode::kInvalidArgument, "empty grid");
  std::vector<Vec3> vertices;
  std::vector<TriangleMesh::Face> faces;
  for (unsigned j = 0; j <= ny; ++j) {
    for (unsigned i = 0; i <= nx; ++i) {
      vertices.emplace_back(width * i / nx, height * j / ny, 0.0);
    }
  }
  auto id = [&](unsigned i, unsigned j) { return j * (nx + 1) + i; };
  for (unsigned j = 0; j < ny; ++j) {
    for (unsigned i = 0; i < nx; ++i) {
      faces.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      faces.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  }
  return TriangleMesh::build(std::move(vertices), std::move(faces));
}

TriangleMesh cube(double side) {
  std::vector<Vec3> v;
  for (int k = 0; k < 8; ++k) {
    v.emplace_back((k & 1) * side, ((k >> 1) & 1) * side, ((k >> 2) & 1) * side);
  }
  std::vector<TriangleMesh::Face> f = {
      {0, 2, 3}, {0, 3, 1},  // z = 0
      {4, 5, 7}, {4, 7, 6},  // z = side
      {0, 1, 5}, {0, 5, 4},  // y = 0
      {2, 6, 7}, {2, 7, 3},  // y = side
      {0, 4, 6}, {0, 6, 2},  // x = 0
      {1, 3, 7}, {1, 7, 5},  // x = side
  };
  return TriangleMesh::build(std::move(v), std::move(f));
}

TriangleMesh torus_knot(unsigned segments, unsigned sides, int p, int q,
                        double majorRadius, double minorRadius,
                        double tubeRadius) {
  if (segments < 3 || sides < 3) {
    throw Error(ErrorCode::kInvalidArgument, "torus knot needs >= 3 segments and sides");
  }
  auto curve = [&](double t) {
    const double r = majorRadius + minorRadius * std::cos(q * t);
    return Vec3(r * std::cos(p * t), r * std::sin(p * t),
                minorRadius * std::sin(q * t));
  };
  std::vector<Vec3> vertices;
  vertices.reserve(std::size_t(segments) * sides);
  for (unsigned s = 0; s < segments; ++s) {
    const double t = 2.0 * kPi * s / segments;
    const double h = 1e-5;
    const Vec3 c = curve(t);
    const Vec3 tangent = (curve(t + h) - curve(t - h)).normalized();
    const Vec3 normal = (c - c.dot(tangent) * tangent).normalized();
    const Vec3 binormal = tangent.cross(normal);
    for (unsigned k = 0; k < sides; ++k) {
      const double a = 2.0 * kPi * k / sides;
      vertices.push_back(c + tubeRadius * (std::cos(a) * normal + std::sin(a) * binormal));
    }
  }
  std::vector<TriangleMesh::Face> faces;
  auto id = [&](unsigned s, unsigned k) {
    return (s % segments) * sides + (k % sides);
  };
  for (unsigned s = 0; s < segments; ++s) {
    for (unsigned k = 0; k < sides; ++k) {
      faces.push_back({id(s, k), id(s + 1, k + 1), id(s + 1, k)});
      faces.push_back({id(s, k), id(s, k + 1), id(s + 1, k + 1)});
    }
  }
  return TriangleMesh::build(std::move(vertices), std::move(faces));
}

}  // namespace surfcover::shapes
