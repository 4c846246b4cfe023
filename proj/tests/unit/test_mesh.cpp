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

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <fstream>
#include <random>

#include "oracles.hpp"
#include "surfcover/error.hpp"
#include "surfcover/mesh.hpp"
#include "surfcover/mesh_io.hpp"
#include "surfcover/shapes.hpp"
#include "test_util.hpp"

namespace surfcover {
namespace {

using testing::TempDir;
using testing::write_text;

TEST(MeshLoad, SingleTriangleObj) {
  TempDir dir;
  write_text(dir / "tri.obj", "v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 3\n");
  const auto mesh = load_mesh(dir / "tri.obj");
  ASSERT_EQ(mesh.faceCount(), 1u);
  EXPECT_DOUBLE_EQ(mesh.faceAreas()[0], 0.5);
  EXPECT_TRUE(mesh.faceNormals()[0].isApprox(Vec3(0, 0, 1)));
}

TEST(MeshLoad, ObjSlashIndicesNegativeIndicesAndQuads) {
  TempDir dir;
  write_text(dir / "quad.obj",
             "# quad\nv 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\nvn 0 0 1\n"
             "f 1//1 2//1 3//1 4//1\nf -4 -3 -2\n");
  const auto mesh = load_mesh(dir / "quad.obj");
  EXPECT_EQ(mesh.faceCount(), 3u);
  EXPECT_NEAR(mesh.totalArea(), 1.5, 1e-12);
}

TEST(MeshLoad, IcosahedronCounts) {
  TempDir dir;
  write_obj(dir / "ico.obj", shapes::icosahedron());
  const auto mesh = load_mesh(dir / "ico.obj");
  EXPECT_EQ(mesh.faceCount(), 20u);
  EXPECT_EQ(mesh.edgeCount(), 30u);
  EXPECT_TRUE(mesh.isClosed());
  for (std::uint32_t f = 0; f < mesh.faceCount(); ++f) {
    EXPECT_EQ(mesh.adjacentFaces(f).size(), 3u);
  }
}

TEST(MeshLoad, CubeStlAsciiAndBinary) {
  TempDir dir;
  write_ascii_stl(dir / "cube.stl", shapes::cube());
  const auto ascii = load_mesh(dir / "cube.stl");
  EXPECT_EQ(ascii.faceCount(), 12u);
  EXPECT_EQ(ascii.vertexCount(), 8u);
  EXPECT_NEAR(ascii.totalArea(), 6.0, 1e-9);
  EXPECT_TRUE(ascii.isClosed());

  // Binary layout: 80-byte header, count, then 50 bytes per triangle.
  const auto cube = shapes::cube();
  std::ofstream out(dir / "bin.stl", std::ios::binary);
  char headerBytes[80] = {};
  out.write(headerBytes, 80);
  const std::uint32_t n = static_cast<std::uint32_t>(cube.faceCount());
  out.write(reinterpret_cast<const char*>(&n), 4);
  for (std::uint32_t f = 0; f < n; ++f) {
    float buf[12] = {};
    for (int k = 0; k < 3; ++k) {
      for (int c = 0; c < 3; ++c) {
        buf[3 + 3 * k + c] = static_cast<float>(cube.vertices()[cube.faces()[f][k]][c]);
      }
    }
    out.write(reinterpret_cast<const char*>(buf), sizeof buf);
    const std::uint16_t attr = 0;
    out.write(reinterpret_cast<const char*>(&attr), 2);
  }
  out.close();
  const auto binary = load_mesh(dir / "bin.stl");
  EXPECT_EQ(binary.faceCount(), 12u);
  EXPECT_NEAR(binary.totalArea(), 6.0, 1e-9);
}

TEST(MeshLoad, AsciiPly) {
  TempDir dir;
  write_text(dir / "m.ply",
             "ply\nformat ascii 1.0\nelement vertex 4\nproperty float x\n"
             "property float y\nproperty float z\nelement face 2\n"
             "property list uchar int vertex_indices\nend_header\n"
             "0 0 0\n1 0 0\n1 1 0\n0 1 0\n3 0 1 2\n3 0 2 3\n");
  const auto mesh = load_mesh(dir / "m.ply");
  EXPECT_EQ(mesh.faceCount(), 2u);
  EXPECT_NEAR(mesh.totalArea(), 1.0, 1e-12);
}

TEST(MeshLoad, ColoredPlyRoundTrip) {
  TempDir dir;
  const auto sphere = shapes::icosphere(2);
  std::vector<std::array<std::uint8_t, 3>> colors(sphere.faceCount(), cluster_color(3));
  write_colored_ply(dir / "c.ply", sphere, colors);
  const auto back = load_mesh(dir / "c.ply");
  EXPECT_EQ(back.faceCount(), sphere.faceCount());
  EXPECT_NEAR(back.totalArea(), sphere.totalArea(), 1e-5);
}

TEST(MeshLoad, DegenerateFacesAreDroppedAndReported) {
  TempDir dir;
  write_text(dir / "d.obj", "v 0 0 0\nv 1 0 0\nv 0 1 0\nv 2 0 0\nf 1 2 3\nf 1 2 4\n");
  MeshReport report;
  const auto mesh = load_mesh(dir / "d.obj", &report);
  EXPECT_EQ(mesh.faceCount(), 1u);
  ASSERT_EQ(report.droppedFaces.size(), 1u);
  EXPECT_EQ(report.droppedFaces[0], 1u);
}

TEST(MeshLoad, Errors) {
  TempDir dir;
  write_text(dir / "empty.obj", "v 0 0 0\nv 1 0 0\nv 2 0 0\nf 1 2 3\n");
  try {
    load_mesh(dir / "empty.obj");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyMesh);
  }
  write_text(dir / "bad.obj", "v 0 0 0\nv 1 0\nf 1 2 3\n");
  try {
    load_mesh(dir / "bad.obj");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
  }
  write_text(dir / "range.obj", "v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 9\n");
  EXPECT_THROW(load_mesh(dir / "range.obj"), Error);
  EXPECT_THROW(load_mesh(dir / "missing.obj"), Error);
}

TEST(MeshLoad, NonManifoldIsAcceptedWithWarning) {
  // Three triangles sharing the edge (0,1).
  MeshReport report;
  const auto mesh = TriangleMesh::build(
      {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}},
      {{0, 1, 2}, {1, 0, 3}, {0, 1, 4}}, &report);
  EXPECT_FALSE(mesh.isManifold());
  EXPECT_EQ(report.nonManifoldEdges, 1u);
  EXPECT_FALSE(report.warnings.empty());
}

TEST(MeshInvariants, NormalsAdjacencyAndEdgeCount) {
  for (const auto& mesh : {shapes::icosphere(6), shapes::torus_knot(60, 8), shapes::cube()}) {
    ASSERT_TRUE(mesh.isClosed());
    EXPECT_EQ(2 * mesh.edgeCount(), 3 * mesh.faceCount());
    double sum = 0.0;
    for (std::uint32_t f = 0; f < mesh.faceCount(); ++f) {
      EXPECT_NEAR(mesh.faceNormals()[f].norm(), 1.0, 1e-9);
      sum += mesh.faceAreas()[f];
      for (auto g : mesh.adjacentFaces(f)) {
        const auto back = mesh.adjacentFaces(g);
        EXPECT_TRUE(std::find(back.begin(), back.end(), f) != back.end());
      }
    }
    EXPECT_NEAR(sum, mesh.totalArea(), 1e-12 * sum);
  }
}

TEST(MeshInvariants, ClosedShapesHaveOutwardNormals) {
  const auto knot = shapes::torus_knot(60, 8);
  // Divergence theorem: the signed volume of a closed outward mesh is positive.
  double volume = 0.0;
  for (const auto& t : knot.faces()) {
    volume += knot.vertices()[t[0]].dot(knot.vertices()[t[1]].cross(knot.vertices()[t[2]]));
  }
  EXPECT_GT(volume, 0.0);
  const auto sphere = shapes::icosphere(4);
  for (std::uint32_t f = 0; f < sphere.faceCount(); ++f) {
    EXPECT_GT(sphere.faceNormals()[f].dot(sphere.faceCentroids()[f]), 0.0);
  }
}

TEST(MeshInvariants, AreaIsStableUnderFaceReordering) {
  const auto sphere = shapes::icosphere(5);
  auto faces = sphere.faces();
  std::mt19937_64 rng(5);
  std::shuffle(faces.begin(), faces.end(), rng);
  const auto shuffled = TriangleMesh::build(sphere.vertices(), faces);
  EXPECT_NEAR(shuffled.totalArea(), sphere.totalArea(), 1e-12 * sphere.totalArea());
}

TEST(BboxDiagonal, CubeAndScaling) {
  EXPECT_NEAR(bbox_diagonal(shapes::cube()), std::sqrt(3.0), 1e-12);
  EXPECT_NEAR(bbox_diagonal(shapes::cube(2.0)), 2.0 * std::sqrt(3.0), 1e-12);
}

TEST(RayIntersect, SphereCenterHitsPole) {
  const auto sphere = shapes::icosphere(8);
  const auto hit = ray_intersect(sphere, Ray{Vec3::Zero(), Vec3::UnitZ()});
  ASSERT_TRUE(hit);
  EXPECT_GT(sphere.faceCentroids()[hit->face].z(), 0.95);
  EXPECT_NEAR(hit->distance, 1.0, 0.05);
}

TEST(RayIntersect, AwayFromPlaneMisses) {
  const auto plane = shapes::grid(4, 4, 1.0, 1.0);
  EXPECT_FALSE(ray_intersect(plane, Ray{Vec3(0.5, 0.5, 1.0), Vec3::UnitZ()}));
  EXPECT_TRUE(ray_intersect(plane, Ray{Vec3(0.5, 0.5, 1.0), -Vec3::UnitZ()}));
}

TEST(RayIntersect, IgnoreListAndMaxDistance) {
  const auto sphere = shapes::icosphere(4);
  const Ray ray{Vec3::Zero(), Vec3::UnitX()};
  const auto first = ray_intersect(sphere, ray);
  ASSERT_TRUE(first);
  const std::uint32_t skip[] = {first->face};
  const auto second = ray_intersect(sphere, ray, skip);
  if (second) EXPECT_NE(second->face, first->face);
  EXPECT_FALSE(ray_intersect(sphere, ray, {}, 0.5));
}

TEST(RayIntersect, MatchesExhaustiveOracleOnRandomRays) {
  const auto knot = shapes::torus_knot(80, 10);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> box(-1.6, 1.6);
  int hits = 0;
  for (int i = 0; i < 1000; ++i) {
    const Ray ray{Vec3(box(rng), box(rng), box(rng) * 0.3), oracle::random_unit(rng)};
    const auto got = ray_intersect(knot, ray);
    const auto want = oracle::nearest_hit(knot, ray);
    ASSERT_EQ(got.has_value(), want.has_value()) << "ray " << i;
    if (!got) continue;
    ++hits;
    EXPECT_EQ(got->face, want->face) << "ray " << i;
    EXPECT_NEAR(got->distance, want->distance, 1e-9);
  }
  EXPECT_GT(hits, 100);
}

}  // namespace
}  // namespace surfcover
