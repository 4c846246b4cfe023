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

#include "surfcover/mesh.hpp"

namespace surfcover::shapes {

/// Regular icosahedron inscribed in a sphere of the given radius.
TriangleMesh icosahedron(double radius = 1.0);

/// Geodesic sphere: each icosahedron face split into frequency^2 triangles
/// and projected to the sphere. Face count is 20 * frequency^2.
TriangleMesh icosphere(unsigned frequency, double radius = 1.0);

/// Flat rectangle in the z = 0 plane, nx by ny cells, two triangles each,
/// normals along +z.
TriangleMesh grid(unsigned nx, unsigned ny, double width, double height);

/// Axis-aligned cube [0, side]^3 with 12 outward-facing triangles.
TriangleMesh cube(double side = 1.0);

/// Closed tube around a (p, q) torus knot; 2 * segments * sides faces.
TriangleMesh torus_knot(unsigned segments, unsigned sides, int p = 2, int q = 3,
                        double majorRadius = 1.0, double minorRadius = 0.4,
                        double tubeRadius = 0.15);

}  // namespace surfcover::shapes
