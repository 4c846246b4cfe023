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
#include <filesystem>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "surfcover/mesh.hpp"

namespace surfcover {

enum class MeshFormat { kObj, kStl, kPly };

/// Maps a file extension (".obj", ".stl", ".ply", any case) to a format.
std::optional<MeshFormat> format_from_extension(const std::filesystem::path& path);
std::optional<MeshFormat> parse_mesh_format(std::string_view name);

/// Loads OBJ (v/f records), ASCII or binary STL, or ASCII PLY. STL corners
/// are welded on exact coordinate equality. Polygons are fan-triangulated.
/// Throws ParseError, IoError or EmptyMesh.
TriangleMesh load_mesh(const std::filesystem::path& path, MeshFormat format,
                       MeshReport* report = nullptr);
TriangleMesh load_mesh(const std::filesystem::path& path,
                       MeshReport* report = nullptr);

void write_obj(const std::filesystem::path& path, const TriangleMesh& mesh);
void write_ascii_stl(const std::filesystem::path& path, const TriangleMesh& mesh);

/// ASCII PLY with a uchar RGB color per face.
void write_colored_ply(const std::filesystem::path& path, const TriangleMesh& mesh,
                       std::span<const std::array<std::uint8_t, 3>> faceColors);

/// Polyline as OBJ vertices joined by consecutive `l` records.
void write_polyline_obj(const std::filesystem::path& path,
                        std::span<const Vec3> polyline);

/// Distinct, deterministic color per cluster index.
std::array<std::uint8_t, 3> cluster_color(std::uint32_t cluster);

}  // namespace surfcover
