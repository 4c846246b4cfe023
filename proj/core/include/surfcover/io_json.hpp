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
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "surfcover/ccvt.hpp"
#include "surfcover/geodesic.hpp"
#include "surfcover/metrics.hpp"
#include "surfcover/tour.hpp"
#include "surfcover/viewpoint.hpp"

namespace surfcover {

using Json = nlohmann::ordered_json;

inline constexpr unsigned kSchemaVersion = 1;

/// Reads a JSON document; throws Io or Parse.
Json read_json(const std::filesystem::path& path);
/// Writes `doc` with two-space indentation and a trailing newline.
void write_json(const std::filesystem::path& path, const Json& doc);

/// Throws SchemaMismatch unless doc["format"] equals `format` and the
/// version is supported.
void expect_format(const Json& doc, const std::string& format);

Json segmentation_to_json(const Tessellation& tessellation, const EnergyParams& params,
                          std::size_t faceCount);
/// Throws SchemaMismatch on malformed input or a face-count mismatch.
Tessellation segmentation_from_json(const Json& doc, std::size_t faceCount);
EnergyParams energy_params_from_json(const Json& doc);

struct PathArtifact {
  GeneratorGraph graph;
  CoveragePath path;
  GeodesicOptions geodesic;
  std::uint64_t seed = 0;
};

Json path_to_json(const PathArtifact& artifact);
PathArtifact path_from_json(const Json& doc);

struct ViewpointArtifact {
  CandidateRaySet candidateSet;
  double thetaR = 0.0;
  std::size_t rollCount = 0;
  ViewpointPlan plan;
  ConfigTour tour;
};

Json viewpoints_to_json(const ViewpointArtifact& artifact);

Json metrics_to_json(const MetricsReport& report, std::uint64_t seed);

}  // namespace surfcover
