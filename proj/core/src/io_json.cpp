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

#include "surfcover/io_json.hpp"

#include <fstream>

#include "surfcover/error.hpp"

namespace surfcover {

namespace {

Json vec(const Vec3& v) { return Json::array({v.x(), v.y(), v.z()}); }

[[noreturn]] void mismatch(const std::string& what) {
  throw Error(ErrorCode::kSchemaMismatch, what);
}

const Json& field(const Json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) mismatch(std::string("missing field '") + key + "'");
  return obj.at(key);
}

double num(const Json& obj, const char* key) {
  const Json& v = field(obj, key);
  if (!v.is_number()) mismatch(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

std::uint64_t uint(const Json& obj, const char* key) {
  const Json& v = field(obj, key);
  if (!v.is_number_unsigned()) mismatch(std::string("field '") + key + "' must be unsigned");
  return v.get<std::uint64_t>();
}

Vec3 to_vec(const Json& v) {
  if (!v.is_array() || v.size() != 3) mismatch("expected a 3-vector");
  for (const auto& x : v) {
    if (!x.is_number()) mismatch("expected a 3-vector");
  }
  return {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
}

std::vector<std::uint32_t> index_list(const Json& v, const char* key) {
  if (!v.is_array()) mismatch(std::string("field '") + key + "' must be an array");
  std::vector<std::uint32_t> out;
  out.reserve(v.size());
  for (const auto& x : v) {
    if (!x.is_number_unsigned()) mismatch(std::string("field '") + key + "' holds a non-index");
    out.push_back(x.get<std::uint32_t>());
  }
  return out;
}

Json ray_json(const Ray& r) { return {{"origin", vec(r.origin)}, {"direction", vec(r.direction)}}; }

Json header(const char* format) { return {{"format", format}, {"version", kSchemaVersion}}; }

}  // namespace

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kParse, path.string() + ": " + e.what());
  }
}

void write_json(const std::filesystem::path& path, const Json& doc) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << doc.dump(2) << '\n';
  if (!out) throw Error(ErrorCode::kIo, "failed writing " + path.string());
}

void expect_format(const Json& doc, const std::string& format) {
  if (!doc.is_object()) mismatch("document is not an object");
  const Json& f = field(doc, "format");
  if (!f.is_string() || f.get<std::string>() != format) {
    mismatch("expected format '" + format + "'");
  }
  if (uint(doc, "version") != kSchemaVersion) mismatch("unsupported version");
}

Json segmentation_to_json(const Tessellation& t, const EnergyParams& p, std::size_t faceCount) {
  Json doc = header("surfcover.segmentation");
  doc["faceCount"] = faceCount;
  doc["seed"] = t.seed;
  doc["params"] = {{"alpha1", p.alpha1},
                   {"alpha2", p.alpha2},
                   {"alpha3", p.alpha3},
                   {"alpha4", p.alpha4},
                   {"norm", p.norm == Norm::kL1 ? "l1" : "l2"},
                   {"normalCost", p.normalCostEnabled}};
  doc["energy"] = t.energy;
  doc["iterations"] = t.iterations;
  doc["converged"] = t.converged;
  doc["energyTrace"] = t.energyTrace;
  Json clusters = Json::array();
  for (const auto& c : t.clusters) {
    clusters.push_back({{"generatorFace", c.generatorFace},
                        {"generator", vec(c.generator)},
                        {"massCentroid", vec(c.massCentroid)},
                        {"proxyNormal", vec(c.proxyNormal)},
                        {"area", c.area},
                        {"normalFallback", c.normalFallback},
                        {"faces", c.faces}});
  }
  doc["clusters"] = std::move(clusters);
  doc["faceToCluster"] = t.faceToCluster;
  return doc;
}

EnergyParams energy_params_from_json(const Json& doc) {
  const Json& p = field(doc, "params");
  EnergyParams e;
  e.alpha1 = num(p, "alpha1");
  e.alpha2 = num(p, "alpha2");
  e.alpha3 = num(p, "alpha3");
  e.alpha4 = num(p, "alpha4");
  const Json& norm = field(p, "norm");
  if (norm == "l1") {
    e.norm = Norm::kL1;
  } else if (norm == "l2") {
    e.norm = Norm::kL2;
  } else {
    mismatch("norm must be 'l1' or 'l2'");
  }
  const Json& nc = field(p, "normalCost");
  if (!nc.is_boolean()) mismatch("normalCost must be boolean");
  e.normalCostEnabled = nc.get<bool>();
  return e;
}

Tessellation segmentation_from_json(const Json& doc, std::size_t faceCount) {
  expect_format(doc, "surfcover.segmentation");
  if (uint(doc, "faceCount") != faceCount) {
    mismatch("segmentation is for " + std::to_string(uint(doc, "faceCount")) +
             " faces, mesh has " + std::to_string(faceCount));
  }
  Tessellation t;
  t.seed = uint(doc, "seed");
  t.energy = num(doc, "energy");
  t.iterations = uint(doc, "iterations");
  const Json& conv = field(doc, "converged");
  if (!conv.is_boolean()) mismatch("converged must be boolean");
  t.converged = conv.get<bool>();
  const Json& trace = field(doc, "energyTrace");
  if (!trace.is_array()) mismatch("energyTrace must be an array");
  for (const auto& e : trace) {
    if (!e.is_number()) mismatch("energyTrace holds a non-number");
    t.energyTrace.push_back(e.get<double>());
  }
  const Json& clusters = field(doc, "clusters");
  if (!clusters.is_array() || clusters.empty()) mismatch("clusters must be a non-empty array");
  for (const auto& c : clusters) {
    Cluster cl;
    cl.generatorFace = static_cast<std::uint32_t>(uint(c, "generatorFace"));
    cl.generator = to_vec(field(c, "generator"));
    cl.massCentroid = to_vec(field(c, "massCentroid"));
    cl.proxyNormal = to_vec(field(c, "proxyNormal"));
    cl.area = num(c, "area");
    cl.normalFallback = field(c, "normalFallback").get<bool>();
    cl.faces = index_list(field(c, "faces"), "faces");
    t.clusters.push_back(std::move(cl));
  }
  t.faceToCluster = index_list(field(doc, "faceToCluster"), "faceToCluster");
  if (t.faceToCluster.size() != faceCount) mismatch("faceToCluster length mismatch");
  for (auto c : t.faceToCluster) {
    if (c >= t.clusters.size()) mismatch("faceToCluster references a missing cluster");
  }
  for (const auto& cl : t.clusters) {
    if (cl.generatorFace >= faceCount) mismatch("generator face out of range");
    for (auto f : cl.faces) {
      if (f >= faceCount) mismatch("cluster face out of range");
    }
  }
  return t;
}

Json path_to_json(const PathArtifact& a) {
  Json doc = header("surfcover.path");
  doc["seed"] = a.seed;
  doc["backend"] = "steiner";
  doc["steinerPoints"] = a.geodesic.steinerPoints;
  doc["avgNeighbors"] = a.graph.avgNeighbors;
  doc["warnings"] = a.graph.warnings;
  Json nodes = Json::array();
  for (const auto& n : a.graph.nodes) {
    nodes.push_back({{"cluster", n.cluster}, {"face", n.face}, {"point", vec(n.point)}});
  }
  doc["nodes"] = std::move(nodes);
  Json edges = Json::array();
  for (const auto& [k, e] : a.graph.edges) {
    Json path = Json::array();
    for (const auto& p : e.path) path.push_back(vec(p));
    edges.push_back({{"i", k.first}, {"j", k.second}, {"cost", e.cost},
                     {"derived", e.derived}, {"path", std::move(path)}});
  }
  doc["edges"] = std::move(edges);
  Json polyline = Json::array();
  for (const auto& p : a.path.polyline) polyline.push_back(vec(p));
  doc["tour"] = {{"order", a.path.order},
                 {"totalCost", a.path.totalCost},
                 {"openOrder", a.path.openOrder},
                 {"openCost", a.path.openCost},
                 {"polyline", std::move(polyline)}};
  return doc;
}

PathArtifact path_from_json(const Json& doc) {
  expect_format(doc, "surfcover.path");
  PathArtifact a;
  a.seed = uint(doc, "seed");
  if (field(doc, "backend") != "steiner") mismatch("unknown geodesic backend");
  a.geodesic.steinerPoints = static_cast<unsigned>(uint(doc, "steinerPoints"));
  a.graph.avgNeighbors = num(doc, "avgNeighbors");
  const Json& nodes = field(doc, "nodes");
  if (!nodes.is_array()) mismatch("nodes must be an array");
  for (const auto& n : nodes) {
    a.graph.nodes.push_back({static_cast<std::uint32_t>(uint(n, "cluster")),
                             static_cast<std::uint32_t>(uint(n, "face")),
                             to_vec(field(n, "point"))});
  }
  const Json& edges = field(doc, "edges");
  if (!edges.is_array()) mismatch("edges must be an array");
  for (const auto& e : edges) {
    const auto i = static_cast<std::uint32_t>(uint(e, "i"));
    const auto j = static_cast<std::uint32_t>(uint(e, "j"));
    if (i >= j || j >= a.graph.nodes.size()) mismatch("edge endpoints out of range");
    GeneratorGraph::Edge edge;
    edge.cost = num(e, "cost");
    edge.derived = field(e, "derived").get<bool>();
    const Json& path = field(e, "path");
    if (!path.is_array()) mismatch("edge path must be an array");
    for (const auto& p : path) edge.path.push_back(to_vec(p));
    a.graph.edges.emplace(GeneratorGraph::Key{i, j}, std::move(edge));
  }
  const Json& tour = field(doc, "tour");
  a.path.order = index_list(field(tour, "order"), "order");
  a.path.openOrder = index_list(field(tour, "openOrder"), "openOrder");
  a.path.totalCost = num(tour, "totalCost");
  a.path.openCost = num(tour, "openCost");
  for (const auto& p : field(tour, "polyline")) a.path.polyline.push_back(to_vec(p));
  for (auto i : a.path.order) {
    if (i >= a.graph.nodes.size()) mismatch("tour references a missing node");
  }
  return a;
}

Json viewpoints_to_json(const ViewpointArtifact& a) {
  Json doc = header("surfcover.viewpoints");
  const auto& p = a.candidateSet.params;
  doc["params"] = {{"standoff", p.standoff},
                   {"nozzleRadius", p.nozzleRadius},
                   {"capAngle", p.capAngle},
                   {"candidateCount", a.candidateSet.centers.size()},
                   {"separation", p.separation()},
                   {"thetaR", a.thetaR},
                   {"rollCount", a.rollCount}};
  Json centers = Json::array();
  for (const auto& c : a.candidateSet.centers) centers.push_back(vec(c));
  doc["candidateSet"] = std::move(centers);
  Json original = Json::array(), final = Json::array(), status = Json::array();
  for (const auto& wp : a.plan.waypoints) {
    original.push_back(ray_json(wp.original));
    final.push_back(wp.final ? ray_json(*wp.final) : Json(nullptr));
    status.push_back(to_string(wp.status));
  }
  doc["raysOriginal"] = std::move(original);
  doc["raysFinal"] = std::move(final);
  doc["status"] = std::move(status);
  doc["counts"] = {{"accepted", a.plan.accepted},
                   {"corrected", a.plan.corrected},
                   {"unrecoverable", a.plan.unrecoverable}};
  Json selection = Json::array();
  for (const auto& pose : a.tour.poses) {
    selection.push_back({{"waypointIndex", pose.waypointIndex},
                         {"rayOrigin", vec(pose.ray.origin)},
                         {"rayDirection", vec(pose.ray.direction)},
                         {"rollAngle", pose.rollAngle}});
  }
  doc["selection"] = std::move(selection);
  doc["tourMetricCost"] = a.tour.cost;
  return doc;
}

Json metrics_to_json(const MetricsReport& r, std::uint64_t seed) {
  Json doc = header("surfcover.metrics");
  doc["seed"] = seed;
  doc["coveragePct"] = r.coveragePct;
  doc["overlapPct"] = r.overlapPct;
  doc["rsdPct"] = r.rsdPct;
  doc["unreachPct"] = r.unreachPct;
  doc["unreachAreaPct"] = r.unreachAreaPct;
  doc["areaSD"] = r.areaSD;
  doc["sigmaE"] = r.sigmaE;
  doc["clusterAreas"] = r.clusterAreas;
  doc["unreachableFaces"] = r.unreachableFaces;
  doc["params"] = {{"r_c", r.nozzleRadius},
                   {"theta0", r.theta0},
                   {"coverageThreshold", r.coverageThreshold},
                   {"coverageWeighting", "area"},
                   {"unreachWeighting", "count"}};
  return doc;
}

}  // namespace surfcover
