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

#include "surfcover/mesh_io.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "surfcover/error.hpp"

namespace surfcover {

namespace fs = std::filesystem;

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

[[noreturn]] void parse_fail(const fs::path& path, std::size_t line,
                             const std::string& what) {
  throw Error(ErrorCode::kParse,
              path.string() + ":" + std::to_string(line) + ": " + what);
}

void fan(const std::vector<std::uint32_t>& poly,
         std::vector<TriangleMesh::Face>& faces) {
  for (std::size_t k = 1; k + 1 < poly.size(); ++k) {
    faces.push_back({poly[0], poly[k], poly[k + 1]});
  }
}

TriangleMesh load_obj(const fs::path& path, MeshReport* report) {
  std::istringstream in(read_file(path));
  std::vector<Vec3> vertices;
  std::vector<TriangleMesh::Face> faces;
  std::string line;
  std::size_t lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag[0] == '#') continue;
    if (tag == "v") {
      Vec3 p;
      if (!(ls >> p.x() >> p.y() >> p.z())) parse_fail(path, lineNo, "bad vertex");
      vertices.push_back(p);
    } else if (tag == "f") {
      std::vector<std::uint32_t> poly;
      std::string tok;
      while (ls >> tok) {
        const std::string head = tok.substr(0, tok.find('/'));
        long long idx = 0;
        try {
          std::size_t used = 0;
          idx = std::stoll(head, &used);
          if (used != head.size()) throw std::invalid_argument(head);
        } catch (const std::exception&) {
          parse_fail(path, lineNo, "bad face index '" + tok + "'");
        }
        const auto n = static_cast<long long>(vertices.size());
        if (idx < 0) idx += n + 1;
        if (idx < 1 || idx > n) parse_fail(path, lineNo, "face index out of range");
        poly.push_back(static_cast<std::uint32_t>(idx - 1));
      }
      if (poly.size() < 3) parse_fail(path, lineNo, "face with fewer than 3 vertices");
      fan(poly, faces);
    }
  }
  return TriangleMesh::build(std::move(vertices), std::move(faces), report);
}

struct Welder {
  std::map<std::array<double, 3>, std::uint32_t> ids;
  std::vector<Vec3> vertices;
  std::uint32_t operator()(const Vec3& p) {
    auto [it, inserted] = ids.try_emplace(
        std::array<double, 3>{p.x(), p.y(), p.z()},
        static_cast<std::uint32_t>(vertices.size()));
    if (inserted) vertices.push_back(p);
    return it->second;
  }
};

TriangleMesh load_stl(const fs::path& path, MeshReport* report) {
  const std::string data = read_file(path);
  Welder weld;
  std::vector<TriangleMesh::Face> faces;
  bool binary = false;
  if (data.size() >= 84) {
    std::uint32_t n = 0;
    std::memcpy(&n, data.data() + 80, 4);
    binary = data.size() == 84 + 50ull * n;
  }
  if (binary) {
    std::uint32_t n = 0;
    std::memcpy(&n, data.data() + 80, 4);
    for (std::uint32_t t = 0; t < n; ++t) {
      const char* rec = data.data() + 84 + 50ull * t + 12;
      TriangleMesh::Face f{};
      for (int k = 0; k < 3; ++k) {
        float xyz[3];
        std::memcpy(xyz, rec + 12 * k, 12);
        f[k] = weld(Vec3(xyz[0], xyz[1], xyz[2]));
      }
      faces.push_back(f);
    }
  } else {
    std::istringstream in(data);
    std::string line;
    std::size_t lineNo = 0;
    std::vector<std::uint32_t> loop;
    bool sawSolid = false;
    while (std::getline(in, line)) {
      ++lineNo;
      std::istringstream ls(line);
      std::string tag;
      if (!(ls >> tag)) continue;
      tag = lower(tag);
      if (tag == "solid") {
        sawSolid = true;
      } else if (tag == "vertex") {
        Vec3 p;
        if (!(ls >> p.x() >> p.y() >> p.z())) parse_fail(path, lineNo, "bad vertex");
        loop.push_back(weld(p));
      } else if (tag == "endloop") {
        if (loop.size() < 3) parse_fail(path, lineNo, "facet with fewer than 3 vertices");
        fan(loop, faces);
        loop.clear();
      }
    }
    if (!sawSolid) parse_fail(path, 1, "not an STL file");
  }
  return TriangleMesh::build(std::move(weld.vertices), std::move(faces), report);
}

TriangleMesh load_ply(const fs::path& path, MeshReport* report) {
  std::istringstream in(read_file(path));
  std::string line;
  std::size_t lineNo = 0;
  auto next = [&](std::string& out) {
    while (std::getline(in, out)) {
      ++lineNo;
      if (!out.empty() && out.back() == '\r') out.pop_back();
      if (out.find_first_not_of(" \t") != std::string::npos) return true;
    }
    return false;
  };
  if (!next(line) || line.rfind("ply", 0) != 0) parse_fail(path, lineNo, "missing ply magic");

  struct Element {
    std::string name;
    std::size_t count = 0;
    std::vector<std::string> props;
    bool hasList = false;
  };
  std::vector<Element> elements;
  for (;;) {
    if (!next(line)) parse_fail(path, lineNo, "unterminated header");
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "format") {
      std::string fmt;
      ls >> fmt;
      if (fmt != "ascii") parse_fail(path, lineNo, "only ASCII PLY is supported");
    } else if (tag == "element") {
      Element e;
      ls >> e.name >> e.count;
      elements.push_back(e);
    } else if (tag == "property") {
      if (elements.empty()) parse_fail(path, lineNo, "property before element");
      std::string type;
      ls >> type;
      std::string name;
      if (type == "list") {
        std::string countType, itemType;
        ls >> countType >> itemType >> name;
        elements.back().hasList = true;
      } else {
        ls >> name;
      }
      elements.back().props.push_back(name);
    } else if (tag == "end_header") {
      break;
    }
  }

  std::vector<Vec3> vertices;
  std::vector<TriangleMesh::Face> faces;
  for (const Element& e : elements) {
    int ix = -1, iy = -1, iz = -1;
    for (std::size_t k = 0; k < e.props.size(); ++k) {
      if (e.props[k] == "x") ix = static_cast<int>(k);
      if (e.props[k] == "y") iy = static_cast<int>(k);
      if (e.props[k] == "z") iz = static_cast<int>(k);
    }
    for (std::size_t r = 0; r < e.count; ++r) {
      if (!next(line)) parse_fail(path, lineNo, "truncated " + e.name + " data");
      std::istringstream ls(line);
      if (e.name == "vertex") {
        if (ix < 0 || iy < 0 || iz < 0) parse_fail(path, lineNo, "vertex lacks x/y/z");
        std::vector<double> vals;
        double v;
        while (ls >> v) vals.push_back(v);
        if (vals.size() < e.props.size()) parse_fail(path, lineNo, "short vertex record");
        vertices.emplace_back(vals[ix], vals[iy], vals[iz]);
      } else if (e.name == "face") {
        std::size_t n = 0;
        if (!(ls >> n)) parse_fail(path, lineNo, "bad face record");
        std::vector<std::uint32_t> poly(n);
        for (auto& idx : poly) {
          long long raw;
          if (!(ls >> raw) || raw < 0) parse_fail(path, lineNo, "bad face index");
          idx = static_cast<std::uint32_t>(raw);
        }
        if (n < 3) parse_fail(path, lineNo, "face with fewer than 3 vertices");
        fan(poly, faces);
      }
    }
  }
  for (const auto& f : faces) {
    for (auto v : f) {
      if (v >= vertices.size()) parse_fail(path, lineNo, "face index out of range");
    }
  }
  return TriangleMesh::build(std::move(vertices), std::move(faces), report);
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out.precision(17);
  return out;
}

}  // namespace

std::optional<MeshFormat> parse_mesh_format(std::string_view name) {
  const std::string s = lower(std::string(name));
  if (s == "obj") return MeshFormat::kObj;
  if (s == "stl") return MeshFormat::kStl;
  if (s == "ply") return MeshFormat::kPly;
  return std::nullopt;
}

std::optional<MeshFormat> format_from_extension(const fs::path& path) {
  std::string ext = path.extension().string();
  if (!ext.empty() && ext[0] == '.') ext.erase(0, 1);
  return parse_mesh_format(ext);
}

TriangleMesh load_mesh(const fs::path& path, MeshFormat format,
                       MeshReport* report) {
  switch (format) {
    case MeshFormat::kObj: return load_obj(path, report);
    case MeshFormat::kStl: return load_stl(path, report);
    case MeshFormat::kPly: return load_ply(path, report);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown mesh format");
}

TriangleMesh load_mesh(const fs::path& path, MeshReport* report) {
  const auto format = format_from_extension(path);
  if (!format) {
    throw Error(ErrorCode::kInvalidArgument,
                "cannot infer mesh format from " + path.string());
  }
  return load_mesh(path, *format, report);
}

void write_obj(const fs::path& path, const TriangleMesh& mesh) {
  auto out = open_out(path);
  for (const Vec3& v : mesh.vertices()) {
    out << "v " << v.x() << ' ' << v.y() << ' ' << v.z() << '\n';
  }
  for (const auto& f : mesh.faces()) {
    out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
  }
}

void write_ascii_stl(const fs::path& path, const TriangleMesh& mesh) {
  auto out = open_out(path);
  out << "solid surfcover\n";
  for (std::size_t f = 0; f < mesh.faceCount(); ++f) {
    const Vec3& n = mesh.faceNormals()[f];
    out << "  facet normal " << n.x() << ' ' << n.y() << ' ' << n.z() << "\n"
        << "    outer loop\n";
    for (auto v : mesh.faces()[f]) {
      const Vec3& p = mesh.vertices()[v];
      out << "      vertex " << p.x() << ' ' << p.y() << ' ' << p.z() << '\n';
    }
    out << "    endloop\n  endfacet\n";
  }
  out << "endsolid surfcover\n";
}

void write_colored_ply(const fs::path& path, const TriangleMesh& mesh,
                       std::span<const std::array<std::uint8_t, 3>> faceColors) {
  if (faceColors.size() != mesh.faceCount()) {
    throw Error(ErrorCode::kInvalidArgument, "one color per face required");
  }
  auto out = open_out(path);
  out << "ply\nformat ascii 1.0\n"
      << "element vertex " << mesh.vertexCount() << "\n"
      << "property double x\nproperty double y\nproperty double z\n"
      << "element face " << mesh.faceCount() << "\n"
      << "property list uchar int vertex_indices\n"
      << "property uchar red\nproperty uchar green\nproperty uchar blue\n"
      << "end_header\n";
  for (const Vec3& v : mesh.vertices()) {
    out << v.x() << ' ' << v.y() << ' ' << v.z() << '\n';
  }
  for (std::size_t f = 0; f < mesh.faceCount(); ++f) {
    const auto& t = mesh.faces()[f];
    const auto& c = faceColors[f];
    out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << ' ' << int(c[0]) << ' '
        << int(c[1]) << ' ' << int(c[2]) << '\n';
  }
}

void write_polyline_obj(const fs::path& path, std::span<const Vec3> polyline) {
  auto out = open_out(path);
  for (const Vec3& p : polyline) {
    out << "v " << p.x() << ' ' << p.y() << ' ' << p.z() << '\n';
  }
  for (std::size_t i = 1; i < polyline.size(); ++i) {
    out << "l " << i << ' ' << i + 1 << '\n';
  }
}

std::array<std::uint8_t, 3> cluster_color(std::uint32_t cluster) {
  // Golden-angle hue walk, fixed saturation/value.
  const double h = std::fmod(cluster * 137.508, 360.0) / 60.0;
  const double s = 0.65, v = 0.95;
  const double c = v * s;
  const double x = c * (1.0 - std::abs(std::fmod(h, 2.0) - 1.0));
  double r = 0, g = 0, b = 0;
  switch (static_cast<int>(h)) {
    case 0: r = c; g = x; break;
    case 1: r = x; g = c; break;
    case 2: g = c; b = x; break;
    case 3: g = x; b = c; break;
    case 4: r = x; b = c; break;
    default: r = c; b = x; break;
  }
  const double m = v - c;
  auto q = [&](double u) {
    return static_cast<std::uint8_t>(std::lround(255.0 * (u + m)));
  };
  return {q(r), q(g), q(b)};
}

}  // namespace surfcover
