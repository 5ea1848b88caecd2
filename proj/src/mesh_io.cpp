#include "pipmesh/mesh_io.hpp"

#include <charconv>

#include <fmt/format.h>

namespace pipmesh {

DocumentError::DocumentError(std::string field, const std::string& detail)
    : std::runtime_error(fmt::format("field '{}': {}", field, detail)), field_(std::move(field)) {}

namespace json_util {

std::string join(std::string_view path, std::string_view key) {
  if (path.empty()) return std::string(key);
  return fmt::format("{}.{}", path, key);
}

std::string join(std::string_view path, std::size_t index) {
  return fmt::format("{}[{}]", path, index);
}

const Json& require(const Json& object, std::string_view key, std::string_view path) {
  if (!object.is_object()) throw DocumentError(std::string(path.empty() ? "<root>" : path), "expected object");
  auto it = object.find(std::string(key));
  if (it == object.end()) throw DocumentError(join(path, key), "missing");
  return *it;
}

const Json& require_array(const Json& object, std::string_view key, std::string_view path) {
  const auto& v = require(object, key, path);
  if (!v.is_array()) throw DocumentError(join(path, key), "expected array");
  return v;
}

int as_int(const Json& value, std::string_view path) {
  if (!value.is_number_integer()) throw DocumentError(std::string(path), "expected integer");
  return value.get<int>();
}

double as_number(const Json& value, std::string_view path) {
  if (!value.is_number()) throw DocumentError(std::string(path), "expected number");
  return value.get<double>();
}

std::string as_string(const Json& value, std::string_view path) {
  if (!value.is_string()) throw DocumentError(std::string(path), "expected string");
  return value.get<std::string>();
}

Json parse(std::string_view text, std::string_view what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw DocumentError(std::string(what), e.what());
  }
}

}  // namespace json_util

namespace {

using namespace json_util;

Endpoint parse_endpoint(const Json& value, const std::string& path) {
  const auto s = as_string(value, path);
  if (s.size() < 2 || (s[0] != 'v' && s[0] != 'p')) {
    throw DocumentError(path, fmt::format("bad endpoint '{}' (expected v<id> or p<id>)", s));
  }
  int id = -1;
  auto [ptr, ec] = std::from_chars(s.data() + 1, s.data() + s.size(), id);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw DocumentError(path, fmt::format("bad endpoint '{}'", s));
  }
  return s[0] == 'v' ? Endpoint::vertex(VertexId{id}) : Endpoint::port(PortId{id});
}

std::vector<ArmId> parse_arm_list(const Json& obj, std::string_view key, const std::string& path) {
  const auto& arr = require_array(obj, key, path);
  std::vector<ArmId> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    out.emplace_back(as_int(arr[i], join(join(path, key), i)));
  }
  return out;
}

template <typename Range>
Json ids(const Range& r) {
  Json out = Json::array();
  for (auto id : r) out.push_back(id.value);
  return out;
}

}  // namespace

Json mesh_to_json(const MeshTopology& t) {
  Json doc;
  doc["version"] = kMeshDocumentVersion;
  doc["height"] = t.height();
  doc["width"] = t.width();
  auto& pucs = doc["pucs"] = Json::array();
  for (const auto& p : t.pucs()) {
    Json terminals = Json::array();
    for (const auto& e : p.terminals) terminals.push_back(to_string(e));
    pucs.push_back({{"id", p.id.value},
                    {"owner_row", p.owner.row},
                    {"owner_col", p.owner.col},
                    {"side", p.side},
                    {"terminals", terminals}});
  }
  auto& vertices = doc["vertices"] = Json::array();
  for (const auto& v : t.vertices()) {
    vertices.push_back({{"id", v.id.value}, {"side_a", ids(v.side_a)}, {"side_b", ids(v.side_b)}});
  }
  auto& ports = doc["ports"] = Json::array();
  for (const auto& p : t.ports()) {
    ports.push_back({{"id", p.id.value}, {"in_arms", ids(p.in_arms)}, {"out_arms", ids(p.out_arms)}});
  }
  auto& arms = doc["arms"] = Json::array();
  for (const auto& a : t.arms()) {
    arms.push_back({{"id", a.id.value},
                    {"puc", a.puc.value},
                    {"kind", to_string(a.kind)},
                    {"tail", to_string(a.tail)},
                    {"head", to_string(a.head)}});
  }
  return doc;
}

MeshTopology mesh_from_json(const Json& doc, std::string_view path) {
  const int version = as_int(require(doc, "version", path), join(path, "version"));
  if (version != kMeshDocumentVersion) {
    throw DocumentError(join(path, "version"), fmt::format("unsupported version {}", version));
  }
  MeshParts parts;
  parts.height = as_int(require(doc, "height", path), join(path, "height"));
  parts.width = as_int(require(doc, "width", path), join(path, "width"));

  const auto pucs_path = join(path, "pucs");
  const auto& pucs = require_array(doc, "pucs", path);
  for (std::size_t i = 0; i < pucs.size(); ++i) {
    const auto p = join(pucs_path, i);
    MeshParts::PucRecord rec;
    rec.id = PucId{as_int(require(pucs[i], "id", p), join(p, "id"))};
    rec.owner.row = as_int(require(pucs[i], "owner_row", p), join(p, "owner_row"));
    rec.owner.col = as_int(require(pucs[i], "owner_col", p), join(p, "owner_col"));
    rec.side = as_int(require(pucs[i], "side", p), join(p, "side"));
    const auto& terms = require_array(pucs[i], "terminals", p);
    for (std::size_t k = 0; k < terms.size(); ++k) {
      rec.terminals.push_back(parse_endpoint(terms[k], join(join(p, "terminals"), k)));
    }
    parts.pucs.push_back(std::move(rec));
  }

  const auto vertices_path = join(path, "vertices");
  const auto& vertices = require_array(doc, "vertices", path);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const auto p = join(vertices_path, i);
    parts.vertices.push_back({VertexId{as_int(require(vertices[i], "id", p), join(p, "id"))},
                              parse_arm_list(vertices[i], "side_a", p),
                              parse_arm_list(vertices[i], "side_b", p)});
  }

  const auto ports_path = join(path, "ports");
  const auto& ports = require_array(doc, "ports", path);
  for (std::size_t i = 0; i < ports.size(); ++i) {
    const auto p = join(ports_path, i);
    parts.ports.push_back({PortId{as_int(require(ports[i], "id", p), join(p, "id"))},
                           parse_arm_list(ports[i], "in_arms", p),
                           parse_arm_list(ports[i], "out_arms", p)});
  }

  const auto arms_path = join(path, "arms");
  const auto& arms = require_array(doc, "arms", path);
  for (std::size_t i = 0; i < arms.size(); ++i) {
    const auto p = join(arms_path, i);
    DirectedArm a;
    a.id = ArmId{as_int(require(arms[i], "id", p), join(p, "id"))};
    a.puc = PucId{as_int(require(arms[i], "puc", p), join(p, "puc"))};
    const auto kind = as_string(require(arms[i], "kind", p), join(p, "kind"));
    if (kind == "bar") {
      a.kind = ArmKind::kBar;
    } else if (kind == "cross") {
      a.kind = ArmKind::kCross;
    } else {
      throw DocumentError(join(p, "kind"), fmt::format("unknown arm kind '{}'", kind));
    }
    a.tail = parse_endpoint(require(arms[i], "tail", p), join(p, "tail"));
    a.head = parse_endpoint(require(arms[i], "head", p), join(p, "head"));
    parts.arms.push_back(a);
  }
  return MeshTopology::from_parts(parts);
}

std::string export_mesh(const MeshTopology& topology) {
  return mesh_to_json(topology).dump(1);
}

MeshTopology import_mesh(std::string_view document) {
  return mesh_from_json(parse(document, "<mesh document>"));
}

}  // namespace pipmesh
