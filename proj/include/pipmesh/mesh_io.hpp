#pragma once

#include <string>
#include <string_view>

#include "pipmesh/json_util.hpp"
#include "pipmesh/mesh.hpp"

namespace pipmesh {

inline constexpr int kMeshDocumentVersion = 1;

// Mesh document: {version, height, width, pucs[], vertices[], ports[], arms[]}.
// Endpoints are written "v<id>" for junction vertices and "p<id>" for ports;
// PUC terminals are listed in slot order (left_top, left_bottom, right_top,
// right_bottom).
Json mesh_to_json(const MeshTopology& topology);
MeshTopology mesh_from_json(const Json& doc, std::string_view path = "");

std::string export_mesh(const MeshTopology& topology);

// Throws DocumentError for malformed fields and MeshValidationError when the
// described graph breaks a mesh invariant.
MeshTopology import_mesh(std::string_view document);

}  // namespace pipmesh
