#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pipmesh/ids.hpp"

namespace pipmesh {

// Terminal slots of a PUC. Left/Right are the two ends of the coupler;
// Top is the lane bordering the owner cell, Bottom the lane on the far side.
enum class TerminalSlot : std::uint8_t {
  kLeftTop = 0,
  kLeftBottom = 1,
  kRightTop = 2,
  kRightBottom = 3,
};

enum class ArmKind : std::uint8_t { kBar, kCross };

const char* to_string(TerminalSlot slot);
const char* to_string(ArmKind kind);

// An arm endpoint: either a junction vertex or a boundary port.
struct Endpoint {
  enum class Kind : std::uint8_t { kVertex, kPort };

  Kind kind = Kind::kVertex;
  std::int32_t id = -1;

  static constexpr Endpoint vertex(VertexId v) { return {Kind::kVertex, v.value}; }
  static constexpr Endpoint port(PortId p) { return {Kind::kPort, p.value}; }

  constexpr bool is_vertex() const { return kind == Kind::kVertex; }
  constexpr bool is_port() const { return kind == Kind::kPort; }
  constexpr VertexId as_vertex() const { return VertexId{id}; }
  constexpr PortId as_port() const { return PortId{id}; }

  friend constexpr auto operator<=>(const Endpoint&, const Endpoint&) = default;
};

std::string to_string(Endpoint e);

struct CellCoord {
  int row = 0;
  int col = 0;
  friend constexpr auto operator<=>(const CellCoord&, const CellCoord&) = default;
};

struct Puc {
  PucId id;
  CellCoord owner;
  int side = 0;  // 0=E 1=SE 2=SW 3=W 4=NW 5=NE of the owner cell
  std::array<Endpoint, 4> terminals;  // indexed by TerminalSlot

  Endpoint terminal(TerminalSlot slot) const {
    return terminals[static_cast<std::size_t>(slot)];
  }
};

struct JunctionVertex {
  VertexId id;
  std::array<ArmId, 4> side_a;
  std::array<ArmId, 4> side_b;
};

struct Port {
  PortId id;
  std::array<ArmId, 2> in_arms;
  std::array<ArmId, 2> out_arms;
};

struct DirectedArm {
  ArmId id;
  PucId puc;
  ArmKind kind = ArmKind::kBar;
  Endpoint tail;
  Endpoint head;
};

// Loosely typed mesh description, as read from a document. Every field is
// checked by MeshTopology::from_parts before a topology is produced.
struct MeshParts {
  struct PucRecord {
    PucId id;
    CellCoord owner;
    int side = 0;
    std::vector<Endpoint> terminals;
  };
  struct VertexRecord {
    VertexId id;
    std::vector<ArmId> side_a;
    std::vector<ArmId> side_b;
  };
  struct PortRecord {
    PortId id;
    std::vector<ArmId> in_arms;
    std::vector<ArmId> out_arms;
  };

  int height = 0;
  int width = 0;
  std::vector<PucRecord> pucs;
  std::vector<VertexRecord> vertices;
  std::vector<PortRecord> ports;
  std::vector<DirectedArm> arms;
};

// Thrown when a mesh description breaks a structural invariant. invariant()
// names the first rule that failed.
class MeshValidationError : public std::runtime_error {
 public:
  MeshValidationError(std::string invariant, const std::string& detail);
  const std::string& invariant() const { return invariant_; }

 private:
  std::string invariant_;
};

// Immutable PUC mesh graph. Safe to share between threads once built.
class MeshTopology {
 public:
  static MeshTopology from_parts(const MeshParts& parts);

  int height() const { return height_; }
  int width() const { return width_; }

  std::span<const Puc> pucs() const { return pucs_; }
  std::span<const JunctionVertex> vertices() const { return vertices_; }
  std::span<const Port> ports() const { return ports_; }
  std::span<const DirectedArm> arms() const { return arms_; }

  const Puc& puc(PucId id) const { return pucs_.at(id.index()); }
  const JunctionVertex& vertex(VertexId id) const { return vertices_.at(id.index()); }
  const Port& port(PortId id) const { return ports_.at(id.index()); }
  const DirectedArm& arm(ArmId id) const { return arms_.at(id.index()); }

  bool contains(PortId id) const { return id.valid() && id.index() < ports_.size(); }
  bool contains(ArmId id) const { return id.valid() && id.index() < arms_.size(); }

  std::span<const ArmId> out_arms(Endpoint e) const;
  std::span<const ArmId> in_arms(Endpoint e) const;
  std::span<const ArmId> arms_of(PucId puc) const { return puc_arms_.at(puc.index()); }

  ArmId reverse(ArmId arm) const { return reverse_.at(arm.index()); }

  // 0 when `arm` lies on side_a of `v`, 1 for side_b. The arm must touch v.
  int side_of(VertexId v, ArmId arm) const;

  // PUC bound on the given side (0 = a, 1 = b) of a vertex.
  PucId side_puc(VertexId v, int side) const { return vertex_pucs_.at(v.index())[side]; }

  MeshParts to_parts() const;

 private:
  MeshTopology() = default;

  int height_ = 0;
  int width_ = 0;
  std::vector<Puc> pucs_;
  std::vector<JunctionVertex> vertices_;
  std::vector<Port> ports_;
  std::vector<DirectedArm> arms_;

  std::vector<std::vector<ArmId>> vertex_out_;
  std::vector<std::vector<ArmId>> vertex_in_;
  std::vector<std::vector<ArmId>> port_out_;
  std::vector<std::vector<ArmId>> port_in_;
  std::vector<std::array<ArmId, 8>> puc_arms_;
  std::vector<std::array<PucId, 2>> vertex_pucs_;
  std::vector<ArmId> reverse_;
};

// Builds the hexagonal mesh of `height` x `width` pointy-top cells in odd-row
// offset layout. Throws std::invalid_argument for non-positive sizes.
MeshTopology build_hex_mesh(int height, int width);

// Ports in (corner position, owning PUC, terminal slot) order. The position
// in this list is the "port index" used by the rotor scheduler.
std::vector<PortId> enumerate_ports(const MeshTopology& topology);

// Cell across side `side` of `cell`; may lie outside the grid.
CellCoord neighbor_cell(CellCoord cell, int side);

bool in_grid(CellCoord cell, int height, int width);

// True when all six neighbors of `cell` exist in an H x W grid.
bool is_interior_cell(CellCoord cell, int height, int width);

// The cell whose corner wedge holds vertex `v`: the one cell bordering both
// PUCs fused at v. Only meaningful for hexagonal meshes; the result may lie
// outside the grid for vertices on the boundary.
CellCoord attributed_cell(const MeshTopology& topology, VertexId v);

}  // namespace pipmesh
