#include "pipmesh/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <utility>

#include <fmt/format.h>

namespace pipmesh {

const char* to_string(TerminalSlot slot) {
  switch (slot) {
    case TerminalSlot::kLeftTop: return "left_top";
    case TerminalSlot::kLeftBottom: return "left_bottom";
    case TerminalSlot::kRightTop: return "right_top";
    case TerminalSlot::kRightBottom: return "right_bottom";
  }
  return "?";
}

const char* to_string(ArmKind kind) { return kind == ArmKind::kBar ? "bar" : "cross"; }

std::string to_string(Endpoint e) {
  return fmt::format("{}{}", e.is_vertex() ? 'v' : 'p', e.id);
}

MeshValidationError::MeshValidationError(std::string invariant, const std::string& detail)
    : std::runtime_error(fmt::format("mesh invariant '{}' violated: {}", invariant, detail)),
      invariant_(std::move(invariant)) {}

namespace {

constexpr std::size_t slot_index(TerminalSlot s) { return static_cast<std::size_t>(s); }

// Slot pairs joined by each arm kind.
constexpr std::array<std::pair<TerminalSlot, TerminalSlot>, 2> kBarPairs = {{
    {TerminalSlot::kLeftTop, TerminalSlot::kRightTop},
    {TerminalSlot::kLeftBottom, TerminalSlot::kRightBottom},
}};
constexpr std::array<std::pair<TerminalSlot, TerminalSlot>, 2> kCrossPairs = {{
    {TerminalSlot::kLeftTop, TerminalSlot::kRightBottom},
    {TerminalSlot::kLeftBottom, TerminalSlot::kRightTop},
}};

[[noreturn]] void fail(const char* invariant, const std::string& detail) {
  throw MeshValidationError(invariant, detail);
}

int slot_of(const MeshParts::PucRecord& puc, Endpoint e) {
  for (std::size_t i = 0; i < puc.terminals.size(); ++i) {
    if (puc.terminals[i] == e) return static_cast<int>(i);
  }
  return -1;
}

bool slots_joined_by(ArmKind kind, int a, int b) {
  const auto& pairs = kind == ArmKind::kBar ? kBarPairs : kCrossPairs;
  for (auto [x, y] : pairs) {
    const int xi = static_cast<int>(x);
    const int yi = static_cast<int>(y);
    if ((a == xi && b == yi) || (a == yi && b == xi)) return true;
  }
  return false;
}

std::vector<ArmId> sorted(std::vector<ArmId> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

MeshTopology MeshTopology::from_parts(const MeshParts& parts) {
  if (parts.height < 1 || parts.width < 1) {
    fail("dimensions", fmt::format("height={} width={}", parts.height, parts.width));
  }
  const auto n_pucs = parts.pucs.size();
  const auto n_vertices = parts.vertices.size();
  const auto n_ports = parts.ports.size();
  const auto n_arms = parts.arms.size();

  for (std::size_t i = 0; i < n_pucs; ++i) {
    if (parts.pucs[i].id.index() != i) fail("dense-ids", fmt::format("pucs[{}]", i));
  }
  for (std::size_t i = 0; i < n_vertices; ++i) {
    if (parts.vertices[i].id.index() != i) fail("dense-ids", fmt::format("vertices[{}]", i));
  }
  for (std::size_t i = 0; i < n_ports; ++i) {
    if (parts.ports[i].id.index() != i) fail("dense-ids", fmt::format("ports[{}]", i));
  }
  for (std::size_t i = 0; i < n_arms; ++i) {
    if (parts.arms[i].id.index() != i) fail("dense-ids", fmt::format("arms[{}]", i));
  }

  for (const auto& p : parts.pucs) {
    if (p.terminals.size() != 4) {
      fail("puc-four-terminals",
           fmt::format("puc {} has {} terminals", p.id.value, p.terminals.size()));
    }
    if (p.side < 0 || p.side > 5) fail("puc-side", fmt::format("puc {}", p.id.value));
  }

  if (n_arms != 8 * n_pucs) {
    fail("arm-count", fmt::format("{} arms for {} pucs (expected {})", n_arms, n_pucs, 8 * n_pucs));
  }

  auto endpoint_ok = [&](Endpoint e) {
    if (e.id < 0) return false;
    return e.is_vertex() ? static_cast<std::size_t>(e.id) < n_vertices
                         : static_cast<std::size_t>(e.id) < n_ports;
  };
  for (const auto& p : parts.pucs) {
    for (const auto& t : p.terminals) {
      if (!endpoint_ok(t)) {
        fail("endpoint-reference", fmt::format("puc {} terminal {}", p.id.value, to_string(t)));
      }
    }
  }
  for (const auto& a : parts.arms) {
    if (!a.puc.valid() || a.puc.index() >= n_pucs) {
      fail("endpoint-reference", fmt::format("arm {} puc {}", a.id.value, a.puc.value));
    }
    if (!endpoint_ok(a.tail) || !endpoint_ok(a.head)) {
      fail("endpoint-reference", fmt::format("arm {}", a.id.value));
    }
  }
  auto arm_ref_ok = [&](ArmId id) { return id.valid() && id.index() < n_arms; };
  for (const auto& v : parts.vertices) {
    for (auto id : v.side_a) {
      if (!arm_ref_ok(id)) fail("endpoint-reference", fmt::format("vertex {}", v.id.value));
    }
    for (auto id : v.side_b) {
      if (!arm_ref_ok(id)) fail("endpoint-reference", fmt::format("vertex {}", v.id.value));
    }
  }
  for (const auto& p : parts.ports) {
    for (auto id : p.in_arms) {
      if (!arm_ref_ok(id)) fail("endpoint-reference", fmt::format("port {}", p.id.value));
    }
    for (auto id : p.out_arms) {
      if (!arm_ref_ok(id)) fail("endpoint-reference", fmt::format("port {}", p.id.value));
    }
  }

  if (4 * n_pucs != 2 * n_vertices + n_ports) {
    fail("terminal-conservation",
         fmt::format("4*{} != 2*{} + {}", n_pucs, n_vertices, n_ports));
  }

  // Each vertex fuses one terminal from each of two distinct PUCs; each port
  // terminates exactly one PUC terminal.
  std::vector<std::vector<PucId>> vertex_binders(n_vertices);
  std::vector<int> port_binders(n_ports, 0);
  for (const auto& p : parts.pucs) {
    for (const auto& t : p.terminals) {
      if (t.is_vertex()) {
        vertex_binders[static_cast<std::size_t>(t.id)].push_back(p.id);
      } else {
        ++port_binders[static_cast<std::size_t>(t.id)];
      }
    }
  }
  for (std::size_t v = 0; v < n_vertices; ++v) {
    const auto& b = vertex_binders[v];
    if (b.size() != 2 || b[0] == b[1]) {
      fail("terminal-binding", fmt::format("vertex {} bound by {} terminals", v, b.size()));
    }
  }
  for (std::size_t p = 0; p < n_ports; ++p) {
    if (port_binders[p] != 1) {
      fail("terminal-binding", fmt::format("port {} bound by {} terminals", p, port_binders[p]));
    }
  }

  // Arm wiring against the owning PUC's terminal slots.
  std::vector<std::array<int, 16>> puc_slot_use(n_pucs);
  for (auto& u : puc_slot_use) u.fill(0);
  for (const auto& a : parts.arms) {
    if (a.tail == a.head) fail("arm-distinct-endpoints", fmt::format("arm {}", a.id.value));
    const auto& p = parts.pucs[a.puc.index()];
    const int ts = slot_of(p, a.tail);
    const int hs = slot_of(p, a.head);
    if (ts < 0 || hs < 0 || !slots_joined_by(a.kind, ts, hs)) {
      fail("arm-kind-wiring",
           fmt::format("arm {} ({} {}->{}) does not match puc {} terminals", a.id.value,
                       to_string(a.kind), to_string(a.tail), to_string(a.head), p.id.value));
    }
    ++puc_slot_use[a.puc.index()][static_cast<std::size_t>(ts * 4 + hs)];
  }
  for (std::size_t p = 0; p < n_pucs; ++p) {
    for (auto pairs : {kBarPairs, kCrossPairs}) {
      for (auto [x, y] : pairs) {
        const auto xi = slot_index(x);
        const auto yi = slot_index(y);
        if (puc_slot_use[p][xi * 4 + yi] != 1 || puc_slot_use[p][yi * 4 + xi] != 1) {
          fail("arm-pairing",
               fmt::format("puc {} arm {}<->{} not present exactly once per direction", p,
                           to_string(x), to_string(y)));
        }
      }
    }
  }

  // Vertex sides: side_a/side_b hold exactly the 4 directed arms of one
  // bound PUC terminal each.
  std::vector<std::vector<ArmId>> touching(n_vertices);
  std::vector<std::vector<ArmId>> port_in(n_ports), port_out(n_ports);
  for (const auto& a : parts.arms) {
    for (auto e : {a.tail, a.head}) {
      if (e.is_vertex()) touching[static_cast<std::size_t>(e.id)].push_back(a.id);
    }
    if (a.head.is_port()) port_in[static_cast<std::size_t>(a.head.id)].push_back(a.id);
    if (a.tail.is_port()) port_out[static_cast<std::size_t>(a.tail.id)].push_back(a.id);
  }
  for (const auto& v : parts.vertices) {
    if (v.side_a.size() != 4 || v.side_b.size() != 4) {
      fail("vertex-sides", fmt::format("vertex {} sides have {} and {} arms", v.id.value,
                                       v.side_a.size(), v.side_b.size()));
    }
    const auto a = sorted(v.side_a);
    const auto b = sorted(v.side_b);
    std::vector<ArmId> both;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(both));
    if (!both.empty()) fail("vertex-sides", fmt::format("vertex {} sides overlap", v.id.value));
    for (const auto* side : {&a, &b}) {
      const PucId owner = parts.arms[(*side)[0].index()].puc;
      for (auto id : *side) {
        if (parts.arms[id.index()].puc != owner) {
          fail("vertex-sides", fmt::format("vertex {} side mixes pucs", v.id.value));
        }
      }
    }
    std::vector<ArmId> all = a;
    all.insert(all.end(), b.begin(), b.end());
    if (sorted(all) != sorted(touching[v.id.index()])) {
      fail("vertex-sides",
           fmt::format("vertex {} sides disagree with incident arms", v.id.value));
    }
  }
  for (const auto& p : parts.ports) {
    if (p.in_arms.size() != 2 || p.out_arms.size() != 2 ||
        sorted(p.in_arms) != sorted(port_in[p.id.index()]) ||
        sorted(p.out_arms) != sorted(port_out[p.id.index()])) {
      fail("port-arms", fmt::format("port {} must have 2 incoming and 2 outgoing arms",
                                    p.id.value));
    }
  }

  MeshTopology t;
  t.height_ = parts.height;
  t.width_ = parts.width;
  t.pucs_.reserve(n_pucs);
  for (const auto& p : parts.pucs) {
    Puc puc{p.id, p.owner, p.side, {}};
    std::copy(p.terminals.begin(), p.terminals.end(), puc.terminals.begin());
    t.pucs_.push_back(puc);
  }
  for (const auto& v : parts.vertices) {
    JunctionVertex jv{v.id, {}, {}};
    const auto a = sorted(v.side_a);
    const auto b = sorted(v.side_b);
    std::copy(a.begin(), a.end(), jv.side_a.begin());
    std::copy(b.begin(), b.end(), jv.side_b.begin());
    t.vertices_.push_back(jv);
  }
  for (const auto& p : parts.ports) {
    Port port{p.id, {}, {}};
    const auto in = sorted(p.in_arms);
    const auto out = sorted(p.out_arms);
    std::copy(in.begin(), in.end(), port.in_arms.begin());
    std::copy(out.begin(), out.end(), port.out_arms.begin());
    t.ports_.push_back(port);
  }
  t.arms_ = parts.arms;

  t.vertex_out_.resize(n_vertices);
  t.vertex_in_.resize(n_vertices);
  t.port_out_ = std::move(port_out);
  t.port_in_ = std::move(port_in);
  t.puc_arms_.resize(n_pucs);
  std::vector<int> fill(n_pucs, 0);
  for (const auto& a : t.arms_) {
    if (a.tail.is_vertex()) t.vertex_out_[static_cast<std::size_t>(a.tail.id)].push_back(a.id);
    if (a.head.is_vertex()) t.vertex_in_[static_cast<std::size_t>(a.head.id)].push_back(a.id);
    t.puc_arms_[a.puc.index()][static_cast<std::size_t>(fill[a.puc.index()]++)] = a.id;
  }
  t.vertex_pucs_.resize(n_vertices);
  for (const auto& v : t.vertices_) {
    t.vertex_pucs_[v.id.index()] = {t.arms_[v.side_a[0].index()].puc,
                                     t.arms_[v.side_b[0].index()].puc};
  }
  t.reverse_.assign(n_arms, ArmId{});
  for (const auto& a : t.arms_) {
    for (auto other : t.puc_arms_[a.puc.index()]) {
      const auto& b = t.arms_[other.index()];
      if (b.tail == a.head && b.head == a.tail) t.reverse_[a.id.index()] = b.id;
    }
  }
  return t;
}

std::span<const ArmId> MeshTopology::out_arms(Endpoint e) const {
  return e.is_vertex() ? std::span<const ArmId>(vertex_out_.at(static_cast<std::size_t>(e.id)))
                       : std::span<const ArmId>(port_out_.at(static_cast<std::size_t>(e.id)));
}

std::span<const ArmId> MeshTopology::in_arms(Endpoint e) const {
  return e.is_vertex() ? std::span<const ArmId>(vertex_in_.at(static_cast<std::size_t>(e.id)))
                       : std::span<const ArmId>(port_in_.at(static_cast<std::size_t>(e.id)));
}

int MeshTopology::side_of(VertexId v, ArmId arm) const {
  return arms_.at(arm.index()).puc == vertex_pucs_.at(v.index())[0] ? 0 : 1;
}

MeshParts MeshTopology::to_parts() const {
  MeshParts parts;
  parts.height = height_;
  parts.width = width_;
  for (const auto& p : pucs_) {
    parts.pucs.push_back({p.id, p.owner, p.side, {p.terminals.begin(), p.terminals.end()}});
  }
  for (const auto& v : vertices_) {
    parts.vertices.push_back(
        {v.id, {v.side_a.begin(), v.side_a.end()}, {v.side_b.begin(), v.side_b.end()}});
  }
  for (const auto& p : ports_) {
    parts.ports.push_back(
        {p.id, {p.in_arms.begin(), p.in_arms.end()}, {p.out_arms.begin(), p.out_arms.end()}});
  }
  parts.arms = arms_;
  return parts;
}

// ---------------------------------------------------------------------------
// Hexagonal construction.
//
// Lattice points use integer coordinates (x in units of sqrt(3)/2, y in units
// of 1/2, y pointing down), so corners of neighboring cells compare exactly.

namespace {

struct LatticePoint {
  int y = 0;
  int x = 0;
  friend constexpr auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
};

// Corner k lies between side k and side k+1 (lower-right, bottom, lower-left,
// upper-left, top, upper-right).
constexpr std::array<LatticePoint, 6> kCornerOffset = {{
    {1, 1}, {2, 0}, {1, -1}, {-1, -1}, {-2, 0}, {-1, 1},
}};

LatticePoint cell_center(CellCoord c) { return {3 * c.row, 2 * c.col + (c.row & 1)}; }

LatticePoint cell_corner(CellCoord c, int k) {
  const auto center = cell_center(c);
  const auto off = kCornerOffset[static_cast<std::size_t>(((k % 6) + 6) % 6)];
  return {center.y + off.y, center.x + off.x};
}

struct Vec {
  int x = 0;
  int y = 0;
};

Vec minus(LatticePoint a, LatticePoint b) { return {a.x - b.x, a.y - b.y}; }

// Sign-exact: the sqrt(3)/2 and 1/2 axis scales only multiply the result by a
// positive constant.
long cross(Vec a, Vec b) {
  return static_cast<long>(a.x) * b.y - static_cast<long>(a.y) * b.x;
}

double angle(Vec d) { return std::atan2(0.5 * d.y, std::sqrt(3.0) / 2.0 * d.x); }

struct PucGeometry {
  LatticePoint left;
  LatticePoint right;
};

struct PucEnd {
  int puc = 0;
  bool right = false;
};

}  // namespace

CellCoord neighbor_cell(CellCoord c, int side) {
  const int odd = c.row & 1;
  switch (((side % 6) + 6) % 6) {
    case 0: return {c.row, c.col + 1};
    case 1: return {c.row + 1, c.col + odd};
    case 2: return {c.row + 1, c.col - (1 - odd)};
    case 3: return {c.row, c.col - 1};
    case 4: return {c.row - 1, c.col - (1 - odd)};
    default: return {c.row - 1, c.col + odd};
  }
}

bool in_grid(CellCoord c, int height, int width) {
  return c.row >= 0 && c.row < height && c.col >= 0 && c.col < width;
}

bool is_interior_cell(CellCoord c, int height, int width) {
  if (!in_grid(c, height, width)) return false;
  for (int s = 0; s < 6; ++s) {
    if (!in_grid(neighbor_cell(c, s), height, width)) return false;
  }
  return true;
}

CellCoord attributed_cell(const MeshTopology& topology, VertexId v) {
  auto cells_of = [&](PucId id) {
    const auto& p = topology.puc(id);
    return std::array<CellCoord, 2>{p.owner, neighbor_cell(p.owner, p.side)};
  };
  const auto a = cells_of(topology.side_puc(v, 0));
  const auto b = cells_of(topology.side_puc(v, 1));
  for (auto ca : a) {
    for (auto cb : b) {
      if (ca == cb) return ca;
    }
  }
  throw std::logic_error(fmt::format("vertex {} joins pucs with no common cell", v.value));
}

MeshTopology build_hex_mesh(int height, int width) {
  if (height < 1 || width < 1) {
    throw std::invalid_argument(
        fmt::format("mesh dimensions must be positive (got {}x{})", height, width));
  }

  MeshParts parts;
  parts.height = height;
  parts.width = width;

  // One PUC per distinct cell side; cells are visited in (row, col, side)
  // order so the first visitor is the canonical owner.
  std::vector<PucGeometry> geometry;
  std::map<std::pair<LatticePoint, LatticePoint>, int> by_segment;
  for (int r = 0; r < height; ++r) {
    for (int c = 0; c < width; ++c) {
      const CellCoord cell{r, c};
      for (int s = 0; s < 6; ++s) {
        const auto left = cell_corner(cell, s - 1);
        const auto right = cell_corner(cell, s);
        const auto key = std::minmax(left, right);
        if (by_segment.contains(key)) continue;
        const int id = static_cast<int>(parts.pucs.size());
        by_segment.emplace(key, id);
        parts.pucs.push_back({PucId{id}, cell, s, std::vector<Endpoint>(4)});
        geometry.push_back({left, right});
      }
    }
  }

  std::map<LatticePoint, std::vector<PucEnd>> corners;
  for (std::size_t p = 0; p < geometry.size(); ++p) {
    corners[geometry[p].left].push_back({static_cast<int>(p), false});
    corners[geometry[p].right].push_back({static_cast<int>(p), true});
  }

  auto outward = [&](LatticePoint at, const PucEnd& e) {
    const auto& g = geometry[static_cast<std::size_t>(e.puc)];
    return minus(e.right ? g.left : g.right, at);
  };
  auto axis = [&](int puc) {
    const auto& g = geometry[static_cast<std::size_t>(puc)];
    return minus(g.right, g.left);
  };
  // Slot of end `e` whose lane faces the neighboring end `f` at corner `at`.
  auto facing_slot = [&](LatticePoint at, const PucEnd& e, const PucEnd& f) {
    const bool top = cross(axis(e.puc), outward(at, f)) > 0;
    if (e.right) return top ? TerminalSlot::kRightTop : TerminalSlot::kRightBottom;
    return top ? TerminalSlot::kLeftTop : TerminalSlot::kLeftBottom;
  };

  struct FusedTerminal {
    int puc;
    TerminalSlot slot;
  };
  std::vector<std::array<FusedTerminal, 2>> fused;

  for (auto& [at, ends] : corners) {
    std::sort(ends.begin(), ends.end(), [&](const PucEnd& a, const PucEnd& b) {
      return angle(outward(at, a)) < angle(outward(at, b));
    });
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    if (ends.size() == 2) {
      pairs = {{0, 1}};
    } else if (ends.size() == 3) {
      pairs = {{0, 1}, {1, 2}, {2, 0}};
    }
    std::set<std::pair<int, int>> consumed;
    for (auto [i, j] : pairs) {
      const auto si = facing_slot(at, ends[i], ends[j]);
      const auto sj = facing_slot(at, ends[j], ends[i]);
      const VertexId v{static_cast<int>(fused.size())};
      fused.push_back({{{ends[i].puc, si}, {ends[j].puc, sj}}});
      parts.pucs[static_cast<std::size_t>(ends[i].puc)].terminals[slot_index(si)] =
          Endpoint::vertex(v);
      parts.pucs[static_cast<std::size_t>(ends[j].puc)].terminals[slot_index(sj)] =
          Endpoint::vertex(v);
      consumed.insert({ends[i].puc, static_cast<int>(si)});
      consumed.insert({ends[j].puc, static_cast<int>(sj)});
    }
    std::vector<std::pair<int, int>> leftover;
    for (const auto& e : ends) {
      const auto top = e.right ? TerminalSlot::kRightTop : TerminalSlot::kLeftTop;
      const auto bottom = e.right ? TerminalSlot::kRightBottom : TerminalSlot::kLeftBottom;
      for (auto s : {top, bottom}) {
        if (!consumed.contains({e.puc, static_cast<int>(s)})) {
          leftover.emplace_back(e.puc, static_cast<int>(s));
        }
      }
    }
    std::sort(leftover.begin(), leftover.end());
    for (auto [puc, slot] : leftover) {
      const PortId port{static_cast<int>(parts.ports.size())};
      parts.ports.push_back({port, {}, {}});
      parts.pucs[static_cast<std::size_t>(puc)].terminals[static_cast<std::size_t>(slot)] =
          Endpoint::port(port);
    }
  }

  // Eight directed arms per PUC, in a fixed order.
  constexpr std::array<std::tuple<ArmKind, TerminalSlot, TerminalSlot>, 8> kArmOrder = {{
      {ArmKind::kBar, TerminalSlot::kLeftTop, TerminalSlot::kRightTop},
      {ArmKind::kBar, TerminalSlot::kRightTop, TerminalSlot::kLeftTop},
      {ArmKind::kBar, TerminalSlot::kLeftBottom, TerminalSlot::kRightBottom},
      {ArmKind::kBar, TerminalSlot::kRightBottom, TerminalSlot::kLeftBottom},
      {ArmKind::kCross, TerminalSlot::kLeftTop, TerminalSlot::kRightBottom},
      {ArmKind::kCross, TerminalSlot::kRightBottom, TerminalSlot::kLeftTop},
      {ArmKind::kCross, TerminalSlot::kLeftBottom, TerminalSlot::kRightTop},
      {ArmKind::kCross, TerminalSlot::kRightTop, TerminalSlot::kLeftBottom},
  }};
  std::vector<std::array<std::vector<ArmId>, 4>> at_terminal(parts.pucs.size());
  for (const auto& p : parts.pucs) {
    for (auto [kind, from, to] : kArmOrder) {
      const ArmId id{static_cast<int>(parts.arms.size())};
      parts.arms.push_back(
          {id, p.id, kind, p.terminals[slot_index(from)], p.terminals[slot_index(to)]});
      at_terminal[p.id.index()][slot_index(from)].push_back(id);
      at_terminal[p.id.index()][slot_index(to)].push_back(id);
    }
  }

  for (std::size_t v = 0; v < fused.size(); ++v) {
    const auto& [a, b] = fused[v];
    parts.vertices.push_back({VertexId{static_cast<int>(v)},
                              at_terminal[static_cast<std::size_t>(a.puc)][slot_index(a.slot)],
                              at_terminal[static_cast<std::size_t>(b.puc)][slot_index(b.slot)]});
  }
  for (const auto& a : parts.arms) {
    if (a.tail.is_port()) parts.ports[static_cast<std::size_t>(a.tail.id)].out_arms.push_back(a.id);
    if (a.head.is_port()) parts.ports[static_cast<std::size_t>(a.head.id)].in_arms.push_back(a.id);
  }

  return MeshTopology::from_parts(parts);
}

std::vector<PortId> enumerate_ports(const MeshTopology& topology) {
  // Port ids are assigned in enumeration order during construction; imported
  // meshes keep whatever dense order their document carries.
  std::vector<PortId> out;
  out.reserve(topology.ports().size());
  for (const auto& p : topology.ports()) out.push_back(p.id);
  return out;
}

}  // namespace pipmesh
