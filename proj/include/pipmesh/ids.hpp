#pragma once

#include <compare>
#include <cstdint>
#include <functional>

namespace pipmesh {

// Dense integer ids, tagged per entity kind so a port id cannot be passed
// where an arm id is expected.
template <typename Tag>
struct Id {
  std::int32_t value = -1;

  constexpr Id() = default;
  constexpr explicit Id(std::int32_t v) : value(v) {}

  constexpr bool valid() const { return value >= 0; }
  constexpr std::size_t index() const { return static_cast<std::size_t>(value); }

  friend constexpr auto operator<=>(Id, Id) = default;
};

using PucId = Id<struct PucTag>;
using VertexId = Id<struct VertexTag>;
using PortId = Id<struct PortTag>;
using ArmId = Id<struct ArmTag>;

}  // namespace pipmesh

template <typename Tag>
struct std::hash<pipmesh::Id<Tag>> {
  std::size_t operator()(pipmesh::Id<Tag> id) const noexcept {
    return std::hash<std::int32_t>{}(id.value);
  }
};
