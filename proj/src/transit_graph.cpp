#include "transit_graph.hpp"

namespace pipmesh::detail {

TransitGraph::TransitGraph(const MeshTopology& topology) {
  const auto n_nodes = 2 * topology.vertices().size();
  out_.resize(n_nodes);
  in_.resize(n_nodes);
  port_out_.resize(topology.ports().size());
  port_in_.resize(topology.ports().size());

  // Where an arm lands: the pass through its head vertex entering on the
  // arm's side, or the port itself.
  auto target = [&](const DirectedArm& a) {
    if (a.head.is_port()) return -(a.head.id + 1);
    return node(a.head.as_vertex(), topology.side_of(a.head.as_vertex(), a.id));
  };
  // Where an arm leaves from: the pass through its tail vertex that exits on
  // the arm's side.
  auto origin = [&](const DirectedArm& a) {
    if (a.tail.is_port()) return -(a.tail.id + 1);
    return node(a.tail.as_vertex(), 1 - topology.side_of(a.tail.as_vertex(), a.id));
  };

  for (const auto& a : topology.arms()) {
    const int from = origin(a);
    const int to = target(a);
    if (is_port(from)) {
      port_out_[port_of(from).index()].push_back({to, a.id});
    } else {
      out_[static_cast<std::size_t>(from)].push_back({to, a.id});
    }
    if (is_port(to)) {
      port_in_[port_of(to).index()].push_back({from, a.id});
    } else {
      in_[static_cast<std::size_t>(to)].push_back({from, a.id});
    }
  }
}

}  // namespace pipmesh::detail
