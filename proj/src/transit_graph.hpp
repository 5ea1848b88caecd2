#pragma once

#include <span>
#include <vector>

#include "pipmesh/mesh.hpp"

namespace pipmesh::detail {

// Search graph for the exact solver. Node 2*v + s is one pass through
// junction vertex v that enters on side s and leaves on side 1 - s; edges are
// directed arms between passes. Because a route passing v always uses one arm
// on each side, side capacity 1 is equivalent to "at most one pass through v
// over all routes".
class TransitGraph {
 public:
  struct Edge {
    int to = 0;  // transit node, or -(port + 1) when the arm ends at a port
    ArmId arm;
  };

  explicit TransitGraph(const MeshTopology& topology);

  int node_count() const { return static_cast<int>(out_.size()); }
  static int node(VertexId v, int entry_side) { return 2 * v.value + entry_side; }
  static VertexId vertex_of(int node) { return VertexId{node / 2}; }
  static bool is_port(int target) { return target < 0; }
  static PortId port_of(int target) { return PortId{-target - 1}; }

  std::span<const Edge> out(int node) const { return out_[static_cast<std::size_t>(node)]; }
  std::span<const Edge> from_port(PortId p) const { return port_out_[p.index()]; }

  // Reverse adjacency: edges into a transit node (`to` holds the predecessor
  // node or encoded port), and edges into a port.
  std::span<const Edge> in(int node) const { return in_[static_cast<std::size_t>(node)]; }
  std::span<const Edge> into_port(PortId p) const { return port_in_[p.index()]; }

 private:
  std::vector<std::vector<Edge>> out_;
  std::vector<std::vector<Edge>> in_;
  std::vector<std::vector<Edge>> port_out_;
  std::vector<std::vector<Edge>> port_in_;
};

}  // namespace pipmesh::detail
