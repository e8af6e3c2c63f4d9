#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ftlab/graph.hpp"

namespace ftlab {

// Physical port numbers of an instance edge, oriented as (at_u, at_v) for the
// canonical edge direction u < v. Instances embedded in a larger graph pass
// the ports of the underlying physical graph here.
struct PortPair {
  int at_u = -1;
  int at_v = -1;
};
using PortMap = std::vector<PortPair>;

// One light edge on the root-to-v path: the port to take at the parent, and
// the ports of the replica vertices that store the edge's label.
struct LightEdgeEntry {
  uint32_t parent_dfs_in = 0;
  uint16_t port = 0;
  std::vector<uint16_t> replica_ports;
};

struct TreeRoutingLabel {
  AncestryLabel range;
  std::vector<LightEdgeEntry> light;  // root-to-v order
};

struct TreeRoutingTable {
  AncestryLabel range;
  int tree_degree = 0;
  int port_to_parent = -1;  // -1 at the root
  int heavy_child_port = -1;
  AncestryLabel heavy_child_range;
  std::vector<uint16_t> heavy_replica_ports;
};

struct TreeRoutingScheme {
  int fault_budget = 0;
  std::vector<TreeRoutingLabel> labels;  // by vertex id, slot 0 unused
  std::vector<TreeRoutingTable> tables;
};

// Heavy-light routing data. Every vertex's label records its interval and the
// light edges above it; tables keep the two locally decidable ports. With a
// fault budget f, each recorded edge also carries the ports (at the parent)
// of the f+1..2f+1 sibling-block vertices that replicate the edge's label.
TreeRoutingScheme tree_routing_scheme(const Graph& g, const SpanningTree& t, int fault_budget,
                                      const PortMap* ports = nullptr);

// Replica set Gamma of a tree edge (parent u, child v): {u, v} when
// deg(u,T) <= f+1, otherwise the block of f+1..2f+1 children of u (ascending
// vertex id) that contains v.
std::vector<int> gamma_set(const SpanningTree& t, int parent, int child, int fault_budget);

struct NextHop {
  bool arrived = false;
  bool up = false;  // next hop is the parent edge
  int port = -1;
  // ports at the current vertex of the replicas of the next-hop edge
  // (meaningful for down hops only; up-hop labels are stored locally)
  std::vector<uint16_t> replica_ports;
};

// Computes the port at the table's vertex toward the target, using only the
// table and the target's label.
NextHop tree_route_next_hop(const TreeRoutingTable& table, const TreeRoutingLabel& target);

// Fixed-width byte encoding used inside XOR-accumulated identifiers. Encoded
// size depends only on the entry counts, so instances pad to their maximum.
size_t tree_label_encoded_size(const TreeRoutingLabel& label);
void tree_label_encode(const TreeRoutingLabel& label, std::span<uint8_t> out);
TreeRoutingLabel tree_label_decode(std::span<const uint8_t> in);

}  // namespace ftlab
