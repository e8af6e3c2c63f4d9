#pragma once

#include <cstdint>
#include <vector>

#include "ftlab/graph.hpp"

namespace ftlab {

// A faulty tree edge described by its endpoint ancestry intervals and ids.
struct TreeFault {
  AncestryLabel anc_u;
  AncestryLabel anc_v;
  int id_u = 0;
  int id_v = 0;
};

// The tree of connected components of T minus the faulty tree edges. Node 0
// is the component of the root (sentinel interval); every other node is
// represented by the child endpoint of its faulty edge.
class ComponentTree {
 public:
  struct Node {
    AncestryLabel rep;        // interval of the representative (highest) vertex
    int rep_vertex = 0;       // its id; 0 for the root component
    int parent = -1;          // component tree parent
    int fault_index = -1;     // index into the fault list that created this node
  };

  const std::vector<Node>& nodes() const { return nodes_; }
  int size() const { return static_cast<int>(nodes_.size()); }
  const std::vector<int>& children(int c) const { return children_[c]; }

  // Component of a vertex given its ancestry interval; binary search over the
  // sorted open/close timestamps.
  int locate(const AncestryLabel& anc) const;

  friend ComponentTree build_component_tree(const std::vector<TreeFault>& faults);

 private:
  struct Tuple {
    uint32_t time = 0;
    int comp = 0;
    bool close = false;
  };

  std::vector<Node> nodes_;
  std::vector<std::vector<int>> children_;
  std::vector<Tuple> tuples_;
};

// Builds the component tree from the faulty tree edges alone, by one sort of
// the 2(f+1) interval endpoints and a single scan. Throws EmptyTreeFaults on
// an empty fault list (callers short-circuit that case).
ComponentTree build_component_tree(const std::vector<TreeFault>& faults);

}  // namespace ftlab
