#include "ftlab/component_tree.hpp"

#include <algorithm>
#include <limits>

namespace ftlab {

ComponentTree build_component_tree(const std::vector<TreeFault>& faults) {
  require(!faults.empty(), ErrorKind::EmptyTreeFaults, "no faulty tree edges");
  ComponentTree ct;
  ct.nodes_.push_back({{0, std::numeric_limits<uint32_t>::max()}, 0, -1, -1});
  for (size_t i = 0; i < faults.size(); ++i) {
    const TreeFault& fe = faults[i];
    // the child endpoint is the one that is not an ancestor of the other
    bool u_parent = is_ancestor(fe.anc_u, fe.anc_v);
    require(u_parent || is_ancestor(fe.anc_v, fe.anc_u), ErrorKind::BadVertexId,
            "tree fault endpoints are not in ancestry relation");
    ComponentTree::Node node;
    node.rep = u_parent ? fe.anc_v : fe.anc_u;
    node.rep_vertex = u_parent ? fe.id_v : fe.id_u;
    node.fault_index = static_cast<int>(i);
    ct.nodes_.push_back(node);
  }

  ct.tuples_.reserve(2 * ct.nodes_.size());
  for (int c = 0; c < ct.size(); ++c) {
    ct.tuples_.push_back({ct.nodes_[c].rep.dfs_in, c, false});
    ct.tuples_.push_back({ct.nodes_[c].rep.dfs_out, c, true});
  }
  std::sort(ct.tuples_.begin(), ct.tuples_.end(), [](const auto& a, const auto& b) {
    if (a.time != b.time) return a.time < b.time;
    return a.close < b.close;  // defensive; timestamps are distinct within one tree
  });

  // One scan assigns parents: an open tuple right after an open tuple hangs
  // below it; right after a close tuple it is a sibling of the closed node.
  for (size_t i = 1; i < ct.tuples_.size(); ++i) {
    const auto& cur = ct.tuples_[i];
    if (cur.close) continue;
    const auto& prev = ct.tuples_[i - 1];
    int parent = prev.close ? ct.nodes_[prev.comp].parent : prev.comp;
    ct.nodes_[cur.comp].parent = parent;
  }

  ct.children_.assign(ct.size(), {});
  for (int c = 1; c < ct.size(); ++c) ct.children_[ct.nodes_[c].parent].push_back(c);
  return ct;
}

int ComponentTree::locate(const AncestryLabel& anc) const {
  // last tuple with time <= dfs_in of the query vertex
  auto it = std::upper_bound(
      tuples_.begin(), tuples_.end(), anc.dfs_in,
      [](uint32_t time, const Tuple& tp) { return time < tp.time; });
  require(it != tuples_.begin(), ErrorKind::IndexOutOfRange, "interval before the root");
  const Tuple& last = *(it - 1);
  if (!last.close) return last.comp;
  return nodes_[last.comp].parent;
}

}  // namespace ftlab
