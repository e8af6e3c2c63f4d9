#include "ftlab/cycle_labels.hpp"

#include "ftlab/rng.hpp"

namespace ftlab {

CycleLabeling assign_cycle_labels(const Graph& g, const SpanningTree& t, int bits, uint64_t seed,
                                  int fault_budget) {
  require(bits >= 1, ErrorKind::BadConfig, "label width must be >= 1");
  require(t.size() == g.n(), ErrorKind::Disconnected, "tree does not span the graph");

  CycleLabeling out;
  out.bits = bits;
  out.fault_budget = fault_budget;
  out.instance_id = derive_seed(seed, 0x6379636cu, (uint64_t(g.n()) << 32) | uint64_t(g.m()));

  SplitMix64 rng(derive_seed(seed, 0x706869u));
  out.edge_labels.assign(g.m(), {});
  // Per-vertex accumulator; after the bottom-up pass acc[v] is the XOR of
  // phi(e) over non-tree edges e with exactly one endpoint in the subtree of
  // v, which is precisely the XOR over fundamental cycles through (v,parent).
  std::vector<BitVec> acc(g.n() + 1, BitVec(bits));
  for (int e = 0; e < g.m(); ++e) {
    if (t.edge_in_tree(e)) continue;
    BitVec phi = BitVec::random(bits, rng);
    acc[g.edge(e).u].xor_with(phi);
    acc[g.edge(e).v].xor_with(phi);
    out.edge_labels[e].phi = std::move(phi);
  }
  const auto& order = t.preorder();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int v = *it;
    if (v == t.root()) continue;
    out.edge_labels[t.parent_edge(v)].phi = acc[v];
    acc[t.parent(v)].xor_with(acc[v]);
  }

  for (int e = 0; e < g.m(); ++e) {
    auto& lab = out.edge_labels[e];
    lab.is_tree_edge = t.edge_in_tree(e);
    lab.anc_u = t.anc(g.edge(e).u);
    lab.anc_v = t.anc(g.edge(e).v);
    lab.instance_id = out.instance_id;
  }

  out.vertex_labels.assign(g.n() + 1, {});
  for (int v = 1; v <= g.n(); ++v) {
    out.vertex_labels[v].anc = t.anc(v);
    out.vertex_labels[v].n = g.n();
    out.vertex_labels[v].fault_budget = fault_budget;
    out.vertex_labels[v].instance_id = out.instance_id;
  }
  return out;
}

bool is_induced_cut(const std::vector<const CycleLabel*>& labels) {
  if (labels.empty()) return true;
  BitVec x(labels.front()->phi.size());
  uint64_t instance = labels.front()->instance_id;
  for (const CycleLabel* lab : labels) {
    require(lab->phi.size() == x.size() && lab->instance_id == instance,
            ErrorKind::MixedInstance, "labels from different labelings");
    x.xor_with(lab->phi);
  }
  return x.is_zero();
}

bool is_induced_cut(const std::vector<CycleLabel>& labels) {
  std::vector<const CycleLabel*> ptrs;
  ptrs.reserve(labels.size());
  for (const auto& l : labels) ptrs.push_back(&l);
  return is_induced_cut(ptrs);
}

ConnectivityAnswer cycle_decode(const VertexCycleLabel& vs, const VertexCycleLabel& vt,
                                const std::vector<CycleLabel>& fl) {
  require(vs.instance_id == vt.instance_id, ErrorKind::MixedInstance,
          "endpoint labels from different labelings");
  require(fl.size() <= vs.fault_budget, ErrorKind::TooManyFaults,
          "fault set exceeds the labeling fault budget");
  if (fl.empty()) return {true};

  size_t b = fl.front().phi.size();
  // Rows 0 and 1 are the parity flags for the root-to-s and root-to-t paths;
  // rows 2..b+1 carry phi.
  Gf2Matrix a(b + 2);
  for (const auto& lab : fl) {
    require(lab.instance_id == vs.instance_id && lab.phi.size() == b, ErrorKind::MixedInstance,
            "fault label from a different labeling");
    BitVec col(b + 2);
    if (lab.is_tree_edge) {
      // A tree edge lies on the root-x path iff both endpoints are ancestors of x.
      bool on_s = is_ancestor(lab.anc_u, vs.anc) && is_ancestor(lab.anc_v, vs.anc);
      bool on_t = is_ancestor(lab.anc_u, vt.anc) && is_ancestor(lab.anc_v, vt.anc);
      if (on_s && !on_t) col.set(0, true);
      if (on_t && !on_s) col.set(1, true);
    }
    for (size_t i = 0; i < b; ++i)
      if (lab.phi.get(i)) col.set(2 + i, true);
    a.add_column(col);
  }

  BitVec w1(b + 2), w2(b + 2);
  w1.set(0, true);
  w2.set(1, true);
  bool separated = gf2_solve(a, w1).has_value() || gf2_solve(a, w2).has_value();
  return {!separated};
}

}  // namespace ftlab
