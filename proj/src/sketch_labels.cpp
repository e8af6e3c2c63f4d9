#include "ftlab/sketch_labels.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

namespace ftlab {

size_t SketchLabeling::vertex_label_bits(int v) const {
  return 64 + 32 + 8 * vertex_labels[v].tree_label.size() + 64;
}

size_t SketchLabeling::tree_edge_label_bits() const {
  // identity + two subtree sketches + whole-graph sketch + seeds + geometry
  return params.cell_bits() + 3 * params.sketch_words() * 64 + 128 + 64;
}

size_t SketchLabeling::nontree_edge_label_bits() const { return params.cell_bits() + 64 + 8; }

size_t SketchLabeling::max_edge_label_bits() const {
  return std::max(tree_edge_label_bits(), nontree_edge_label_bits());
}

SketchLabeling assign_sketch_labels(const Graph& g, const SpanningTree& t, const SeedPair& seeds,
                                    int fault_budget, const TreeRoutingScheme* routing,
                                    const PortMap* ports) {
  require(t.size() == g.n(), ErrorKind::Disconnected, "tree does not span the graph");

  uint32_t tlb = 0;
  if (routing)
    for (int v = 1; v <= g.n(); ++v)
      tlb = std::max(tlb, static_cast<uint32_t>(tree_label_encoded_size(routing->labels[v])));

  SketchLabeling out;
  out.params = SketchParams::make(g.n(), g.m(), fault_budget, tlb);
  out.seeds = seeds;
  out.instance_id = derive_seed(seeds.seed_id ^ seeds.seed_h, 0x736b6574u,
                                (uint64_t(g.n()) << 32) | uint64_t(g.m()));

  std::vector<std::vector<uint8_t>> tl;  // padded tree labels by vertex
  if (routing) {
    tl.assign(g.n() + 1, {});
    for (int v = 1; v <= g.n(); ++v) {
      tl[v].assign(tlb, 0);
      tree_label_encode(routing->labels[v], tl[v]);
    }
  }

  // edge identities
  std::vector<ExtendedEdgeId> eids(g.m());
  for (int e = 0; e < g.m(); ++e) {
    const Edge& ed = g.edge(e);
    eids[e] = make_eid(out.params, seeds, ed.u, ed.v, t.anc(ed.u), t.anc(ed.v));
    if (routing) {
      const PortPair pp = ports ? (*ports)[e] : PortPair{ed.port_u, ed.port_v};
      eids[e].port_uv = pp.at_u;
      eids[e].port_vu = pp.at_v;
      eids[e].tree_label_u = tl[ed.u];
      eids[e].tree_label_v = tl[ed.v];
    }
  }

  // per-vertex sketches of incident sampled edges, then one bottom-up pass
  // turns them into subtree sketches
  MembershipHash hash(seeds.seed_h, out.params.units, out.params.hash_range_log);
  auto subtree = std::make_shared<std::vector<Sketch>>();
  subtree->assign(g.n() + 1, Sketch::zero(out.params));
  for (int e = 0; e < g.m(); ++e) {
    auto image = eid_cell_image(out.params, eids[e]);
    uint64_t key = edge_key(out.params.n, eids[e].id_u, eids[e].id_v);
    for (int unit = 0; unit < out.params.units; ++unit) {
      int top = hash.top_level(unit, key, out.params.levels);
      for (int level = 0; level <= top; ++level) {
        xor_cell((*subtree)[g.edge(e).u].cell(out.params, unit, level), image);
        xor_cell((*subtree)[g.edge(e).v].cell(out.params, unit, level), image);
      }
    }
  }
  const auto& order = t.preorder();
  for (auto it = order.rbegin(); it != order.rend(); ++it)
    if (*it != t.root()) (*subtree)[t.parent(*it)].xor_with((*subtree)[*it]);
  auto total = std::shared_ptr<const Sketch>(subtree, &(*subtree)[t.root()]);

  out.vertex_labels.assign(g.n() + 1, {});
  for (int v = 1; v <= g.n(); ++v) {
    auto& lab = out.vertex_labels[v];
    lab.anc = t.anc(v);
    lab.id = v;
    if (routing) lab.tree_label = tl[v];
    lab.instance_id = out.instance_id;
  }

  out.edge_labels.assign(g.m(), {});
  for (int e = 0; e < g.m(); ++e) {
    auto& lab = out.edge_labels[e];
    lab.eid = std::move(eids[e]);
    lab.is_tree_edge = t.edge_in_tree(e);
    lab.instance_id = out.instance_id;
    if (lab.is_tree_edge) {
      lab.params = out.params;
      lab.seeds = seeds;
      lab.subtree_u = std::shared_ptr<const Sketch>(subtree, &(*subtree)[g.edge(e).u]);
      lab.subtree_v = std::shared_ptr<const Sketch>(subtree, &(*subtree)[g.edge(e).v]);
      lab.total = total;
    }
  }
  return out;
}

std::vector<Sketch> component_sketches_in_g(
    const ComponentTree& ct, const std::vector<const SketchEdgeLabel*>& tree_faults,
    const SketchParams& params) {
  std::vector<Sketch> temp(ct.size());
  for (int c = 0; c < ct.size(); ++c) {
    const auto& node = ct.nodes()[c];
    if (c == 0) {
      temp[c] = *tree_faults.front()->total;
    } else {
      const SketchEdgeLabel* lab = tree_faults[node.fault_index];
      temp[c] = node.rep_vertex == lab->eid.id_u ? *lab->subtree_u : *lab->subtree_v;
    }
  }
  std::vector<Sketch> real = temp;
  for (int c = 0; c < ct.size(); ++c)
    for (int d : ct.children(c)) real[c].xor_with(temp[d]);
  (void)params;
  return real;
}

void cancel_faulty_edges(std::vector<Sketch>& comp_sketches, const ComponentTree& ct,
                         const std::vector<const SketchEdgeLabel*>& faults,
                         const MembershipHash& hash, const SketchParams& params) {
  for (const SketchEdgeLabel* lab : faults) {
    int cu = ct.locate(lab->eid.anc_u);
    int cv = ct.locate(lab->eid.anc_v);
    if (cu == cv) continue;  // internal edges never entered the component sketch
    auto image = eid_cell_image(params, lab->eid);
    uint64_t key = edge_key(params.n, lab->eid.id_u, lab->eid.id_v);
    for (int unit = 0; unit < params.units; ++unit) {
      int top = hash.top_level(unit, key, params.levels);
      for (int level = 0; level <= top; ++level) {
        xor_cell(comp_sketches[cu].cell(params, unit, level), image);
        xor_cell(comp_sketches[cv].cell(params, unit, level), image);
      }
    }
  }
}

namespace {

class UnionFind {
 public:
  explicit UnionFind(int n) : up_(n), size_(n, 1) { std::iota(up_.begin(), up_.end(), 0); }

  int find(int x) {
    while (up_[x] != x) {
      up_[x] = up_[up_[x]];
      x = up_[x];
    }
    return x;
  }

  // Returns the surviving root: larger size wins, ties to the smaller index.
  int unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return a;
    int keep = a, drop = b;
    if (size_[b] > size_[a] || (size_[b] == size_[a] && b < a)) std::swap(keep, drop);
    up_[drop] = keep;
    size_[keep] += size_[drop];
    return keep;
  }

 private:
  std::vector<int> up_;
  std::vector<int> size_;
};

}  // namespace

BoruvkaResult boruvka_decode(const ComponentTree& ct, std::vector<Sketch> comp_sketches,
                             int comp_s, int comp_t, const SketchParams& params,
                             uint64_t seed_id) {
  BoruvkaResult res;
  UnionFind uf(ct.size());
  std::vector<int> roots;
  for (int phase = 0; phase < params.units; ++phase) {
    if (uf.find(comp_s) == uf.find(comp_t)) break;
    roots.clear();
    for (int c = 0; c < ct.size(); ++c)
      if (uf.find(c) == c) roots.push_back(c);
    struct Found {
      ExtendedEdgeId eid;
      int cu, cv;
    };
    std::vector<Found> found;
    for (int r : roots) {
      auto eid = extract_outgoing_edge(comp_sketches[r], params, phase, seed_id);
      if (!eid) continue;
      found.push_back({*eid, ct.locate(eid->anc_u), ct.locate(eid->anc_v)});
    }
    bool done = false;
    for (const auto& f : found) {
      int a = uf.find(f.cu), b = uf.find(f.cv);
      if (a == b) continue;
      int keep = uf.unite(a, b);
      int drop = keep == a ? b : a;
      comp_sketches[keep].xor_with(comp_sketches[drop]);
      comp_sketches[drop].w.clear();
      res.forest.push_back({f.cu, f.cv, f.eid});
      if (uf.find(comp_s) == uf.find(comp_t)) {
        done = true;
        break;
      }
    }
    if (done) break;
    // this phase's randomness is spent: discard the consumed unit
    for (int c = 0; c < ct.size(); ++c)
      if (uf.find(c) == c && !comp_sketches[c].w.empty()) comp_sketches[c].clear_unit(params, phase);
  }
  res.connected = uf.find(comp_s) == uf.find(comp_t);
  return res;
}

namespace {

PathSegment tree_segment(int from_id, const AncestryLabel& from_anc,
                         const std::vector<uint8_t>& from_tl, int to_id,
                         const AncestryLabel& to_anc, const std::vector<uint8_t>& to_tl) {
  PathSegment seg;
  seg.is_edge = false;
  seg.from_id = from_id;
  seg.to_id = to_id;
  seg.from_anc = from_anc;
  seg.to_anc = to_anc;
  seg.from_tree_label = from_tl;
  seg.to_tree_label = to_tl;
  return seg;
}

SuccinctPath assemble_path(const ComponentTree& ct, const std::vector<MergeEdge>& forest,
                           int comp_s, int comp_t, const SketchVertexLabel& ls,
                           const SketchVertexLabel& lt) {
  SuccinctPath path;
  if (comp_s == comp_t) {
    path.segments.push_back(
        tree_segment(ls.id, ls.anc, ls.tree_label, lt.id, lt.anc, lt.tree_label));
    return path;
  }
  // breadth-first search over the merge forest between the two components
  std::vector<std::vector<std::pair<int, int>>> adj(ct.size());  // (neighbor, forest idx)
  for (size_t i = 0; i < forest.size(); ++i) {
    adj[forest[i].comp_u].push_back({forest[i].comp_v, static_cast<int>(i)});
    adj[forest[i].comp_v].push_back({forest[i].comp_u, static_cast<int>(i)});
  }
  std::vector<int> via_edge(ct.size(), -1), via_comp(ct.size(), -1);
  std::vector<char> seen(ct.size(), 0);
  std::vector<int> queue{comp_s};
  seen[comp_s] = 1;
  for (size_t head = 0; head < queue.size() && !seen[comp_t]; ++head) {
    int c = queue[head];
    for (auto [d, idx] : adj[c]) {
      if (seen[d]) continue;
      seen[d] = 1;
      via_edge[d] = idx;
      via_comp[d] = c;
      queue.push_back(d);
    }
  }
  require(seen[comp_t], ErrorKind::PropertyViolation, "merge forest does not connect the query");

  std::vector<int> hops;  // forest edge indices from s-side to t-side
  for (int c = comp_t; c != comp_s; c = via_comp[c]) hops.push_back(via_edge[c]);
  std::reverse(hops.begin(), hops.end());

  int cur_comp = comp_s;
  int cur_id = ls.id;
  AncestryLabel cur_anc = ls.anc;
  std::vector<uint8_t> cur_tl = ls.tree_label;
  for (int idx : hops) {
    const MergeEdge& me = forest[idx];
    bool forward = me.comp_u == cur_comp;
    const ExtendedEdgeId& eid = me.eid;
    int from_id = forward ? eid.id_u : eid.id_v;
    int to_id = forward ? eid.id_v : eid.id_u;
    AncestryLabel from_anc = forward ? eid.anc_u : eid.anc_v;
    AncestryLabel to_anc = forward ? eid.anc_v : eid.anc_u;
    const auto& from_tl = forward ? eid.tree_label_u : eid.tree_label_v;
    const auto& to_tl = forward ? eid.tree_label_v : eid.tree_label_u;

    path.segments.push_back(tree_segment(cur_id, cur_anc, cur_tl, from_id, from_anc, from_tl));
    PathSegment edge_seg;
    edge_seg.is_edge = true;
    edge_seg.eid = eid;
    edge_seg.forward = forward;
    edge_seg.from_id = from_id;
    edge_seg.to_id = to_id;
    edge_seg.from_anc = from_anc;
    edge_seg.to_anc = to_anc;
    edge_seg.from_tree_label = from_tl;
    edge_seg.to_tree_label = to_tl;
    path.segments.push_back(edge_seg);
    ++path.recovery_edges;

    cur_comp = forward ? me.comp_v : me.comp_u;
    cur_id = to_id;
    cur_anc = to_anc;
    cur_tl = to_tl;
  }
  path.segments.push_back(tree_segment(cur_id, cur_anc, cur_tl, lt.id, lt.anc, lt.tree_label));
  return path;
}

}  // namespace

SketchDecodeResult sketch_decode(const SketchVertexLabel& ls, const SketchVertexLabel& lt,
                                 const std::vector<const SketchEdgeLabel*>& faults) {
  require(ls.instance_id == lt.instance_id, ErrorKind::MixedInstance,
          "endpoint labels from different instances");

  // deduplicate faults by endpoint pair
  std::vector<const SketchEdgeLabel*> fl;
  std::unordered_set<uint64_t> seen;
  for (const SketchEdgeLabel* lab : faults) {
    require(lab->instance_id == ls.instance_id, ErrorKind::MixedInstance,
            "fault label from a different instance");
    uint64_t k = (static_cast<uint64_t>(lab->eid.id_u) << 32) |
                 static_cast<uint32_t>(lab->eid.id_v);
    if (seen.insert(k).second) fl.push_back(lab);
  }

  std::vector<const SketchEdgeLabel*> tree_faults;
  for (const SketchEdgeLabel* lab : fl)
    if (lab->is_tree_edge) tree_faults.push_back(lab);

  SketchDecodeResult res;
  if (tree_faults.empty()) {
    // the spanning tree survives intact: endpoints of one instance are
    // always connected, along the tree path between them
    res.connected = true;
    SuccinctPath path;
    path.segments.push_back(
        tree_segment(ls.id, ls.anc, ls.tree_label, lt.id, lt.anc, lt.tree_label));
    res.path = std::move(path);
    return res;
  }

  const SketchParams& params = tree_faults.front()->params;
  const SeedPair& seeds = tree_faults.front()->seeds;
  require(fl.size() <= static_cast<size_t>(params.fault_budget), ErrorKind::TooManyFaults,
          "fault set exceeds the labeling fault budget");

  std::vector<TreeFault> tf;
  for (const SketchEdgeLabel* lab : tree_faults)
    tf.push_back({lab->eid.anc_u, lab->eid.anc_v, lab->eid.id_u, lab->eid.id_v});
  ComponentTree ct = build_component_tree(tf);

  int comp_s = ct.locate(ls.anc);
  int comp_t = ct.locate(lt.anc);

  auto sketches = component_sketches_in_g(ct, tree_faults, params);
  MembershipHash hash(seeds.seed_h, params.units, params.hash_range_log);
  cancel_faulty_edges(sketches, ct, fl, hash, params);
  BoruvkaResult bres =
      boruvka_decode(ct, std::move(sketches), comp_s, comp_t, params, seeds.seed_id);

  res.connected = bres.connected;
  if (res.connected) res.path = assemble_path(ct, bres.forest, comp_s, comp_t, ls, lt);
  return res;
}

SketchDecodeResult sketch_decode(const SketchLabeling& labeling, int s, int t,
                                 const std::vector<int>& fault_edges) {
  std::vector<const SketchEdgeLabel*> faults;
  for (int e : fault_edges) faults.push_back(&labeling.edge_labels[e]);
  return sketch_decode(labeling.vertex_labels[s], labeling.vertex_labels[t], faults);
}

}  // namespace ftlab
