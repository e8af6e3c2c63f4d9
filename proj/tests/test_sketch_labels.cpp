#include <doctest.h>

#include <map>

#include "ftlab/sketch_labels.hpp"
#include "test_util.hpp"

using namespace ftlab;
using testutil::check_succinct_path;
using testutil::random_connected_graph;
using testutil::random_fault_set;

namespace {

SeedPair seeds_of(uint64_t s) { return {derive_seed(s, 1), derive_seed(s, 2)}; }

// brute force sketch of an explicit vertex set, built edge by edge
Sketch sketch_of_set(const Graph& g, const SpanningTree& t, const SketchLabeling& lab,
                     const std::vector<int>& vs, const std::vector<int>& skip_edges = {}) {
  MembershipHash hash(lab.seeds.seed_h, lab.params.units, lab.params.hash_range_log);
  std::vector<char> in(g.n() + 1, 0);
  for (int v : vs) in[v] = 1;
  std::vector<char> skip(g.m(), 0);
  for (int e : skip_edges) skip[e] = 1;
  Sketch s = Sketch::zero(lab.params);
  for (int e = 0; e < g.m(); ++e) {
    if (skip[e]) continue;
    const Edge& ed = g.edge(e);
    int hits = (in[ed.u] ? 1 : 0) + (in[ed.v] ? 1 : 0);
    for (int rep = 0; rep < hits; ++rep) sketch_add_edge(s, lab.params, hash, lab.edge_labels[e].eid);
  }
  (void)t;
  return s;
}

std::vector<int> component_vertices(const Graph& g, const SpanningTree& t,
                                    const std::vector<int>& tree_faults, int from) {
  std::vector<char> dead(g.m(), 0);
  for (int e : tree_faults) dead[e] = 1;
  std::vector<char> seen(g.n() + 1, 0);
  std::vector<int> stack{from}, out;
  seen[from] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    out.push_back(v);
    for (int e : g.adj(v)) {
      if (!t.edge_in_tree(e) || dead[e]) continue;
      int w = g.edge(e).other(v);
      if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
    }
  }
  return out;
}

}  // namespace

TEST_CASE("single edge graph: whole-graph sketch equals the XOR of both endpoint sketches") {
  Graph g = build_graph(2, {{1, 2, 1}});
  SpanningTree t = spanning_tree(g, 1);
  auto lab = assign_sketch_labels(g, t, seeds_of(12), 1);
  Sketch manual = sketch_of_set(g, t, lab, {1});
  manual.xor_with(sketch_of_set(g, t, lab, {2}));
  CHECK(manual.w == lab.edge_labels[0].total->w);
  CHECK(manual.is_zero());  // the one edge cancels between its two endpoints
}

TEST_CASE("leaf subtree sketch is the leaf's own sketch") {
  Graph g = build_graph(3, {{1, 2, 1}, {2, 3, 1}});
  SpanningTree t = spanning_tree(g, 1);
  auto lab = assign_sketch_labels(g, t, seeds_of(5), 1);
  int e = g.find_edge(2, 3);  // leaf 3
  const auto& el = lab.edge_labels[e];
  const Sketch& leaf_side = el.eid.id_u == 3 ? *el.subtree_u : *el.subtree_v;
  Sketch manual = sketch_of_set(g, t, lab, {3});
  CHECK(manual.w == leaf_side.w);
}

TEST_CASE("subtree sketches match explicit enumeration on a random graph") {
  SplitMix64 rng(404);
  Graph g = random_connected_graph(100, 220, rng);
  SpanningTree t = spanning_tree(g, 7);
  auto lab = assign_sketch_labels(g, t, seeds_of(17), 4);
  for (int e = 0; e < g.m(); ++e) {
    if (!t.edge_in_tree(e)) continue;
    const auto& el = lab.edge_labels[e];
    int child = t.parent_edge(g.edge(e).u) == e ? g.edge(e).u : g.edge(e).v;
    // enumerate the subtree of the child endpoint
    std::vector<int> subtree;
    for (int v = 1; v <= g.n(); ++v)
      if (is_ancestor(t.anc(child), t.anc(v))) subtree.push_back(v);
    Sketch manual = sketch_of_set(g, t, lab, subtree);
    const Sketch& got = el.eid.id_u == child ? *el.subtree_u : *el.subtree_v;
    CHECK(manual.w == got.w);
  }
}

TEST_CASE("component sketches: leaf component equals its subtree, root pairs with the rest") {
  Graph g = build_graph(4, {{1, 2, 1}, {2, 3, 1}, {3, 4, 1}, {4, 1, 1}});
  SpanningTree t = spanning_tree(g, 1);
  auto lab = assign_sketch_labels(g, t, seeds_of(3), 2);
  int cut = t.parent_edge(3);  // split below 3's parent
  std::vector<const SketchEdgeLabel*> tf{&lab.edge_labels[cut]};
  auto ct = build_component_tree({{lab.edge_labels[cut].eid.anc_u, lab.edge_labels[cut].eid.anc_v,
                                   lab.edge_labels[cut].eid.id_u, lab.edge_labels[cut].eid.id_v}});
  auto sketches = component_sketches_in_g(ct, tf, lab.params);
  REQUIRE(sketches.size() == 2);

  int rep = ct.nodes()[1].rep_vertex;
  auto leaf_comp = component_vertices(g, t, {cut}, rep);
  CHECK(sketches[1].w == sketch_of_set(g, t, lab, leaf_comp).w);
  auto root_comp = component_vertices(g, t, {cut}, 1);
  CHECK(sketches[0].w == sketch_of_set(g, t, lab, root_comp).w);
}

TEST_CASE("component sketches match brute force on random instances") {
  SplitMix64 rng(2025);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 10 + static_cast<int>(rng.next_below(60));
    Graph g = random_connected_graph(n, 3 * n, rng);
    SpanningTree t = spanning_tree(g, 1 + static_cast<int>(rng.next_below(n)));
    auto lab = assign_sketch_labels(g, t, seeds_of(rng.next()), 6);

    std::vector<int> tree_edges;
    for (int e = 0; e < g.m(); ++e)
      if (t.edge_in_tree(e)) tree_edges.push_back(e);
    int f = 1 + static_cast<int>(rng.next_below(5));
    std::vector<int> cut;
    for (int i = 0; i < f; ++i) cut.push_back(tree_edges[rng.next_below(tree_edges.size())]);
    std::sort(cut.begin(), cut.end());
    cut.erase(std::unique(cut.begin(), cut.end()), cut.end());

    std::vector<const SketchEdgeLabel*> tf;
    std::vector<TreeFault> faults;
    for (int e : cut) {
      tf.push_back(&lab.edge_labels[e]);
      const auto& eid = lab.edge_labels[e].eid;
      faults.push_back({eid.anc_u, eid.anc_v, eid.id_u, eid.id_v});
    }
    auto ct = build_component_tree(faults);
    auto sketches = component_sketches_in_g(ct, tf, lab.params);
    for (int c = 0; c < ct.size(); ++c) {
      int from = c == 0 ? t.root() : ct.nodes()[c].rep_vertex;
      auto comp = component_vertices(g, t, cut, from);
      CHECK(sketches[c].w == sketch_of_set(g, t, lab, comp).w);
    }
  }
}

TEST_CASE("cancellation is an involution and a no-op for internal edges") {
  SplitMix64 rng(31);
  Graph g = random_connected_graph(30, 70, rng);
  SpanningTree t = spanning_tree(g, 1);
  auto lab = assign_sketch_labels(g, t, seeds_of(8), 4);
  MembershipHash hash(lab.seeds.seed_h, lab.params.units, lab.params.hash_range_log);

  int cut = t.parent_edge(5);
  std::vector<const SketchEdgeLabel*> tf{&lab.edge_labels[cut]};
  const auto& eid = lab.edge_labels[cut].eid;
  auto ct = build_component_tree({{eid.anc_u, eid.anc_v, eid.id_u, eid.id_v}});
  auto sketches = component_sketches_in_g(ct, tf, lab.params);
  auto before = sketches;

  // an internal non-tree edge: both endpoints in the same component
  int internal = -1;
  for (int e = 0; e < g.m(); ++e)
    if (!t.edge_in_tree(e) &&
        ct.locate(lab.edge_labels[e].eid.anc_u) == ct.locate(lab.edge_labels[e].eid.anc_v))
      internal = e;
  if (internal >= 0) {
    std::vector<const SketchEdgeLabel*> fl{&lab.edge_labels[internal]};
    cancel_faulty_edges(sketches, ct, fl, hash, lab.params);
    CHECK(sketches[0].w == before[0].w);
    CHECK(sketches[1].w == before[1].w);
  }

  // cancel then re-cancel the crossing tree edge: back to the original
  cancel_faulty_edges(sketches, ct, tf, hash, lab.params);
  CHECK(sketches[0].w != before[0].w);
  cancel_faulty_edges(sketches, ct, tf, hash, lab.params);
  CHECK(sketches[0].w == before[0].w);
  CHECK(sketches[1].w == before[1].w);
}

TEST_CASE("cancelled component sketches equal sketches rebuilt without the faults") {
  SplitMix64 rng(77);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 12 + static_cast<int>(rng.next_below(40));
    Graph g = random_connected_graph(n, 3 * n, rng);
    SpanningTree t = spanning_tree(g, 1);
    auto lab = assign_sketch_labels(g, t, seeds_of(rng.next()), 6);
    MembershipHash hash(lab.seeds.seed_h, lab.params.units, lab.params.hash_range_log);

    auto fault_edges = random_fault_set(g, 1 + static_cast<int>(rng.next_below(6)), rng);
    std::vector<int> tree_cut;
    std::vector<const SketchEdgeLabel*> tf, fl;
    std::vector<TreeFault> faults;
    for (int e : fault_edges) {
      fl.push_back(&lab.edge_labels[e]);
      if (t.edge_in_tree(e)) {
        tree_cut.push_back(e);
        tf.push_back(&lab.edge_labels[e]);
        const auto& eid = lab.edge_labels[e].eid;
        faults.push_back({eid.anc_u, eid.anc_v, eid.id_u, eid.id_v});
      }
    }
    if (faults.empty()) continue;
    auto ct = build_component_tree(faults);
    auto sketches = component_sketches_in_g(ct, tf, lab.params);
    cancel_faulty_edges(sketches, ct, fl, hash, lab.params);

    for (int c = 0; c < ct.size(); ++c) {
      int from = c == 0 ? t.root() : ct.nodes()[c].rep_vertex;
      auto comp = component_vertices(g, t, tree_cut, from);
      CHECK(sketches[c].w == sketch_of_set(g, t, lab, comp, fault_edges).w);
    }
  }
}

TEST_CASE("decode without faults returns a single tree segment") {
  Graph g = build_graph(3, {{1, 2, 1}, {2, 3, 1}});
  SpanningTree t = spanning_tree(g, 1);
  auto lab = assign_sketch_labels(g, t, seeds_of(1), 2);
  auto res = sketch_decode(lab, 1, 3, {});
  CHECK(res.connected);
  REQUIRE(res.path.has_value());
  CHECK(res.path->segments.size() == 1);
  CHECK(res.path->recovery_edges == 0);
  check_succinct_path(g, t, {}, 1, 3, *res.path);
}

TEST_CASE("decode detects a cut bridge") {
  Graph g = build_graph(3, {{1, 2, 1}, {2, 3, 1}});
  SpanningTree t = spanning_tree(g, 1);
  auto lab = assign_sketch_labels(g, t, seeds_of(2), 1);
  auto res = sketch_decode(lab, 1, 3, {g.find_edge(2, 3)});
  CHECK(!res.connected);
  auto res2 = sketch_decode(lab, 1, 2, {g.find_edge(2, 3)});
  CHECK(res2.connected);
  check_succinct_path(g, t, {g.find_edge(2, 3)}, 1, 2, *res2.path);
}

TEST_CASE("two components joined by one surviving edge") {
  // path 1-2-3-4 plus chord (1,4); cut tree edge (2,3): the chord is the only
  // crossing edge
  Graph g = build_graph(4, {{1, 2, 1}, {2, 3, 1}, {3, 4, 1}, {1, 4, 1}});
  SpanningTree t = spanning_tree(g, 1);
  // force the tree to be the path: the DFS from 1 follows insertion order,
  // so (1,4) is the non-tree edge
  REQUIRE(!t.edge_in_tree(g.find_edge(1, 4)));
  auto lab = assign_sketch_labels(g, t, seeds_of(6), 1);
  int cut = g.find_edge(2, 3);
  auto res = sketch_decode(lab, 1, 4, {cut});
  REQUIRE(res.connected);
  REQUIRE(res.path.has_value());
  CHECK(res.path->recovery_edges == 1);
  check_succinct_path(g, t, {cut}, 1, 4, *res.path);
}

TEST_CASE("decode is pure: repeated calls give identical answers") {
  SplitMix64 rng(14);
  Graph g = random_connected_graph(40, 90, rng);
  SpanningTree t = spanning_tree(g, 1);
  auto lab = assign_sketch_labels(g, t, seeds_of(9), 4);
  for (int q = 0; q < 50; ++q) {
    auto faults = random_fault_set(g, 1 + static_cast<int>(rng.next_below(4)), rng);
    int s = 1 + static_cast<int>(rng.next_below(g.n()));
    int d = 1 + static_cast<int>(rng.next_below(g.n()));
    if (s == d) continue;
    auto r1 = sketch_decode(lab, s, d, faults);
    auto r2 = sketch_decode(lab, s, d, faults);
    CHECK(r1.connected == r2.connected);
    if (r1.path && r2.path) {
      CHECK(r1.path->segments.size() == r2.path->segments.size());
      CHECK(r1.path->recovery_edges == r2.path->recovery_edges);
    }
  }
}

TEST_CASE("decode agrees with the oracle exhaustively on small graphs, paths replay") {
  SplitMix64 rng(616);
  int checked = 0;
  for (int trial = 0; trial < 6; ++trial) {
    int n = 5 + static_cast<int>(rng.next_below(5));
    Graph g = random_connected_graph(n, n + 2 + static_cast<int>(rng.next_below(n)), rng);
    SpanningTree t = spanning_tree(g, 1);
    auto lab = assign_sketch_labels(g, t, seeds_of(1000 + trial), 4);
    for (uint32_t mask = 0; mask < (1u << g.m()); ++mask) {
      if (__builtin_popcount(mask) > 4) continue;
      std::vector<int> faults;
      for (int e = 0; e < g.m(); ++e)
        if ((mask >> e) & 1) faults.push_back(e);
      for (int s = 1; s <= n; ++s)
        for (int d = s + 1; d <= n; ++d) {
          auto res = sketch_decode(lab, s, d, faults);
          bool want = oracle_connected(g, faults, s, d);
          CHECK(res.connected == want);
          if (res.connected) {
            REQUIRE(res.path.has_value());
            check_succinct_path(g, t, faults, s, d, *res.path);
          }
          ++checked;
        }
      if (checked > 30000) break;
    }
  }
  CHECK(checked > 10000);
}

TEST_CASE("mixed instances and oversized fault sets are rejected") {
  Graph g = build_graph(3, {{1, 2, 1}, {2, 3, 1}, {1, 3, 1}});
  SpanningTree t = spanning_tree(g, 1);
  auto lab1 = assign_sketch_labels(g, t, seeds_of(1), 1);
  auto lab2 = assign_sketch_labels(g, t, seeds_of(2), 1);
  std::vector<const SketchEdgeLabel*> mixed{&lab2.edge_labels[0]};
  CHECK_THROWS_AS(sketch_decode(lab1.vertex_labels[1], lab1.vertex_labels[3], mixed), Error);
  // budget 1, two tree faults
  std::vector<const SketchEdgeLabel*> big{&lab1.edge_labels[0], &lab1.edge_labels[1]};
  CHECK_THROWS_AS(sketch_decode(lab1.vertex_labels[1], lab1.vertex_labels[3], big), Error);
}

TEST_CASE("vertex and edge label sizes follow the closed forms") {
  SplitMix64 rng(21);
  Graph g = random_connected_graph(64, 150, rng);
  SpanningTree t = spanning_tree(g, 1);
  auto lab = assign_sketch_labels(g, t, seeds_of(3), 3);
  size_t sketch_bits = lab.params.sketch_words() * 64;
  CHECK(lab.tree_edge_label_bits() > 3 * sketch_bits);
  CHECK(lab.tree_edge_label_bits() < 3 * sketch_bits + 1000);
  CHECK(lab.nontree_edge_label_bits() < 1000);
  CHECK(lab.vertex_label_bits(1) < 200);
}
