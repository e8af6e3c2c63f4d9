#include "ftlab/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

#include <json.hpp>

#include "ftlab/rng.hpp"

namespace ftlab {

namespace {

std::vector<char> fault_mask(const Graph& g, const std::vector<int>& faults) {
  std::vector<char> dead(g.m(), 0);
  for (int e : faults) {
    require(e >= 0 && e < g.m(), ErrorKind::IndexOutOfRange, "fault edge index out of range");
    dead[e] = 1;
  }
  return dead;
}

}  // namespace

bool oracle_connected(const Graph& g, const std::vector<int>& faults, int s, int t) {
  if (s == t) return true;
  auto dead = fault_mask(g, faults);
  std::vector<char> visited(g.n() + 1, 0);
  std::vector<int> queue{s};
  visited[s] = 1;
  while (!queue.empty()) {
    int v = queue.back();
    queue.pop_back();
    for (int e : g.adj(v)) {
      if (dead[e]) continue;
      int w = g.edge(e).other(v);
      if (visited[w]) continue;
      if (w == t) return true;
      visited[w] = 1;
      queue.push_back(w);
    }
  }
  return false;
}

bool oracle_connected_unionfind(const Graph& g, const std::vector<int>& faults, int s, int t) {
  auto dead = fault_mask(g, faults);
  std::vector<int> up(g.n() + 1);
  std::iota(up.begin(), up.end(), 0);
  auto find = [&](int x) {
    while (up[x] != x) {
      up[x] = up[up[x]];
      x = up[x];
    }
    return x;
  };
  for (int e = 0; e < g.m(); ++e) {
    if (dead[e]) continue;
    int a = find(g.edge(e).u), b = find(g.edge(e).v);
    if (a != b) up[a] = b;
  }
  return find(s) == find(t);
}

int64_t oracle_distance(const Graph& g, const std::vector<int>& faults, int s, int t) {
  if (s == t) return 0;
  auto dead = fault_mask(g, faults);
  std::vector<int64_t> dist(g.n() + 1, kUnreachable);
  using Item = std::pair<int64_t, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[s] = 0;
  heap.emplace(0, s);
  while (!heap.empty()) {
    auto [d, v] = heap.top();
    heap.pop();
    if (d != dist[v]) continue;
    if (v == t) return d;
    for (int e : g.adj(v)) {
      if (dead[e]) continue;
      int w = g.edge(e).other(v);
      int64_t nd = d + g.edge(e).w;
      if (dist[w] == kUnreachable || nd < dist[w]) {
        dist[w] = nd;
        heap.emplace(nd, w);
      }
    }
  }
  return kUnreachable;
}

int64_t oracle_distance_bellman_ford(const Graph& g, const std::vector<int>& faults, int s,
                                     int t) {
  if (s == t) return 0;
  auto dead = fault_mask(g, faults);
  std::vector<int64_t> dist(g.n() + 1, kUnreachable);
  dist[s] = 0;
  for (int round = 0; round < g.n(); ++round) {
    bool changed = false;
    for (int e = 0; e < g.m(); ++e) {
      if (dead[e]) continue;
      const Edge& ed = g.edge(e);
      for (auto [a, b] : {std::pair{ed.u, ed.v}, std::pair{ed.v, ed.u}}) {
        if (dist[a] == kUnreachable) continue;
        int64_t nd = dist[a] + ed.w;
        if (dist[b] == kUnreachable || nd < dist[b]) {
          dist[b] = nd;
          changed = true;
        }
      }
    }
    if (!changed) break;
  }
  return dist[t];
}

std::vector<int> Fixture::faults_for_survivor(int survivor) const {
  require(!last_edges.empty(), ErrorKind::BadSpec, "fixture has no fault generator");
  require(survivor >= 0 && survivor < static_cast<int>(last_edges.size()),
          ErrorKind::IndexOutOfRange, "survivor index out of range");
  std::vector<int> faults;
  for (int i = 0; i < static_cast<int>(last_edges.size()); ++i)
    if (i != survivor) faults.push_back(last_edges[i]);
  return faults;
}

namespace {

int64_t draw_weight(SplitMix64& rng, int64_t max_weight) {
  return max_weight <= 1 ? 1 : 1 + static_cast<int64_t>(rng.next_below(max_weight));
}

Fixture make_erdos_renyi(const FixtureSpec& spec) {
  require(spec.n >= 2, ErrorKind::BadSpec, "erdos_renyi needs n >= 2");
  require(spec.p >= 0.0 && spec.p <= 1.0, ErrorKind::BadSpec, "p must be in [0,1]");
  SplitMix64 rng(derive_seed(spec.seed, 0x4552u));
  std::vector<EdgeInput> edges;
  for (int u = 1; u <= spec.n; ++u)
    for (int v = u + 1; v <= spec.n; ++v)
      if (rng.next_unit() < spec.p) edges.push_back({u, v, draw_weight(rng, spec.max_weight)});
  Fixture fx;
  fx.graph = build_graph(spec.n, edges);
  fx.s = 1;
  fx.t = spec.n;
  return fx;
}

Fixture make_grid(const FixtureSpec& spec) {
  require(spec.n >= 1, ErrorKind::BadSpec, "grid needs n >= 1");
  int side = static_cast<int>(std::lround(std::ceil(std::sqrt(double(spec.n)))));
  SplitMix64 rng(derive_seed(spec.seed, 0x4752u));
  auto id = [side](int r, int c) { return r * side + c + 1; };
  std::vector<EdgeInput> edges;
  for (int r = 0; r < side; ++r)
    for (int c = 0; c < side; ++c) {
      if (c + 1 < side) edges.push_back({id(r, c), id(r, c + 1), draw_weight(rng, spec.max_weight)});
      if (r + 1 < side) edges.push_back({id(r, c), id(r + 1, c), draw_weight(rng, spec.max_weight)});
    }
  Fixture fx;
  fx.graph = build_graph(side * side, edges);
  fx.s = 1;
  fx.t = side * side;
  return fx;
}

Fixture make_path_bundle(const FixtureSpec& spec) {
  require(spec.f >= 0, ErrorKind::BadSpec, "path_bundle needs f >= 0");
  require(spec.length >= 2, ErrorKind::BadSpec, "path_bundle needs length >= 2");
  int paths = spec.f + 1;
  int internals = spec.length - 1;
  Fixture fx;
  fx.s = 1;
  fx.t = 2;
  std::vector<EdgeInput> edges;
  int next = 3;
  fx.last_edges.reserve(paths);
  std::vector<int> last_from(paths);
  for (int i = 0; i < paths; ++i) {
    int prev = fx.s;
    for (int j = 0; j < internals; ++j) {
      edges.push_back({prev, next, 1});
      prev = next++;
    }
    last_from[i] = prev;
    edges.push_back({prev, fx.t, 1});
  }
  fx.graph = build_graph(2 + paths * internals, edges);
  for (int i = 0; i < paths; ++i) {
    int e = fx.graph.find_edge(last_from[i], fx.t);
    fx.last_edges.push_back(e);
  }
  return fx;
}

Fixture make_tree_plus_chords(const FixtureSpec& spec) {
  require(spec.n >= 2, ErrorKind::BadSpec, "tree_plus_chords needs n >= 2");
  SplitMix64 rng(derive_seed(spec.seed, 0x5443u));
  std::vector<EdgeInput> edges;
  for (int v = 2; v <= spec.n; ++v) {
    int parent = 1 + static_cast<int>(rng.next_below(v - 1));
    edges.push_back({parent, v, draw_weight(rng, spec.max_weight)});
  }
  int chords = static_cast<int>(std::lround(spec.p * spec.n));
  Graph tree = build_graph(spec.n, edges);
  int attempts = 0;
  while (chords > 0 && attempts < spec.n * 20) {
    ++attempts;
    int u = 1 + static_cast<int>(rng.next_below(spec.n));
    int v = 1 + static_cast<int>(rng.next_below(spec.n));
    if (u == v) continue;
    bool dup = false;
    for (const auto& e : edges)
      if ((e.u == std::min(u, v) && e.v == std::max(u, v)) ||
          (e.u == std::max(u, v) && e.v == std::min(u, v)))
        dup = true;
    if (dup) continue;
    edges.push_back({std::min(u, v), std::max(u, v), draw_weight(rng, spec.max_weight)});
    --chords;
  }
  Fixture fx;
  fx.graph = build_graph(spec.n, edges);
  fx.s = 1;
  fx.t = spec.n;
  return fx;
}

}  // namespace

Fixture make_fixture(const FixtureSpec& spec) {
  switch (spec.kind) {
    case FixtureKind::ErdosRenyi: return make_erdos_renyi(spec);
    case FixtureKind::Grid: return make_grid(spec);
    case FixtureKind::PathBundle: return make_path_bundle(spec);
    case FixtureKind::TreePlusChords: return make_tree_plus_chords(spec);
  }
  fail(ErrorKind::BadSpec, "unknown fixture kind");
}

Fixture make_connected_fixture(FixtureSpec spec, int max_attempts) {
  for (int i = 0; i < max_attempts; ++i) {
    Fixture fx = make_fixture(spec);
    if (fx.graph.n() >= 1 && is_connected(fx.graph)) return fx;
    spec.seed = derive_seed(spec.seed, 0x52455452u);
  }
  fail(ErrorKind::BadSpec, "could not sample a connected fixture");
}

FixtureSpec FixtureSpec::parse_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::BadConfig, std::string("bad fixture json: ") + e.what());
  }
  FixtureSpec spec;
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "erdos_renyi")
    spec.kind = FixtureKind::ErdosRenyi;
  else if (kind == "grid")
    spec.kind = FixtureKind::Grid;
  else if (kind == "path_bundle")
    spec.kind = FixtureKind::PathBundle;
  else if (kind == "tree_plus_chords")
    spec.kind = FixtureKind::TreePlusChords;
  else
    fail(ErrorKind::BadSpec, "unknown fixture kind: " + kind);
  spec.n = j.value("n", 0);
  spec.p = j.value("p", 0.0);
  spec.f = j.value("f", 0);
  spec.length = j.value("L", 0);
  spec.seed = j.value("seed", uint64_t(0));
  spec.max_weight = j.value("W", int64_t(1));
  return spec;
}

}  // namespace ftlab
