#include "ftlab/graph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

namespace ftlab {

int Graph::find_edge(int u, int v) const {
  if (u < 1 || u > n_ || v < 1 || v > n_) return -1;
  const auto& shorter = adj_[degree(u) <= degree(v) ? u : v];
  int x = degree(u) <= degree(v) ? u : v;
  for (int e : shorter)
    if (edges_[e].other(x) == (x == u ? v : u)) return e;
  return -1;
}

Graph build_graph(int n, const std::vector<EdgeInput>& input) {
  require(n >= 1, ErrorKind::BadVertexId, "vertex count must be positive");
  Graph g;
  g.n_ = n;
  g.adj_.assign(n + 1, {});
  std::unordered_set<uint64_t> seen;
  seen.reserve(input.size() * 2);
  for (const auto& in : input) {
    require(in.u >= 1 && in.u <= n && in.v >= 1 && in.v <= n, ErrorKind::BadVertexId,
            "edge endpoint out of range");
    require(in.u != in.v, ErrorKind::SelfLoop, "self loop rejected");
    require(in.w >= 1, ErrorKind::BadWeight, "edge weight must be >= 1");
    int u = std::min(in.u, in.v);
    int v = std::max(in.u, in.v);
    uint64_t key = uint64_t(u) * uint64_t(n + 1) + uint64_t(v);
    require(seen.insert(key).second, ErrorKind::DuplicateEdge, "parallel edge rejected");
    Edge e;
    e.u = u;
    e.v = v;
    e.w = in.w;
    e.port_u = static_cast<int>(g.adj_[u].size());
    e.port_v = static_cast<int>(g.adj_[v].size());
    int idx = static_cast<int>(g.edges_.size());
    g.adj_[u].push_back(idx);
    g.adj_[v].push_back(idx);
    g.edges_.push_back(e);
    g.max_weight_ = std::max(g.max_weight_, e.w);
  }
  return g;
}

SpanningTree spanning_tree(const Graph& g, int root) {
  require(root >= 1 && root <= g.n(), ErrorKind::BadVertexId, "root out of range");
  SpanningTree t;
  t.root_ = root;
  t.parent_.assign(g.n() + 1, 0);
  t.parent_edge_.assign(g.n() + 1, -1);
  t.dfs_in_.assign(g.n() + 1, 0);
  t.dfs_out_.assign(g.n() + 1, 0);
  t.in_tree_.assign(g.m(), 0);
  t.children_.assign(g.n() + 1, {});
  t.preorder_.reserve(g.n());

  std::vector<char> visited(g.n() + 1, 0);
  // Iterative DFS; frame second member is the position in adj(v).
  std::vector<std::pair<int, size_t>> stack;
  uint32_t clock = 0;
  visited[root] = 1;
  t.dfs_in_[root] = ++clock;
  t.preorder_.push_back(root);
  stack.emplace_back(root, 0);
  while (!stack.empty()) {
    auto& [v, pos] = stack.back();
    if (pos == g.adj(v).size()) {
      t.dfs_out_[v] = ++clock;
      stack.pop_back();
      continue;
    }
    int e = g.adj(v)[pos++];
    int w = g.edge(e).other(v);
    if (visited[w]) continue;
    visited[w] = 1;
    t.parent_[w] = v;
    t.parent_edge_[w] = e;
    t.in_tree_[e] = 1;
    t.children_[v].push_back(w);
    t.dfs_in_[w] = ++clock;
    t.preorder_.push_back(w);
    stack.emplace_back(w, 0);
  }

  if (static_cast<int>(t.preorder_.size()) != g.n()) {
    auto comp = connected_components(g);
    std::ostringstream msg;
    msg << "graph not connected; component representatives:";
    std::unordered_set<int> reported;
    for (int v = 1; v <= g.n(); ++v)
      if (reported.insert(comp[v]).second) msg << ' ' << comp[v];
    fail(ErrorKind::Disconnected, msg.str());
  }
  return t;
}

std::vector<int> SpanningTree::tree_path(int u, int v) const {
  std::vector<int> up, down;
  int a = u, b = v;
  while (!is_ancestor_of(a, v)) {
    up.push_back(a);
    a = parent_[a];
  }
  while (b != a) {
    down.push_back(b);
    b = parent_[b];
  }
  up.push_back(a);
  up.insert(up.end(), down.rbegin(), down.rend());
  return up;
}

std::vector<int> connected_components(const Graph& g) {
  std::vector<int> comp(g.n() + 1, 0);
  std::vector<int> queue;
  for (int s = 1; s <= g.n(); ++s) {
    if (comp[s]) continue;
    comp[s] = s;
    queue.assign(1, s);
    while (!queue.empty()) {
      int v = queue.back();
      queue.pop_back();
      for (int e : g.adj(v)) {
        int w = g.edge(e).other(v);
        if (!comp[w]) {
          comp[w] = s;
          queue.push_back(w);
        }
      }
    }
  }
  return comp;
}

bool is_connected(const Graph& g) {
  auto comp = connected_components(g);
  for (int v = 1; v <= g.n(); ++v)
    if (comp[v] != 1) return false;
  return true;
}

Graph parse_graph_text(std::istream& in) {
  int n = 0;
  long long m = -1;
  if (!(in >> n >> m)) fail(ErrorKind::IoError, "expected header line 'n m'");
  require(m >= 0, ErrorKind::IoError, "negative edge count");
  std::vector<EdgeInput> edges;
  edges.reserve(m);
  std::string line;
  std::getline(in, line);
  while (static_cast<long long>(edges.size()) < m) {
    if (!std::getline(in, line)) fail(ErrorKind::IoError, "unexpected end of graph file");
    std::istringstream ls(line);
    EdgeInput e;
    if (!(ls >> e.u >> e.v)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      fail(ErrorKind::IoError, "bad edge line: " + line);
    }
    if (!(ls >> e.w)) e.w = 1;
    edges.push_back(e);
  }
  return build_graph(n, edges);
}

void write_graph_text(const Graph& g, std::ostream& out) {
  out << g.n() << ' ' << g.m() << '\n';
  for (const auto& e : g.edges()) out << e.u << ' ' << e.v << ' ' << e.w << '\n';
}

std::string graph_to_json(const Graph& g) {
  nlohmann::json j;
  j["n"] = g.n();
  auto& edges = j["edges"] = nlohmann::json::array();
  for (const auto& e : g.edges())
    edges.push_back({{"u", e.u},
                     {"v", e.v},
                     {"w", e.w},
                     {"port_u", e.port_u},
                     {"port_v", e.port_v}});
  return j.dump();
}

Graph graph_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::IoError, std::string("bad graph json: ") + e.what());
  }
  std::vector<EdgeInput> edges;
  for (const auto& je : j.at("edges"))
    edges.push_back({je.at("u").get<int>(), je.at("v").get<int>(),
                     je.value("w", int64_t(1))});
  Graph g = build_graph(j.at("n").get<int>(), edges);
  // Canonical ports are adjacency order; reject mirrors that disagree.
  for (size_t i = 0; i < g.edges().size(); ++i) {
    const auto& je = j.at("edges")[i];
    if (je.contains("port_u")) {
      require(je.at("port_u").get<int>() == g.edges()[i].port_u &&
                  je.at("port_v").get<int>() == g.edges()[i].port_v,
              ErrorKind::IoError, "json ports disagree with canonical assignment");
    }
  }
  return g;
}

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::BadVertexId: return "BadVertexId";
    case ErrorKind::SelfLoop: return "SelfLoop";
    case ErrorKind::DuplicateEdge: return "DuplicateEdge";
    case ErrorKind::BadWeight: return "BadWeight";
    case ErrorKind::Disconnected: return "Disconnected";
    case ErrorKind::MixedInstance: return "MixedInstance";
    case ErrorKind::TooManyFaults: return "TooManyFaults";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::EmptyTreeFaults: return "EmptyTreeFaults";
    case ErrorKind::PropertyViolation: return "PropertyViolation";
    case ErrorKind::BadSpec: return "BadSpec";
    case ErrorKind::BadConfig: return "BadConfig";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::MissingLabel: return "MissingLabel";
    case ErrorKind::Undelivered: return "Undelivered";
  }
  return "Unknown";
}

}  // namespace ftlab
