#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ftlab/error.hpp"

namespace ftlab {

// Undirected edge between vertices u < v. Port numbers are the positions of
// the edge in the adjacency lists of u and v.
struct Edge {
  int u = 0;
  int v = 0;
  int64_t w = 1;
  int port_u = -1;
  int port_v = -1;

  int other(int x) const { return x == u ? v : u; }
  int port_at(int x) const { return x == u ? port_u : port_v; }
};

struct EdgeInput {
  int u = 0;
  int v = 0;
  int64_t w = 1;
};

// Immutable simple graph on vertices {1..n} with positive integer weights.
// adj[v][p] is the index of the edge reached from v through port p.
class Graph {
 public:
  Graph() = default;

  int n() const { return n_; }
  int m() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int idx) const { return edges_[idx]; }
  const std::vector<int>& adj(int v) const { return adj_[v]; }
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }
  int64_t max_weight() const { return max_weight_; }

  // Index of edge {u,v}, or -1.
  int find_edge(int u, int v) const;

  friend Graph build_graph(int n, const std::vector<EdgeInput>& input);

 private:
  int n_ = 0;
  int64_t max_weight_ = 1;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adj_;
};

Graph build_graph(int n, const std::vector<EdgeInput>& input);

// DFS interval of a vertex. Timestamps over one tree are a permutation of
// {1..2n}; containment of intervals is exactly tree ancestry.
struct AncestryLabel {
  uint32_t dfs_in = 0;
  uint32_t dfs_out = 0;

  bool operator==(const AncestryLabel& o) const {
    return dfs_in == o.dfs_in && dfs_out == o.dfs_out;
  }
};

// True iff a is an ancestor of b (reflexively) in the tree both labels came from.
inline bool is_ancestor(const AncestryLabel& a, const AncestryLabel& b) {
  return a.dfs_in <= b.dfs_in && b.dfs_out <= a.dfs_out;
}

// Rooted DFS spanning tree of a connected graph.
class SpanningTree {
 public:
  int root() const { return root_; }
  int parent(int v) const { return parent_[v]; }
  int parent_edge(int v) const { return parent_edge_[v]; }
  bool edge_in_tree(int edge_idx) const { return in_tree_[edge_idx] != 0; }
  const std::vector<int>& children(int v) const { return children_[v]; }
  const std::vector<int>& preorder() const { return preorder_; }
  int size() const { return static_cast<int>(preorder_.size()); }

  AncestryLabel anc(int v) const { return {dfs_in_[v], dfs_out_[v]}; }
  uint32_t dfs_in(int v) const { return dfs_in_[v]; }
  uint32_t dfs_out(int v) const { return dfs_out_[v]; }

  bool is_ancestor_of(int u, int v) const { return is_ancestor(anc(u), anc(v)); }

  // Path from u to v through their lowest common ancestor, as vertex ids.
  std::vector<int> tree_path(int u, int v) const;

  friend SpanningTree spanning_tree(const Graph& g, int root);

 private:
  int root_ = 0;
  std::vector<int> parent_;
  std::vector<int> parent_edge_;
  std::vector<uint32_t> dfs_in_;
  std::vector<uint32_t> dfs_out_;
  std::vector<char> in_tree_;
  std::vector<std::vector<int>> children_;
  std::vector<int> preorder_;
};

// Builds the DFS tree rooted at `root`. Throws Disconnected if some vertex is
// unreachable; the message names one vertex per missing component.
SpanningTree spanning_tree(const Graph& g, int root);

// Component id (1-based, by smallest member) for every vertex.
std::vector<int> connected_components(const Graph& g);
bool is_connected(const Graph& g);

// Text format: first line "n m", then m lines "u v [w]".
Graph parse_graph_text(std::istream& in);
void write_graph_text(const Graph& g, std::ostream& out);

// JSON mirror with explicit ports.
std::string graph_to_json(const Graph& g);
Graph graph_from_json(const std::string& text);

}  // namespace ftlab
