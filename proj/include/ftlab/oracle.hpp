#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ftlab/graph.hpp"

namespace ftlab {

inline constexpr int64_t kUnreachable = -1;

// Ground-truth queries on G minus a set of faulty edges (by edge index).
// Two independent implementations each; the suites cross-check them.
bool oracle_connected(const Graph& g, const std::vector<int>& faults, int s, int t);
bool oracle_connected_unionfind(const Graph& g, const std::vector<int>& faults, int s, int t);

int64_t oracle_distance(const Graph& g, const std::vector<int>& faults, int s, int t);
int64_t oracle_distance_bellman_ford(const Graph& g, const std::vector<int>& faults, int s, int t);

enum class FixtureKind { ErdosRenyi, Grid, PathBundle, TreePlusChords };

struct FixtureSpec {
  FixtureKind kind = FixtureKind::ErdosRenyi;
  int n = 0;           // vertex budget (erdos_renyi, grid, tree_plus_chords)
  double p = 0.0;      // edge probability / chord density
  int f = 0;           // path_bundle: number of faulty paths
  int length = 0;      // path_bundle: edges per path
  uint64_t seed = 0;
  int64_t max_weight = 1;  // weights drawn uniformly from [1, max_weight]

  static FixtureSpec parse_json(const std::string& text);
};

struct Fixture {
  Graph graph;
  int s = 1;
  int t = 1;
  // path_bundle: last_edges[i] is the edge adjacent to t on path i.
  std::vector<int> last_edges;

  // Faults that keep exactly path `survivor` alive (path_bundle only).
  std::vector<int> faults_for_survivor(int survivor) const;
};

Fixture make_fixture(const FixtureSpec& spec);

// Convenience: resample until the fixture graph is connected.
Fixture make_connected_fixture(FixtureSpec spec, int max_attempts = 64);

}  // namespace ftlab
