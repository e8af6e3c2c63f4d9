#pragma once

#include <cstdint>
#include <vector>

#include "ftlab/bitvec.hpp"
#include "ftlab/gf2.hpp"
#include "ftlab/graph.hpp"

namespace ftlab {

// Edge label of the circulation-sampling connectivity scheme: a b-bit vector
// whose XOR over an edge set is zero exactly when the set is an induced cut
// (up to 2^-b false positives), plus the data the decoder needs to place the
// edge relative to the query endpoints.
struct CycleLabel {
  BitVec phi;
  bool is_tree_edge = false;
  AncestryLabel anc_u;
  AncestryLabel anc_v;
  uint64_t instance_id = 0;
};

struct VertexCycleLabel {
  AncestryLabel anc;
  // Instance plumbing: the decoder needs the fault budget and instance
  // binding; the graph size rides along for diagnostics.
  uint32_t n = 0;
  uint32_t fault_budget = 0;
  uint64_t instance_id = 0;
};

struct CycleLabeling {
  std::vector<CycleLabel> edge_labels;          // by edge index
  std::vector<VertexCycleLabel> vertex_labels;  // by vertex id, slot 0 unused
  uint32_t bits = 0;
  uint32_t fault_budget = 0;
  uint64_t instance_id = 0;
};

// Default label width for a fault budget: 2^-40 per-query error at any f.
inline int cycle_bits_for_faults(int f) { return f + 40; }

// Samples b random binary circulations at once: every non-tree edge gets b
// random bits, every tree edge the XOR over the non-tree edges whose
// fundamental cycle contains it (one bottom-up subtree pass).
CycleLabeling assign_cycle_labels(const Graph& g, const SpanningTree& t, int bits, uint64_t seed,
                                  int fault_budget);

// XOR test: true for every induced cut delta(S); false for anything else
// except with probability 2^-b per query.
bool is_induced_cut(const std::vector<const CycleLabel*>& labels);
bool is_induced_cut(const std::vector<CycleLabel>& labels);

struct ConnectivityAnswer {
  bool connected = true;
};

// Decides s-t connectivity under the faults `fl` from labels alone: searches
// for a sub-set of faults that forms an induced cut separating s from t by
// solving two GF(2) linear systems.
ConnectivityAnswer cycle_decode(const VertexCycleLabel& vs, const VertexCycleLabel& vt,
                                const std::vector<CycleLabel>& fl);

}  // namespace ftlab
