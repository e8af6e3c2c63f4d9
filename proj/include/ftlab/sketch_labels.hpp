#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "ftlab/component_tree.hpp"
#include "ftlab/sketch.hpp"
#include "ftlab/tree_routing.hpp"

namespace ftlab {

struct SketchVertexLabel {
  AncestryLabel anc;
  int id = 0;
  std::vector<uint8_t> tree_label;  // encoded tree routing label (routing variant)
  uint64_t instance_id = 0;
};

// Labels of edges: every edge carries its XORable identity; tree edges also
// carry the two subtree sketches, the whole-graph sketch and the seeds.
struct SketchEdgeLabel {
  ExtendedEdgeId eid;
  bool is_tree_edge = false;
  uint64_t instance_id = 0;
  SketchParams params;  // meaningful for tree edges
  SeedPair seeds;
  std::shared_ptr<const Sketch> subtree_u;  // subtree sketch rooted at the id_u endpoint
  std::shared_ptr<const Sketch> subtree_v;
  std::shared_ptr<const Sketch> total;
};

struct SketchLabeling {
  SketchParams params;
  SeedPair seeds;
  uint64_t instance_id = 0;
  std::vector<SketchVertexLabel> vertex_labels;  // by vertex id, slot 0 unused
  std::vector<SketchEdgeLabel> edge_labels;      // by edge index

  const SketchVertexLabel& vertex_label(int v) const { return vertex_labels[v]; }
  const SketchEdgeLabel& edge_label(int e) const { return edge_labels[e]; }

  size_t vertex_label_bits(int v) const;
  size_t tree_edge_label_bits() const;
  size_t nontree_edge_label_bits() const;
  size_t max_edge_label_bits() const;
};

// Assigns the sketch-based connectivity labels for (g, t). With `routing`
// the edge identities additionally carry ports and tree routing labels, and
// ports come from `ports` when the instance is embedded in a larger graph.
SketchLabeling assign_sketch_labels(const Graph& g, const SpanningTree& t, const SeedPair& seeds,
                                    int fault_budget,
                                    const TreeRoutingScheme* routing = nullptr,
                                    const PortMap* ports = nullptr);

// A path description alternating real edges (with their identities) and
// stretches inside one surviving component of T minus the faults.
struct PathSegment {
  bool is_edge = false;
  ExtendedEdgeId eid;    // when is_edge
  bool forward = true;   // edge traversed id_u -> id_v
  int from_id = 0;
  int to_id = 0;
  AncestryLabel from_anc;
  AncestryLabel to_anc;
  std::vector<uint8_t> from_tree_label;
  std::vector<uint8_t> to_tree_label;
};

struct SuccinctPath {
  std::vector<PathSegment> segments;
  int recovery_edges = 0;
};

struct SketchDecodeResult {
  bool connected = false;
  std::optional<SuccinctPath> path;
};

// Step 2: sketches (in the full graph) of every component of T minus the
// faulty tree edges; tree_faults must align with the component tree nodes.
std::vector<Sketch> component_sketches_in_g(
    const ComponentTree& ct, const std::vector<const SketchEdgeLabel*>& tree_faults,
    const SketchParams& params);

// Step 3: removes every faulty edge crossing two components from both
// endpoint components' sketches; internal faulty edges are untouched.
void cancel_faulty_edges(std::vector<Sketch>& comp_sketches, const ComponentTree& ct,
                         const std::vector<const SketchEdgeLabel*>& faults,
                         const MembershipHash& hash, const SketchParams& params);

// Step 4: merge phases, one sketch unit consumed per phase; stops as soon as
// the components of s and t unite.
struct MergeEdge {
  int comp_u = 0;  // component (in T minus faults) of the id_u endpoint
  int comp_v = 0;
  ExtendedEdgeId eid;
};

struct BoruvkaResult {
  bool connected = false;
  std::vector<MergeEdge> forest;
};

BoruvkaResult boruvka_decode(const ComponentTree& ct, std::vector<Sketch> comp_sketches,
                             int comp_s, int comp_t, const SketchParams& params,
                             uint64_t seed_id);

// Full decoder: given the labels of s, t and the faults only, decides
// connectivity in G minus the faults and, when connected, produces the path
// description.
SketchDecodeResult sketch_decode(const SketchVertexLabel& ls, const SketchVertexLabel& lt,
                                 const std::vector<const SketchEdgeLabel*>& faults);

SketchDecodeResult sketch_decode(const SketchLabeling& labeling, int s, int t,
                                 const std::vector<int>& fault_edges);

}  // namespace ftlab
