#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ftlab/graph.hpp"
#include "ftlab/rng.hpp"

namespace ftlab {

// Seeds of one labeling instance: seed_id derives the verifiable edge
// identifiers, seed_h the per-unit sampling hash functions.
struct SeedPair {
  uint64_t seed_id = 0;
  uint64_t seed_h = 0;
};

// Up to 128 identifier bits; instances use lambda = 4*ceil(log2 n) + 32.
struct Uid {
  uint64_t lo = 0;
  uint64_t hi = 0;

  bool operator==(const Uid& o) const { return lo == o.lo && hi == o.hi; }
};

Uid derive_uid(uint64_t seed_id, int lambda_bits, int id_u, int id_v);

// Geometry of one sketch instance. All labels of the instance share it.
struct SketchParams {
  int n = 0;
  int m = 0;
  int units = 0;           // independent sketch units, one consumed per merge phase
  int levels = 0;          // floor(log2 m) + 1 sampling levels per unit
  int hash_range_log = 0;  // ceil(log2 m); hash values live in [0, 2^range)
  int lambda_bits = 0;
  int fault_budget = 0;
  uint32_t tree_label_bytes = 0;  // >0 switches cells to the routing layout

  static SketchParams make(int n, int m, int fault_budget, uint32_t tree_label_bytes = 0);

  bool routing_variant() const { return tree_label_bytes > 0; }
  size_t uid_bytes() const { return (static_cast<size_t>(lambda_bits) + 7) / 8; }
  // cell layout: uid | id_u u32 | id_v u32 | anc_u 2xu32 | anc_v 2xu32
  //              [| port_uv u16 | port_vu u16 | tree_label_u | tree_label_v]
  size_t cell_bytes_raw() const {
    return uid_bytes() + 8 + 16 +
           (routing_variant() ? 4 + 2 * static_cast<size_t>(tree_label_bytes) : 0);
  }
  size_t cell_words() const { return (cell_bytes_raw() + 7) / 8; }
  size_t sketch_words() const {
    return static_cast<size_t>(units) * static_cast<size_t>(levels) * cell_words();
  }
  size_t cell_bits() const { return cell_bytes_raw() * 8; }

  bool operator==(const SketchParams& o) const = default;
};

// Default unit count: enough merge phases to drive the per-link miss
// probability far below any sweep size at desk scale.
int sketch_units_for(int n);

// The XORable identity of one edge: verifiable (uid is a function of the
// endpoint ids and the instance seed) and self-locating (ancestry intervals
// ride along; the routing variant adds ports and tree routing labels).
struct ExtendedEdgeId {
  Uid uid;
  int id_u = 0;  // id_u < id_v, instance-local ids
  int id_v = 0;
  AncestryLabel anc_u;
  AncestryLabel anc_v;
  int port_uv = 0;  // physical port at u toward v (routing variant)
  int port_vu = 0;
  std::vector<uint8_t> tree_label_u;  // encoded, padded to tree_label_bytes
  std::vector<uint8_t> tree_label_v;
};

ExtendedEdgeId make_eid(const SketchParams& params, const SeedPair& seeds, int id_u, int id_v,
                        const AncestryLabel& anc_u, const AncestryLabel& anc_v);

uint64_t edge_key(int n, int id_u, int id_v);

// The L pairwise-independent affine hash functions ((a x + b) mod p) mod 2^R
// determining the nested sampling sets.
class MembershipHash {
 public:
  MembershipHash(uint64_t seed_h, int units, int range_log);

  uint64_t value(int unit, uint64_t key) const;
  // Level-j membership: value < 2^(range-j). Monotone in j.
  bool member(int unit, int level, uint64_t key) const;
  // Largest level the key is sampled into (at least 0), capped by `levels`,
  // i.e. the key belongs to levels 0..result inclusive, or -1 if none.
  int top_level(int unit, uint64_t key, int levels) const;

  int units() const { return static_cast<int>(a_.size()); }

 private:
  std::vector<uint64_t> a_, b_;
  int range_log_ = 0;
};

// XOR accumulator: units x levels cells, each cell one encoded edge identity.
struct Sketch {
  std::vector<uint64_t> w;

  static Sketch zero(const SketchParams& params) {
    Sketch s;
    s.w.assign(params.sketch_words(), 0);
    return s;
  }

  void xor_with(const Sketch& other) {
    require(w.size() == other.w.size(), ErrorKind::DimensionMismatch, "sketch size mismatch");
    for (size_t i = 0; i < w.size(); ++i) w[i] ^= other.w[i];
  }

  bool is_zero() const {
    for (uint64_t x : w)
      if (x) return false;
    return true;
  }

  std::span<uint64_t> cell(const SketchParams& p, int unit, int level) {
    size_t cw = p.cell_words();
    return {w.data() + (static_cast<size_t>(unit) * p.levels + level) * cw, cw};
  }
  std::span<const uint64_t> cell(const SketchParams& p, int unit, int level) const {
    size_t cw = p.cell_words();
    return {w.data() + (static_cast<size_t>(unit) * p.levels + level) * cw, cw};
  }

  void clear_unit(const SketchParams& p, int unit) {
    size_t cw = p.cell_words() * p.levels;
    std::fill_n(w.begin() + static_cast<size_t>(unit) * cw, cw, uint64_t(0));
  }
};

// Byte image of an identifier in the instance cell layout (for XORing).
std::vector<uint64_t> eid_cell_image(const SketchParams& params, const ExtendedEdgeId& eid);

void xor_cell(std::span<uint64_t> cell, std::span<const uint64_t> image);

// XORs the image of `eid` into every cell (unit, 0..top_level(unit)) of `s`.
void sketch_add_edge(Sketch& s, const SketchParams& params, const MembershipHash& hash,
                     const ExtendedEdgeId& eid);

// Reads the fields of a cell without validating them.
ExtendedEdgeId decode_cell(const SketchParams& params, std::span<const uint64_t> cell);

// True iff the cell holds the identity of exactly one edge: endpoint ids are
// legal and the uid re-derived from them matches.
bool cell_is_single_edge(const SketchParams& params, uint64_t seed_id,
                         std::span<const uint64_t> cell);

// Scans the levels of one unit and returns the first verified single-edge
// identity, if any. A `none` answer is normal: every level may hold zero or
// more than one sampled edge.
std::optional<ExtendedEdgeId> extract_outgoing_edge(const Sketch& s, const SketchParams& params,
                                                    int unit, uint64_t seed_id);

}  // namespace ftlab
