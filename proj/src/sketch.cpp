#include "ftlab/sketch.hpp"

#include <cstring>

namespace ftlab {

namespace {

int ceil_log2(uint64_t x) {
  int b = 0;
  while ((uint64_t(1) << b) < x) ++b;
  return b;
}

int floor_log2(uint64_t x) {
  int b = 0;
  while ((uint64_t(2) << b) <= x) ++b;
  return b;
}

// 2^61 - 1, comfortably above every edge key space we instantiate.
constexpr uint64_t kPrime = (uint64_t(1) << 61) - 1;

uint64_t mulmod(uint64_t a, uint64_t b) {
  return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % kPrime);
}

}  // namespace

int sketch_units_for(int n) { return std::max(32, 2 * ceil_log2(std::max(n, 2))); }

SketchParams SketchParams::make(int n, int m, int fault_budget, uint32_t tree_label_bytes) {
  require(n >= 1, ErrorKind::BadConfig, "instance needs at least one vertex");
  SketchParams p;
  p.n = n;
  p.m = m;
  p.units = sketch_units_for(n);
  p.levels = m >= 1 ? floor_log2(static_cast<uint64_t>(m)) + 1 : 1;
  p.hash_range_log = m >= 2 ? ceil_log2(static_cast<uint64_t>(m)) : 0;
  p.lambda_bits = 4 * ceil_log2(std::max(n, 2)) + 32;
  p.fault_budget = fault_budget;
  p.tree_label_bytes = tree_label_bytes;
  return p;
}

Uid derive_uid(uint64_t seed_id, int lambda_bits, int id_u, int id_v) {
  require(id_u < id_v, ErrorKind::BadVertexId, "uid endpoints must be ordered");
  uint64_t key = (static_cast<uint64_t>(id_u) << 32) | static_cast<uint32_t>(id_v);
  Uid uid;
  uid.lo = mix64(seed_id ^ mix64(key ^ 0x1d8af6d54bc852f1ULL));
  uid.hi = mix64(uid.lo ^ mix64(key + 0x9e3779b97f4a7c15ULL) ^ seed_id);
  if (lambda_bits >= 128) return uid;
  if (lambda_bits <= 64) {
    uid.hi = 0;
    if (lambda_bits < 64) uid.lo &= (uint64_t(1) << lambda_bits) - 1;
  } else {
    uid.hi &= (uint64_t(1) << (lambda_bits - 64)) - 1;
  }
  return uid;
}

uint64_t edge_key(int n, int id_u, int id_v) {
  return static_cast<uint64_t>(id_u) * static_cast<uint64_t>(n + 1) +
         static_cast<uint64_t>(id_v);
}

MembershipHash::MembershipHash(uint64_t seed_h, int units, int range_log)
    : range_log_(range_log) {
  a_.reserve(units);
  b_.reserve(units);
  SplitMix64 rng(derive_seed(seed_h, 0x68617368u));
  for (int i = 0; i < units; ++i) {
    a_.push_back(1 + rng.next() % (kPrime - 1));
    b_.push_back(rng.next() % kPrime);
  }
}

uint64_t MembershipHash::value(int unit, uint64_t key) const {
  require(unit >= 0 && unit < static_cast<int>(a_.size()), ErrorKind::IndexOutOfRange,
          "unit index out of range");
  uint64_t h = (mulmod(a_[unit], key % kPrime) + b_[unit]) % kPrime;
  return range_log_ >= 61 ? h : (h & ((uint64_t(1) << range_log_) - 1));
}

bool MembershipHash::member(int unit, int level, uint64_t key) const {
  require(level >= 0, ErrorKind::IndexOutOfRange, "negative level");
  if (level > range_log_) return false;
  return value(unit, key) < (uint64_t(1) << (range_log_ - level));
}

int MembershipHash::top_level(int unit, uint64_t key, int levels) const {
  uint64_t h = value(unit, key);
  // largest j with h < 2^(range-j)
  int j = range_log_ - (h == 0 ? 0 : (64 - __builtin_clzll(h)));
  if (h == 0) j = range_log_;
  return std::min(j, levels - 1);
}

ExtendedEdgeId make_eid(const SketchParams& params, const SeedPair& seeds, int id_u, int id_v,
                        const AncestryLabel& anc_u, const AncestryLabel& anc_v) {
  require(id_u >= 1 && id_v <= params.n && id_u < id_v, ErrorKind::BadVertexId,
          "eid endpoints out of range");
  ExtendedEdgeId eid;
  eid.uid = derive_uid(seeds.seed_id, params.lambda_bits, id_u, id_v);
  eid.id_u = id_u;
  eid.id_v = id_v;
  eid.anc_u = anc_u;
  eid.anc_v = anc_v;
  return eid;
}

namespace {

void put_bytes(std::vector<uint8_t>& buf, size_t& pos, const void* src, size_t len) {
  std::memcpy(buf.data() + pos, src, len);
  pos += len;
}

void put_u32_at(std::vector<uint8_t>& buf, size_t& pos, uint32_t v) {
  for (int i = 0; i < 4; ++i) buf[pos++] = static_cast<uint8_t>(v >> (8 * i));
}

uint32_t read_u32(const uint8_t* p) {
  uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(p[i]) << (8 * i);
  return v;
}

}  // namespace

std::vector<uint64_t> eid_cell_image(const SketchParams& params, const ExtendedEdgeId& eid) {
  std::vector<uint8_t> buf(params.cell_words() * 8, 0);
  size_t pos = 0;
  size_t ub = params.uid_bytes();
  for (size_t i = 0; i < ub; ++i) {
    uint64_t word = i < 8 ? eid.uid.lo : eid.uid.hi;
    buf[pos++] = static_cast<uint8_t>(word >> (8 * (i & 7)));
  }
  put_u32_at(buf, pos, static_cast<uint32_t>(eid.id_u));
  put_u32_at(buf, pos, static_cast<uint32_t>(eid.id_v));
  put_u32_at(buf, pos, eid.anc_u.dfs_in);
  put_u32_at(buf, pos, eid.anc_u.dfs_out);
  put_u32_at(buf, pos, eid.anc_v.dfs_in);
  put_u32_at(buf, pos, eid.anc_v.dfs_out);
  if (params.routing_variant()) {
    buf[pos++] = static_cast<uint8_t>(eid.port_uv);
    buf[pos++] = static_cast<uint8_t>(eid.port_uv >> 8);
    buf[pos++] = static_cast<uint8_t>(eid.port_vu);
    buf[pos++] = static_cast<uint8_t>(eid.port_vu >> 8);
    require(eid.tree_label_u.size() == params.tree_label_bytes &&
                eid.tree_label_v.size() == params.tree_label_bytes,
            ErrorKind::DimensionMismatch, "tree label padding mismatch");
    put_bytes(buf, pos, eid.tree_label_u.data(), eid.tree_label_u.size());
    put_bytes(buf, pos, eid.tree_label_v.data(), eid.tree_label_v.size());
  }
  std::vector<uint64_t> words(params.cell_words(), 0);
  std::memcpy(words.data(), buf.data(), buf.size());
  return words;
}

void xor_cell(std::span<uint64_t> cell, std::span<const uint64_t> image) {
  require(cell.size() == image.size(), ErrorKind::DimensionMismatch, "cell width mismatch");
  for (size_t i = 0; i < cell.size(); ++i) cell[i] ^= image[i];
}

void sketch_add_edge(Sketch& s, const SketchParams& params, const MembershipHash& hash,
                     const ExtendedEdgeId& eid) {
  auto image = eid_cell_image(params, eid);
  uint64_t key = edge_key(params.n, eid.id_u, eid.id_v);
  for (int unit = 0; unit < params.units; ++unit) {
    int top = hash.top_level(unit, key, params.levels);
    for (int level = 0; level <= top; ++level) xor_cell(s.cell(params, unit, level), image);
  }
}

ExtendedEdgeId decode_cell(const SketchParams& params, std::span<const uint64_t> cell) {
  std::vector<uint8_t> buf(cell.size() * 8);
  std::memcpy(buf.data(), cell.data(), buf.size());
  ExtendedEdgeId eid;
  size_t pos = 0;
  size_t ub = params.uid_bytes();
  for (size_t i = 0; i < ub; ++i) {
    uint64_t byte = buf[pos++];
    if (i < 8)
      eid.uid.lo |= byte << (8 * i);
    else
      eid.uid.hi |= byte << (8 * (i - 8));
  }
  eid.id_u = static_cast<int>(read_u32(buf.data() + pos));
  pos += 4;
  eid.id_v = static_cast<int>(read_u32(buf.data() + pos));
  pos += 4;
  eid.anc_u.dfs_in = read_u32(buf.data() + pos);
  pos += 4;
  eid.anc_u.dfs_out = read_u32(buf.data() + pos);
  pos += 4;
  eid.anc_v.dfs_in = read_u32(buf.data() + pos);
  pos += 4;
  eid.anc_v.dfs_out = read_u32(buf.data() + pos);
  pos += 4;
  if (params.routing_variant()) {
    eid.port_uv = buf[pos] | (buf[pos + 1] << 8);
    pos += 2;
    eid.port_vu = buf[pos] | (buf[pos + 1] << 8);
    pos += 2;
    eid.tree_label_u.assign(buf.begin() + pos, buf.begin() + pos + params.tree_label_bytes);
    pos += params.tree_label_bytes;
    eid.tree_label_v.assign(buf.begin() + pos, buf.begin() + pos + params.tree_label_bytes);
  }
  return eid;
}

bool cell_is_single_edge(const SketchParams& params, uint64_t seed_id,
                         std::span<const uint64_t> cell) {
  ExtendedEdgeId eid = decode_cell(params, cell);
  if (eid.id_u < 1 || eid.id_v > params.n || eid.id_u >= eid.id_v) return false;
  return derive_uid(seed_id, params.lambda_bits, eid.id_u, eid.id_v) == eid.uid;
}

std::optional<ExtendedEdgeId> extract_outgoing_edge(const Sketch& s, const SketchParams& params,
                                                    int unit, uint64_t seed_id) {
  require(unit >= 0 && unit < params.units, ErrorKind::IndexOutOfRange, "unit out of range");
  for (int level = 0; level < params.levels; ++level) {
    auto cell = s.cell(params, unit, level);
    bool zero = true;
    for (uint64_t wd : cell) zero &= (wd == 0);
    if (zero) continue;
    if (cell_is_single_edge(params, seed_id, cell)) return decode_cell(params, cell);
  }
  return std::nullopt;
}

}  // namespace ftlab
