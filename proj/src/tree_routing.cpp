#include "ftlab/tree_routing.hpp"

#include <algorithm>
#include <cstring>

namespace ftlab {

namespace {

int edge_port_at(const Graph& g, const PortMap* ports, int edge_idx, int vertex) {
  const Edge& e = g.edge(edge_idx);
  if (!ports) return e.port_at(vertex);
  const PortPair& p = (*ports)[edge_idx];
  return vertex == e.u ? p.at_u : p.at_v;
}

}  // namespace

std::vector<int> gamma_set(const SpanningTree& t, int parent, int child, int fault_budget) {
  require(t.parent(child) == parent, ErrorKind::BadVertexId, "not a parent/child tree pair");
  int deg = static_cast<int>(t.children(parent).size()) + (parent == t.root() ? 0 : 1);
  if (deg <= fault_budget + 1) return {parent, child};
  std::vector<int> kids = t.children(parent);
  std::sort(kids.begin(), kids.end());
  int block = fault_budget + 1;
  int nblocks = static_cast<int>(kids.size()) / block;  // >= 1 since deg > f+1
  int pos = static_cast<int>(std::find(kids.begin(), kids.end(), child) - kids.begin());
  int b = std::min(pos / block, nblocks - 1);  // tail spills into the last full block
  int begin = b * block;
  int end = (b == nblocks - 1) ? static_cast<int>(kids.size()) : begin + block;
  return {kids.begin() + begin, kids.begin() + end};
}

TreeRoutingScheme tree_routing_scheme(const Graph& g, const SpanningTree& t, int fault_budget,
                                      const PortMap* ports) {
  TreeRoutingScheme out;
  out.fault_budget = fault_budget;
  out.labels.assign(g.n() + 1, {});
  out.tables.assign(g.n() + 1, {});

  // subtree sizes, then heavy child per vertex (ties to the smaller id)
  std::vector<int> size(g.n() + 1, 1);
  const auto& order = t.preorder();
  for (auto it = order.rbegin(); it != order.rend(); ++it)
    if (*it != t.root()) size[t.parent(*it)] += size[*it];
  std::vector<int> heavy(g.n() + 1, 0);
  for (int v = 1; v <= g.n(); ++v) {
    for (int c : t.children(v))
      if (heavy[v] == 0 || size[c] > size[heavy[v]] || (size[c] == size[heavy[v]] && c < heavy[v]))
        heavy[v] = c;
  }

  auto replica_ports_of = [&](int parent, int child) {
    std::vector<uint16_t> rp;
    for (int w : gamma_set(t, parent, child, fault_budget)) {
      if (w == parent) continue;  // ports of the parent's neighbors only
      int e = t.parent_edge(w);
      rp.push_back(static_cast<uint16_t>(edge_port_at(g, ports, e, parent)));
    }
    std::sort(rp.begin(), rp.end());
    return rp;
  };

  for (int v : order) {
    TreeRoutingLabel& lab = out.labels[v];
    lab.range = t.anc(v);
    if (v != t.root()) {
      lab.light = out.labels[t.parent(v)].light;
      if (heavy[t.parent(v)] != v) {
        LightEdgeEntry entry;
        entry.parent_dfs_in = t.dfs_in(t.parent(v));
        entry.port = static_cast<uint16_t>(edge_port_at(g, ports, t.parent_edge(v), t.parent(v)));
        entry.replica_ports = replica_ports_of(t.parent(v), v);
        lab.light.push_back(entry);
      }
    }

    TreeRoutingTable& tab = out.tables[v];
    tab.range = t.anc(v);
    tab.tree_degree = static_cast<int>(t.children(v).size()) + (v == t.root() ? 0 : 1);
    if (v != t.root())
      tab.port_to_parent = edge_port_at(g, ports, t.parent_edge(v), v);
    if (heavy[v] != 0) {
      tab.heavy_child_port = edge_port_at(g, ports, t.parent_edge(heavy[v]), v);
      tab.heavy_child_range = t.anc(heavy[v]);
      tab.heavy_replica_ports = replica_ports_of(v, heavy[v]);
    }
  }
  return out;
}

NextHop tree_route_next_hop(const TreeRoutingTable& table, const TreeRoutingLabel& target) {
  NextHop hop;
  if (target.range == table.range) {
    hop.arrived = true;
    return hop;
  }
  if (!is_ancestor(table.range, target.range)) {
    require(table.port_to_parent >= 0, ErrorKind::IndexOutOfRange,
            "target outside the tree of this table");
    hop.up = true;
    hop.port = table.port_to_parent;
    return hop;
  }
  if (table.heavy_child_port >= 0 && is_ancestor(table.heavy_child_range, target.range)) {
    hop.port = table.heavy_child_port;
    hop.replica_ports = table.heavy_replica_ports;
    return hop;
  }
  // descend through the light edge hanging at this vertex
  for (const auto& entry : target.light) {
    if (entry.parent_dfs_in == table.range.dfs_in) {
      hop.port = entry.port;
      hop.replica_ports = entry.replica_ports;
      return hop;
    }
  }
  fail(ErrorKind::IndexOutOfRange, "target label has no light entry at this vertex");
}

size_t tree_label_encoded_size(const TreeRoutingLabel& label) {
  size_t size = 4 + 4 + 2;  // range + entry count
  for (const auto& entry : label.light) size += 4 + 2 + 2 + 2 * entry.replica_ports.size();
  return size;
}

namespace {

void put_u16(std::span<uint8_t> out, size_t& pos, uint16_t v) {
  out[pos++] = static_cast<uint8_t>(v);
  out[pos++] = static_cast<uint8_t>(v >> 8);
}
void put_u32(std::span<uint8_t> out, size_t& pos, uint32_t v) {
  for (int i = 0; i < 4; ++i) out[pos++] = static_cast<uint8_t>(v >> (8 * i));
}
uint16_t get_u16(std::span<const uint8_t> in, size_t& pos) {
  uint16_t v = static_cast<uint16_t>(in[pos] | (in[pos + 1] << 8));
  pos += 2;
  return v;
}
uint32_t get_u32(std::span<const uint8_t> in, size_t& pos) {
  uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(in[pos + i]) << (8 * i);
  pos += 4;
  return v;
}

}  // namespace

void tree_label_encode(const TreeRoutingLabel& label, std::span<uint8_t> out) {
  require(out.size() >= tree_label_encoded_size(label), ErrorKind::DimensionMismatch,
          "tree label buffer too small");
  std::memset(out.data(), 0, out.size());
  size_t pos = 0;
  put_u32(out, pos, label.range.dfs_in);
  put_u32(out, pos, label.range.dfs_out);
  put_u16(out, pos, static_cast<uint16_t>(label.light.size()));
  for (const auto& entry : label.light) {
    put_u32(out, pos, entry.parent_dfs_in);
    put_u16(out, pos, entry.port);
    put_u16(out, pos, static_cast<uint16_t>(entry.replica_ports.size()));
    for (uint16_t p : entry.replica_ports) put_u16(out, pos, p);
  }
}

TreeRoutingLabel tree_label_decode(std::span<const uint8_t> in) {
  TreeRoutingLabel label;
  size_t pos = 0;
  auto need = [&](size_t k) {
    require(pos + k <= in.size(), ErrorKind::IoError, "truncated tree label");
  };
  need(10);
  label.range.dfs_in = get_u32(in, pos);
  label.range.dfs_out = get_u32(in, pos);
  uint16_t entries = get_u16(in, pos);
  for (int i = 0; i < entries; ++i) {
    need(8);
    LightEdgeEntry entry;
    entry.parent_dfs_in = get_u32(in, pos);
    entry.port = get_u16(in, pos);
    uint16_t reps = get_u16(in, pos);
    need(2 * reps);
    for (int r = 0; r < reps; ++r) entry.replica_ports.push_back(get_u16(in, pos));
    label.light.push_back(std::move(entry));
  }
  return label;
}

}  // namespace ftlab
