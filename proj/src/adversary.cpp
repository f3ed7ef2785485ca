#include "pgx/adversary.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <numeric>
#include <random>
#include <sstream>

namespace pgx {

namespace {

Port port_toward(const PortGraph& g, NodeId u, NodeId v) {
  for (Port p = 0; p < g.degree(u); ++p)
    if (g.adjacency()[u][p].node == v) return p;
  throw AdversaryError(AdversaryErrorKind::bad_params,
                       "no edge between " + std::to_string(u) + " and " +
                           std::to_string(v));
}

std::pair<NodeId, NodeId> norm_edge(NodeId a, NodeId b) {
  return a < b ? std::pair{a, b} : std::pair{b, a};
}

std::vector<char> visited_nodes(const PortGraph& g, NodeId start,
                                const PortSequence& seq) {
  std::vector<char> seen(g.node_count(), 0);
  seen[start] = 1;
  NodeId at = start;
  for (Port p : seq) {
    if (p >= g.degree(at)) break;
    at = g.adjacency()[at][p].node;
    seen[at] = 1;
  }
  return seen;
}

// Edges of one crossing gadget, its 2m nodes placed at [offset, offset + 2m):
// copy 0 keeps base ids, copy 1 sits m above. Ports are inherited from the
// base at both ends, crossed or not.
void append_gadget(std::vector<EdgeRecord>& edges, const CrossingBase& base,
                   const CrossingVector& x, NodeId offset) {
  if (x.size != base.s)
    throw AdversaryError(AdversaryErrorKind::bad_params,
                         "crossing vector has size " + std::to_string(x.size) +
                             ", expected " + std::to_string(base.s));
  if (!x.nonzero())
    throw AdversaryError(AdversaryErrorKind::zero_vector,
                         "crossing vector must be nonzero");
  const NodeId m = base.m;
  auto emit = [&](NodeId a, NodeId b, bool crossed) {
    const Port pa = port_toward(base.h.graph, a, b);
    const Port pb = port_toward(base.h.graph, b, a);
    if (crossed) {
      edges.push_back({offset + a, pa, offset + m + b, pb});
      edges.push_back({offset + m + a, pa, offset + b, pb});
    } else {
      edges.push_back({offset + a, pa, offset + b, pb});
      edges.push_back({offset + m + a, pa, offset + m + b, pb});
    }
  };
  for (auto [a, b] : base.tree_edges) emit(a, b, false);
  for (std::uint32_t k = 0; k < base.s; ++k)
    emit(base.nontree_edges[k].first, base.nontree_edges[k].second, x.test(k));
}

void fill_gadget_roles(GadgetGraph& out, const CrossingBase& base,
                       std::uint32_t gadget, NodeId offset) {
  out.gateways.push_back(offset + base.v1());
  for (NodeId v = 0; v < 2 * base.m; ++v) {
    out.gadget_of[offset + v] = gadget;
    out.copy_of[offset + v] = v < base.m ? 0 : 1;
    out.base_node_of[offset + v] = v % base.m;
  }
}

std::vector<EdgeRecord> pendant_edges(const PortGraph& g,
                                      const std::vector<Port>& x) {
  const std::uint32_t m = g.node_count();
  if (m < 4 || m % 2 != 0)
    throw AdversaryError(AdversaryErrorKind::bad_params,
                         "node count must be even and at least 4");
  const Port half = m / 2;
  for (NodeId u = 0; u < m; ++u)
    if (g.degree(u) != half)
      throw AdversaryError(AdversaryErrorKind::bad_params,
                           "graph must be " + std::to_string(half) +
                               "-regular, node " + std::to_string(u) +
                               " has degree " + std::to_string(g.degree(u)));
  if (x.size() != m)
    throw AdversaryError(AdversaryErrorKind::bad_params, "one port per node");
  for (Port xi : x)
    if (xi >= half)
      throw AdversaryError(AdversaryErrorKind::bad_params,
                           "pendant port " + std::to_string(xi) +
                               " out of range");
  std::vector<EdgeRecord> edges;
  for (const EdgeRecord& e : g.edge_list()) {
    const Port pu = e.pu == x[e.u] ? half : e.pu;
    const Port pv = e.pv == x[e.v] ? half : e.pv;
    edges.push_back({e.u, pu, e.v, pv});
  }
  for (NodeId u = 0; u < m; ++u) edges.push_back({u, x[u], m + u, 0});
  return edges;
}

// GF(2) system over s variables; each row holds coefficients in bits 0..s-1
// and the right-hand side in the top bit. basis[c], when nonzero, has pivot
// bit c and no coefficient bits below c.
struct Gf2System {
  static constexpr std::uint64_t kRhs = 1ull << 63;

  std::uint32_t s;
  std::vector<std::uint64_t> basis;

  explicit Gf2System(std::uint32_t s) : s(s), basis(s, 0) {}

  // false means the row reduced to 0 = 1
  bool add(std::uint64_t row) {
    for (std::uint32_t c = 0; c < s; ++c)
      if (row >> c & 1) {
        if (basis[c]) {
          row ^= basis[c];
        } else {
          basis[c] = row;
          return true;
        }
      }
    return (row & kRhs) == 0;
  }

  // back-substitution; free-variable bits are taken from seed
  std::uint64_t solve(std::uint64_t seed = 0) const {
    std::uint64_t x = seed;
    for (std::uint32_t c = s; c-- > 0;) {
      if (!basis[c]) continue;
      const std::uint64_t coeffs = basis[c] & ~kRhs & ~(1ull << c);
      const unsigned dot = static_cast<unsigned>(std::popcount(coeffs & x)) & 1u;
      const unsigned rhs = static_cast<unsigned>(basis[c] >> 63) & 1u;
      if (dot ^ rhs)
        x |= 1ull << c;
      else
        x &= ~(1ull << c);
    }
    return x;
  }

  std::uint32_t first_free_column() const {
    for (std::uint32_t c = 0; c < s; ++c)
      if (!basis[c]) return c;
    return s;
  }
};

}  // namespace

CrossingBase make_crossing_base(std::uint32_t m) {
  if (m < 4 || m % 2 != 0)
    throw AdversaryError(AdversaryErrorKind::bad_params,
                         "m must be even and at least 4");
  if (m > 16)
    throw AdversaryError(AdversaryErrorKind::bad_params,
                         "m above 16 overflows 64-bit crossing vectors");
  CrossingBase base;
  base.m = m;
  base.h = gen_complete_bipartite(m / 2);
  const auto& order = base.h.hamiltonian_order;
  for (std::uint32_t t = 0; t + 1 < m; ++t)
    base.tree_edges.push_back(norm_edge(order[t], order[t + 1]));
  base.nontree_edges = canonical_nontree_edges(base.h.graph, base.tree_edges);
  base.s = static_cast<std::uint32_t>(base.nontree_edges.size());
  return base;
}

std::vector<std::pair<NodeId, NodeId>> canonical_nontree_edges(
    const PortGraph& h, const std::vector<std::pair<NodeId, NodeId>>& tree) {
  std::vector<std::pair<NodeId, NodeId>> in_tree;
  in_tree.reserve(tree.size());
  for (auto [a, b] : tree) in_tree.push_back(norm_edge(a, b));
  std::sort(in_tree.begin(), in_tree.end());
  std::vector<std::pair<NodeId, NodeId>> out;
  for (const EdgeRecord& e : h.edge_list())
    if (!std::binary_search(in_tree.begin(), in_tree.end(), norm_edge(e.u, e.v)))
      out.push_back(norm_edge(e.u, e.v));
  return out;  // edge_list is already sorted lexicographically
}

GadgetGraph build_crossing_gadget(const CrossingBase& base,
                                  const CrossingVector& x) {
  std::vector<EdgeRecord> edges;
  append_gadget(edges, base, x, 0);
  GadgetGraph out;
  out.graph = PortGraph::from_edges(2 * base.m, edges);
  out.m = base.m;
  out.gadget_of.assign(2 * base.m, 0);
  out.copy_of.assign(2 * base.m, 0);
  out.base_node_of.assign(2 * base.m, 0);
  fill_gadget_roles(out, base, 0, 0);
  return out;
}

GadgetGraph build_gadget_ring(const CrossingBase& base,
                              const std::vector<CrossingVector>& xmap) {
  const std::uint32_t m = base.m;
  if (xmap.size() != m)
    throw AdversaryError(AdversaryErrorKind::bad_params,
                         "one crossing vector per ring position");
  std::vector<EdgeRecord> edges;
  for (std::uint32_t i = 0; i < m; ++i)
    edges.push_back({i, 0, (i + 1) % m, 1});
  for (std::uint32_t i = 0; i < m; ++i) {
    const NodeId offset = m + i * 2 * m;
    edges.push_back({i, 2, offset + base.v1(), m / 2});
    append_gadget(edges, base, xmap[i], offset);
  }
  GadgetGraph out;
  out.graph = PortGraph::from_edges(m + 2 * m * m, edges);
  out.m = m;
  const std::uint32_t n = out.graph.node_count();
  out.gadget_of.assign(n, kNoGadget);
  out.copy_of.assign(n, 0);
  out.base_node_of.assign(n, 0);
  for (std::uint32_t i = 0; i < m; ++i) {
    out.cycle_nodes.push_back(i);
    fill_gadget_roles(out, base, i, m + i * 2 * m);
  }
  return out;
}

GadgetGraph build_gadget_ring_subset(const CrossingBase& base,
                                     const std::vector<std::uint32_t>& positions,
                                     const std::vector<CrossingVector>& xmap) {
  const std::uint32_t m = base.m;
  const std::uint32_t p = static_cast<std::uint32_t>(positions.size());
  if (p == 0)
    throw AdversaryError(AdversaryErrorKind::bad_params,
                         "positions must be nonempty");
  if (xmap.size() != m)
    throw AdversaryError(AdversaryErrorKind::bad_params,
                         "one crossing vector per base position");
  {
    std::vector<std::uint32_t> check = positions;
    std::sort(check.begin(), check.end());
    if (check.back() >= m ||
        std::adjacent_find(check.begin(), check.end()) != check.end())
      throw AdversaryError(AdversaryErrorKind::bad_params,
                           "positions must be distinct and below m");
  }
  std::vector<EdgeRecord> edges;
  Port gate_port = 2;
  if (p == 1) {
    gate_port = 0;
  } else if (p == 2) {
    edges.push_back({0, 0, 1, 0});
    gate_port = 1;
  } else {
    for (std::uint32_t i = 0; i < p; ++i)
      edges.push_back({i, 0, (i + 1) % p, 1});
  }
  for (std::uint32_t i = 0; i < p; ++i) {
    const NodeId offset = p + i * 2 * m;
    edges.push_back({i, gate_port, offset + base.v1(), m / 2});
    append_gadget(edges, base, xmap[positions[i]], offset);
  }
  GadgetGraph out;
  out.graph = PortGraph::from_edges(p + 2 * m * p, edges);
  out.m = m;
  const std::uint32_t n = out.graph.node_count();
  out.gadget_of.assign(n, kNoGadget);
  out.copy_of.assign(n, 0);
  out.base_node_of.assign(n, 0);
  for (std::uint32_t i = 0; i < p; ++i) {
    out.cycle_nodes.push_back(i);
    fill_gadget_roles(out, base, i, p + i * 2 * m);
  }
  return out;
}

PortGraph build_pendant_graph(const PortGraph& g, const std::vector<Port>& x) {
  return PortGraph::from_edges(2 * g.node_count(), pendant_edges(g, x));
}

PortGraph build_paired_pendant_graph(const PortGraph& g,
                                     const std::vector<Port>& x) {
  const std::uint32_t m = g.node_count();
  for (NodeId i = 0; i < m; ++i)
    port_toward(g, i, (i + 1) % m);  // ids must follow a hamiltonian cycle
  std::vector<EdgeRecord> edges = pendant_edges(g, x);
  for (std::uint32_t t = 0; t < m / 2; ++t)
    edges.push_back({m + 2 * t, 1, m + 2 * t + 1, 1});
  return PortGraph::from_edges(2 * m, edges);
}

std::vector<NodeId> paired_pendant_cycle(std::uint32_t m) {
  if (m < 4 || m % 2 != 0)
    throw AdversaryError(AdversaryErrorKind::bad_params,
                         "m must be even and at least 4");
  std::vector<NodeId> cyc;
  cyc.reserve(2 * m);
  for (std::uint32_t t = 0; t < m / 2; ++t) {
    cyc.push_back(2 * t);
    cyc.push_back(m + 2 * t);
    cyc.push_back(m + 2 * t + 1);
    cyc.push_back(2 * t + 1);
  }
  return cyc;
}

PortGraph build_triangle_expansion(const PortGraph& g) {
  const std::uint32_t n = g.node_count();
  std::vector<EdgeRecord> edges;
  for (NodeId v = 0; v < n; ++v) {
    const Port d = g.degree(v);
    for (std::uint32_t j = 0; j < 3; ++j)
      edges.push_back({3 * v + j, 3 * d, 3 * v + (j + 1) % 3, 3 * d + 1});
  }
  for (const EdgeRecord& e : g.edge_list()) {
    const std::uint32_t du = g.degree(e.u);
    const std::uint32_t dv = g.degree(e.v);
    for (std::uint32_t i = 0; i < 3; ++i)
      for (std::uint32_t j = 0; j < 3; ++j)
        edges.push_back({3 * e.u + i, e.pu + j * du, 3 * e.v + j, e.pv + i * dv});
  }
  return PortGraph::from_edges(3 * n, edges);
}

std::vector<std::pair<NodeId, NodeId>> gadget_ring_spanning_tree(
    const CrossingBase& base, const std::vector<CrossingVector>& xmap) {
  const std::uint32_t m = base.m;
  if (xmap.size() != m)
    throw AdversaryError(AdversaryErrorKind::bad_params,
                         "one crossing vector per ring position");
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (std::uint32_t i = 0; i + 1 < m; ++i) edges.push_back({i, i + 1});
  for (std::uint32_t i = 0; i < m; ++i) {
    const NodeId offset = m + i * 2 * m;
    edges.push_back({i, offset + base.v1()});
    for (auto [a, b] : base.tree_edges) {
      edges.push_back({offset + a, offset + b});
      edges.push_back({offset + m + a, offset + m + b});
    }
    if (!xmap[i].nonzero())
      throw AdversaryError(AdversaryErrorKind::zero_vector,
                           "crossing vector must be nonzero");
    const std::uint32_t k =
        static_cast<std::uint32_t>(std::countr_zero(xmap[i].bits));
    const auto [a, b] = base.nontree_edges[k];
    edges.push_back({offset + a, offset + m + b});
  }
  return edges;
}

std::vector<NodeId> hamiltonian_cycle_from_tree(
    const PortGraph& expanded,
    const std::vector<std::pair<NodeId, NodeId>>& tree_edges) {
  const std::uint32_t n3 = expanded.node_count();
  if (n3 % 3 != 0)
    throw AdversaryError(AdversaryErrorKind::bad_params,
                         "node count is not a multiple of 3");
  const std::uint32_t n = n3 / 3;
  if (tree_edges.size() + 1 != n)
    throw AdversaryError(AdversaryErrorKind::bad_params,
                         "edge count does not match a spanning tree");
  std::vector<std::vector<NodeId>> adj(n);
  for (auto [a, b] : tree_edges) {
    if (a >= n || b >= n || a == b)
      throw AdversaryError(AdversaryErrorKind::bad_params, "bad tree edge");
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (std::uint32_t v = 0; v < n; ++v)
    if (adj[v].size() > 3)
      throw AdversaryError(AdversaryErrorKind::degree_exceeds_three,
                           "tree degree " + std::to_string(adj[v].size()) +
                               " at node " + std::to_string(v));

  // cyclic visit order of an Euler tour: each node appears tree-degree times
  std::vector<NodeId> appearances{0};
  struct Frame {
    NodeId node;
    NodeId parent;
    std::size_t next = 0;
  };
  std::vector<Frame> stack{{0, n, 0}};
  while (!stack.empty()) {
    Frame& f = stack.back();
    bool descended = false;
    while (f.next < adj[f.node].size()) {
      const NodeId child = adj[f.node][f.next++];
      if (child == f.parent) continue;
      appearances.push_back(child);
      stack.push_back({child, f.node, 0});
      descended = true;
      break;
    }
    if (descended) continue;
    stack.pop_back();
    if (!stack.empty()) appearances.push_back(stack.back().node);
  }
  if (appearances.size() > 1) appearances.pop_back();  // final return to the root

  // the first visit sweeps enough triangle copies that later visits take one
  // each; runs continue clockwise, so the three copies come out exactly once
  std::vector<std::uint32_t> next_copy(n, 0);
  std::vector<char> seen(n, 0);
  std::vector<NodeId> cycle;
  cycle.reserve(n3);
  for (NodeId v : appearances) {
    const std::uint32_t deg = static_cast<std::uint32_t>(adj[v].size());
    const std::uint32_t run = seen[v] ? 1 : (deg == 0 ? 3 : 4 - deg);
    seen[v] = 1;
    for (std::uint32_t r = 0; r < run; ++r) {
      cycle.push_back(3 * v + next_copy[v]);
      next_copy[v] = (next_copy[v] + 1) % 3;
    }
  }

  if (cycle.size() != n3)
    throw std::logic_error("triangle cycle has wrong length");
  std::vector<char> used(n3, 0);
  for (NodeId v : cycle) {
    if (used[v]) throw std::logic_error("triangle cycle repeats a node");
    used[v] = 1;
  }
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    const NodeId a = cycle[i];
    const NodeId b = cycle[(i + 1) % cycle.size()];
    bool adjacent = false;
    for (const PortTarget& t : expanded.adjacency()[a]) adjacent |= t.node == b;
    if (!adjacent) throw std::logic_error("triangle cycle uses a missing edge");
  }
  return cycle;
}

PortSequence BlockDecomposition::reconcatenate() const {
  PortSequence out = cycle_blocks.empty() ? PortSequence{} : cycle_blocks.front();
  for (std::size_t j = 0; j < gadget_blocks.size(); ++j) {
    out.push_back(2);
    out.insert(out.end(), gadget_blocks[j].begin(), gadget_blocks[j].end());
    if (j + 1 < cycle_blocks.size()) {
      out.push_back(m / 2);
      out.insert(out.end(), cycle_blocks[j + 1].begin(), cycle_blocks[j + 1].end());
    }
  }
  return out;
}

BlockDecomposition decompose_blocks(const PortSequence& u, std::uint32_t m) {
  if (m < 4 || m % 2 != 0)
    throw AdversaryError(AdversaryErrorKind::bad_params,
                         "m must be even and at least 4");
  const Port half = m / 2;
  BlockDecomposition d;
  d.m = m;
  d.cycle_blocks.emplace_back();
  bool in_gadget = false;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const Port p = u[i];
    if (!in_gadget) {
      if (p < 2) {
        d.cycle_blocks.back().push_back(p);
      } else if (p == 2) {
        d.gadget_blocks.emplace_back();
        in_gadget = true;
      } else {
        throw AdversaryError(AdversaryErrorKind::malformed_sequence,
                             "port " + std::to_string(p) + " at step " +
                                 std::to_string(i) + " is not a ring move");
      }
    } else {
      if (p < half) {
        d.gadget_blocks.back().push_back(p);
      } else if (p == half) {
        d.cycle_blocks.emplace_back();
        in_gadget = false;
      } else {
        throw AdversaryError(AdversaryErrorKind::malformed_sequence,
                             "port " + std::to_string(p) + " at step " +
                                 std::to_string(i) + " is not a gadget move");
      }
    }
  }
  return d;
}

std::vector<std::uint32_t> block_gadgets(const BlockDecomposition& d,
                                         std::uint32_t start) {
  const std::uint32_t m = d.m;
  if (start >= m)
    throw AdversaryError(AdversaryErrorKind::bad_params, "start out of range");
  std::vector<std::uint32_t> out;
  std::uint32_t pos = start;
  for (std::size_t j = 0; j < d.gadget_blocks.size(); ++j) {
    for (Port p : d.cycle_blocks[j]) pos = p == 0 ? (pos + 1) % m : (pos + m - 1) % m;
    out.push_back(pos);
  }
  return out;
}

BlockDecomposition make_non_repetitive(
    const BlockDecomposition& d, const std::vector<std::uint32_t>& gadget_of_block) {
  if (!d.closed())
    throw AdversaryError(AdversaryErrorKind::malformed_sequence,
                         "script ends inside a gadget");
  if (gadget_of_block.size() != d.gadget_blocks.size())
    throw AdversaryError(AdversaryErrorKind::bad_params,
                         "one gadget index per block");
  BlockDecomposition out;
  out.m = d.m;
  out.cycle_blocks.push_back(d.cycle_blocks.front());
  std::vector<std::uint32_t> slot(d.m, kNoGadget);
  for (std::size_t i = 0; i < d.gadget_blocks.size(); ++i) {
    const std::uint32_t g = gadget_of_block[i];
    if (g >= d.m)
      throw AdversaryError(AdversaryErrorKind::bad_params,
                           "gadget index out of range");
    if (slot[g] == kNoGadget) {
      slot[g] = static_cast<std::uint32_t>(out.gadget_blocks.size());
      out.gadget_blocks.push_back(d.gadget_blocks[i]);
      out.cycle_blocks.push_back(d.cycle_blocks[i + 1]);
    } else {
      auto& dst = out.gadget_blocks[slot[g]];
      dst.insert(dst.end(), d.gadget_blocks[i].begin(), d.gadget_blocks[i].end());
      auto& tail = out.cycle_blocks.back();
      tail.insert(tail.end(), d.cycle_blocks[i + 1].begin(),
                  d.cycle_blocks[i + 1].end());
    }
  }
  return out;
}

std::optional<CrossingWitness> solve_crossing_vector(const PortSequence& w,
                                                     NodeId target,
                                                     const CrossingBase& base) {
  const PortGraph& h = base.h.graph;
  const std::uint32_t m = h.node_count();
  if (target >= m)
    throw AdversaryError(AdversaryErrorKind::bad_params, "target out of range");

  std::vector<std::int32_t> nontree_at(m * m, -1);
  for (std::uint32_t k = 0; k < base.s; ++k) {
    const auto [a, b] = base.nontree_edges[k];
    nontree_at[a * m + b] = nontree_at[b * m + a] = static_cast<std::int32_t>(k);
  }

  // one form per visit: parity of candidate-edge traversals up to that visit
  std::vector<std::uint64_t> forms;
  std::uint64_t acc = 0;
  NodeId at = base.v1();
  if (at == target) forms.push_back(acc);
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] >= h.degree(at))
      throw AdversaryError(AdversaryErrorKind::infeasible_sequence,
                           "port " + std::to_string(w[i]) + " infeasible at step " +
                               std::to_string(i));
    const NodeId to = h.adjacency()[at][w[i]].node;
    const std::int32_t k = nontree_at[at * m + to];
    if (k >= 0) acc ^= 1ull << k;
    at = to;
    if (at == target) forms.push_back(acc);
  }

  if (forms.empty()) return CrossingWitness{CrossingVector::unit(base.s), 0};

  auto satisfies = [&](std::uint64_t x, unsigned parity) {
    for (std::uint64_t a : forms)
      if ((static_cast<unsigned>(std::popcount(a & x)) & 1u) != parity)
        return false;
    return true;
  };

  {
    // every visit in copy 1: forms must all evaluate to 1
    Gf2System sys(base.s);
    bool consistent = true;
    for (std::uint64_t a : forms)
      if (!sys.add(a | Gf2System::kRhs)) {
        consistent = false;
        break;
      }
    if (consistent) {
      const std::uint64_t x = sys.solve();
      if (x != 0) {
        if (!satisfies(x, 1)) throw std::logic_error("affine solution check failed");
        return CrossingWitness{CrossingVector{x, base.s}, 0};
      }
    }
  }
  {
    // every visit in copy 0: nonzero kernel vector
    Gf2System sys(base.s);
    for (std::uint64_t a : forms) sys.add(a);
    const std::uint32_t free_col = sys.first_free_column();
    if (free_col == base.s) return std::nullopt;
    const std::uint64_t x = sys.solve(1ull << free_col);
    if (x == 0 || !satisfies(x, 0))
      throw std::logic_error("kernel solution check failed");
    return CrossingWitness{CrossingVector{x, base.s}, 1};
  }
}

std::optional<AdversaryWitness> adversary_witness(const PortSequence& u,
                                                  const CrossingBase& base) {
  const std::uint32_t m = base.m;
  const PortGraph& h = base.h.graph;
  const BlockDecomposition d = decompose_blocks(u, m);
  const std::size_t nblocks = d.gadget_blocks.size();

  std::vector<std::vector<std::uint32_t>> visits(
      nblocks, std::vector<std::uint32_t>(m, 0));
  for (std::size_t i = 0; i < nblocks; ++i) {
    NodeId at = base.v1();
    ++visits[i][at];
    for (Port p : d.gadget_blocks[i]) {
      at = h.adjacency()[at][p].node;
      ++visits[i][at];
    }
  }

  const std::vector<std::uint32_t> rel = block_gadgets(d, 0);
  {
    std::vector<char> hit(m, 0);
    for (std::uint32_t g : rel) {
      if (hit[g])
        throw AdversaryError(AdversaryErrorKind::malformed_sequence,
                             "script enters a gadget twice");
      hit[g] = 1;
    }
  }

  auto try_witness = [&](std::uint32_t start, std::vector<CrossingVector> xmap,
                         NodeId unvisited) -> std::optional<AdversaryWitness> {
    GadgetGraph ring = build_gadget_ring(base, xmap);
    if (visited_nodes(ring.graph, start, u)[unvisited]) return std::nullopt;
    return AdversaryWitness{std::move(xmap), start, unvisited, std::move(ring)};
  };

  const std::vector<CrossingVector> plain(m, CrossingVector::unit(base.s));
  if (nblocks < m) {
    // a gadget the script never enters stays unvisited from any start
    std::vector<char> entered(m, 0);
    for (std::uint32_t g : rel) entered[g] = 1;
    for (std::uint32_t g = 0; g < m; ++g)
      if (!entered[g]) {
        auto w = try_witness(0, plain, m + g * 2 * m + base.v1());
        if (w) return w;
      }
  }

  for (std::uint32_t start = 0; start < m; ++start) {
    for (std::size_t i = 0; i < nblocks; ++i) {
      const std::uint32_t pos = (rel[i] + start) % m;
      const NodeId target = base.h.hamiltonian_order[pos];
      if (visits[i][target] > base.s) continue;
      const auto cw = solve_crossing_vector(d.gadget_blocks[i], target, base);
      if (!cw) continue;
      std::vector<CrossingVector> xmap = plain;
      xmap[pos] = cw->x;
      const NodeId offset = m + pos * 2 * m;
      auto w = try_witness(start, std::move(xmap),
                           offset + (cw->unvisited_copy ? m : 0) + target);
      if (w) return w;
    }
  }

  if (u.size() < (static_cast<std::size_t>(base.s) + 1) * m * m)
    throw std::logic_error("short script with no witness; accounting violated");
  return std::nullopt;
}

PortSequence gen_feasible_sequence(const CrossingBase& base,
                                   std::uint32_t block_count,
                                   std::uint32_t max_walk, std::uint64_t seed,
                                   bool distinct_gadgets) {
  const std::uint32_t m = base.m;
  if (distinct_gadgets && block_count > m)
    throw AdversaryError(AdversaryErrorKind::bad_params,
                         "at most m distinct gadgets");
  if (max_walk == 0)
    throw AdversaryError(AdversaryErrorKind::bad_params,
                         "max_walk must be positive");
  std::mt19937_64 rng(seed);
  const PortGraph& h = base.h.graph;
  PortSequence u;
  std::uint32_t pos = 0;  // ring position relative to the start
  std::vector<std::uint32_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  for (std::uint32_t b = 0; b < block_count; ++b) {
    const std::uint32_t target =
        distinct_gadgets
            ? order[b]
            : std::uniform_int_distribution<std::uint32_t>(0, m - 1)(rng);
    for (; pos != target; pos = (pos + 1) % m) u.push_back(0);
    u.push_back(2);
    // walk then retrace: the block returns to the gateway with every
    // candidate edge crossed an even number of times
    const std::uint32_t len =
        std::uniform_int_distribution<std::uint32_t>(1, max_walk)(rng);
    PortSequence entries;
    NodeId at = base.v1();
    for (std::uint32_t t = 0; t < len; ++t) {
      const Port p = std::uniform_int_distribution<Port>(0, m / 2 - 1)(rng);
      const PortTarget to = h.adjacency()[at][p];
      u.push_back(p);
      entries.push_back(to.port);
      at = to.node;
    }
    for (std::size_t t = entries.size(); t-- > 0;) u.push_back(entries[t]);
    u.push_back(m / 2);
  }
  const std::uint32_t tail =
      std::uniform_int_distribution<std::uint32_t>(0, 2)(rng);
  for (std::uint32_t t = 0; t < tail; ++t) u.push_back(rng() & 1);
  return u;
}

std::string serialize_roles(const GadgetGraph& g) {
  std::ostringstream out;
  for (NodeId v : g.cycle_nodes) out << "y " << v << "\n";
  for (std::size_t i = 0; i < g.gateways.size(); ++i)
    out << "gw " << g.gateways[i] << " " << i << "\n";
  for (NodeId v = 0; v < g.graph.node_count(); ++v)
    if (g.gadget_of[v] != kNoGadget)
      out << "copy " << v << " " << static_cast<unsigned>(g.copy_of[v]) << "\n";
  return out.str();
}

}  // namespace pgx
