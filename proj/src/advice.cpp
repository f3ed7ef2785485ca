#include "pgx/advice.hpp"

#include <algorithm>
#include <bit>

namespace pgx {

namespace {

// floor(log2 x) for x >= 1
inline std::uint32_t log2_floor(std::uint64_t x) {
  return static_cast<std::uint32_t>(std::bit_width(x)) - 1;
}

Port port_between(const PortGraph& g, NodeId u, NodeId v,
                  AdviceErrorKind kind = AdviceErrorKind::not_hamiltonian_cycle) {
  const auto& links = g.adjacency()[u];
  for (Port p = 0; p < links.size(); ++p)
    if (links[p].node == v) return p;
  throw AdviceError(kind, "nodes " + std::to_string(u) + " and " +
                              std::to_string(v) + " are not adjacent");
}

}  // namespace

BitString encode_size_advice(std::uint64_t n, SizeAdviceParams params) {
  if (params.c < -1)
    throw AdviceError(AdviceErrorKind::bad_params, "c must be >= -1");
  if (n < 2)
    throw AdviceError(AdviceErrorKind::size_too_small, "size advice needs n >= 2");
  const std::uint32_t loglog = log2_floor(log2_floor(n));
  std::vector<bool> x;
  if (loglog == 0) {
    x.push_back(false);
  } else {
    for (std::uint32_t i = log2_floor(loglog) + 1; i-- > 0;)
      x.push_back(loglog >> i & 1);
  }
  const std::size_t drop = static_cast<std::size_t>(params.c + 1);
  const std::size_t keep = x.size() > drop ? x.size() - drop : 0;
  x.resize(keep);
  return BitString(std::move(x));
}

bool SizeBound::at_least(std::uint64_t n) const {
  const std::uint64_t e = log2_log2();
  if (e >= 64) return true;
  return n <= (1ull << e);
}

SizeBound decode_size_bound(const BitString& s, SizeAdviceParams params) {
  if (params.c < -1)
    throw AdviceError(AdviceErrorKind::bad_params, "c must be >= -1");
  // n1 is the integer spelled by s followed by c+1 one bits; saturate far
  // beyond any representable graph size rather than overflow
  constexpr std::uint64_t kSat = 1ull << 32;
  std::uint64_t n1 = 0;
  auto push = [&](bool b) {
    if (n1 >= kSat)
      n1 = kSat;
    else
      n1 = n1 * 2 + (b ? 1 : 0);
  };
  for (std::size_t i = 0; i < s.size(); ++i) push(s[i]);
  for (int i = 0; i < params.c + 1; ++i) push(true);
  return {std::min(n1, kSat)};
}

unsigned tree_port_width(std::uint32_t node_count) {
  if (node_count < 2) return 1;
  return std::max(1u, static_cast<unsigned>(std::bit_width(node_count - 1)));
}

BitString SpanningTreeAdvice::wire() const {
  BitString out;
  out.append_uint(node_count, 32);
  out.append(shape);
  const unsigned w = tree_port_width(node_count);
  for (Port p : tour_ports) out.append_uint(p, w);
  return out;
}

SpanningTreeAdvice encode_spanning_tree(
    const PortGraph& g, const std::vector<std::pair<NodeId, NodeId>>& tree_edges,
    NodeId root, bool root_is_start) {
  const std::uint32_t n = g.node_count();
  if (root >= n)
    throw AdviceError(AdviceErrorKind::not_spanning_tree, "root out of range");
  if (tree_edges.size() + 1 != n)
    throw AdviceError(AdviceErrorKind::not_spanning_tree,
                      "tree must have exactly n-1 edges");
  std::vector<std::vector<char>> in_tree(n);
  for (NodeId u = 0; u < n; ++u) in_tree[u].assign(g.degree(u), 0);
  for (auto [u, v] : tree_edges) {
    if (u >= n || v >= n)
      throw AdviceError(AdviceErrorKind::not_spanning_tree, "tree edge out of range");
    const Port pu = port_between(g, u, v, AdviceErrorKind::not_spanning_tree);
    in_tree[u][pu] = 1;
    in_tree[v][g.adjacency()[u][pu].port] = 1;
  }

  SpanningTreeAdvice adv;
  adv.node_count = n;
  adv.root_is_start = root_is_start;
  adv.tree.nodes.resize(n);

  // DFS with children in increasing-port order; preorder ids index the tree
  std::vector<std::uint32_t> pre_id(n, ~0u);
  pre_id[root] = 0;
  std::uint32_t next_id = 1;
  struct Frame {
    NodeId node;
    Port next_port = 0;
    Port up_out = 0;  // ports of the edge back to the parent
    Port up_in = 0;
  };
  std::vector<Frame> stack{{root}};
  while (!stack.empty()) {
    Frame& f = stack.back();
    bool descended = false;
    for (Port p = f.next_port; p < g.degree(f.node); ++p) {
      if (!in_tree[f.node][p]) continue;
      const PortTarget t = g.adjacency()[f.node][p];
      if (pre_id[t.node] != ~0u) continue;
      pre_id[t.node] = next_id++;
      adv.shape.push_back(false);
      adv.tour_ports.push_back(p);
      adv.tour_ports.push_back(t.port);
      adv.tree.nodes[pre_id[f.node]].push_back({p, pre_id[t.node], t.port});
      adv.tree.nodes[pre_id[t.node]].push_back({t.port, pre_id[f.node], p});
      f.next_port = p + 1;
      stack.push_back({t.node, 0, t.port, p});
      descended = true;
      break;
    }
    if (descended) continue;
    if (stack.size() > 1) {
      adv.shape.push_back(true);
      adv.tour_ports.push_back(f.up_out);
      adv.tour_ports.push_back(f.up_in);
    }
    stack.pop_back();
  }
  if (next_id != n)
    throw AdviceError(AdviceErrorKind::not_spanning_tree,
                      "edge subset does not span the graph");
  for (auto& links : adv.tree.nodes)
    std::sort(links.begin(), links.end(),
              [](const PortTree::Link& a, const PortTree::Link& b) {
                return a.port_here < b.port_here;
              });
  return adv;
}

SpanningTreeAdvice decode_spanning_tree(const BitString& wire) {
  BitReader in(wire);
  if (in.remaining() < 32)
    throw AdviceError(AdviceErrorKind::malformed_header, "missing node count");
  const std::uint32_t n = static_cast<std::uint32_t>(in.read_uint(32));
  if (n == 0)
    throw AdviceError(AdviceErrorKind::malformed_header, "zero node count");
  const std::size_t shape_len = 2 * (static_cast<std::size_t>(n) - 1);
  if (in.remaining() < shape_len)
    throw AdviceError(AdviceErrorKind::malformed_shape, "shape bits missing");

  SpanningTreeAdvice adv;
  adv.node_count = n;
  adv.tree.nodes.resize(n);
  std::vector<bool> shape_bits;
  std::size_t depth = 0, downs = 0;
  for (std::size_t i = 0; i < shape_len; ++i) {
    const bool up = in.read_bit();
    shape_bits.push_back(up);
    if (!up) {
      ++depth;
      ++downs;
    } else {
      if (depth == 0)
        throw AdviceError(AdviceErrorKind::malformed_shape,
                          "tour ascends above the root at bit " + std::to_string(i));
      --depth;
    }
  }
  if (depth != 0 || downs != n - 1)
    throw AdviceError(AdviceErrorKind::malformed_shape,
                      "tour does not return to the root exactly once per node");
  adv.shape = BitString(std::move(shape_bits));

  const unsigned w = tree_port_width(n);
  if (in.remaining() < 4 * (static_cast<std::size_t>(n) - 1) * w)
    throw AdviceError(AdviceErrorKind::truncated_ports, "port list truncated");
  for (std::size_t i = 0; i < 2 * (static_cast<std::size_t>(n) - 1); ++i) {
    adv.tour_ports.push_back(static_cast<Port>(in.read_uint(w)));
    adv.tour_ports.push_back(static_cast<Port>(in.read_uint(w)));
  }
  if (in.remaining() != 0)
    throw AdviceError(AdviceErrorKind::malformed_header, "trailing bits");

  // replay the tour to rebuild the tree
  struct Above {
    std::uint32_t node;
    Port down_out, down_in;
  };
  std::vector<Above> stack{{0, 0, 0}};
  std::uint32_t next_id = 1;
  for (std::size_t i = 0; i < shape_len; ++i) {
    const Port out = adv.tour_ports[2 * i];
    const Port entry = adv.tour_ports[2 * i + 1];
    if (!adv.shape[i]) {
      const std::uint32_t parent = stack.back().node;
      const std::uint32_t child = next_id++;
      adv.tree.nodes[parent].push_back({out, child, entry});
      adv.tree.nodes[child].push_back({entry, parent, out});
      stack.push_back({child, out, entry});
    } else {
      const Above a = stack.back();
      if (out != a.down_in || entry != a.down_out)
        throw AdviceError(AdviceErrorKind::malformed_shape,
                          "up step " + std::to_string(i) +
                              " does not retrace the matching down step");
      stack.pop_back();
    }
  }
  for (auto& links : adv.tree.nodes)
    std::sort(links.begin(), links.end(),
              [](const PortTree::Link& a, const PortTree::Link& b) {
                return a.port_here < b.port_here;
              });
  return adv;
}

BitString HamiltonianAdvice::wire() const {
  BitString out;
  out.append_uint(node_count, 32);
  const unsigned w = tree_port_width(node_count);
  for (Port p : ports) out.append_uint(p, w);
  return out;
}

HamiltonianAdvice encode_hamiltonian_advice(const PortGraph& g,
                                            const std::vector<NodeId>& cycle,
                                            NodeId start) {
  const std::uint32_t n = g.node_count();
  if (cycle.size() != n)
    throw AdviceError(AdviceErrorKind::not_hamiltonian_cycle,
                      "cycle must list every node exactly once");
  std::vector<char> seen(n, 0);
  for (NodeId u : cycle) {
    if (u >= n || seen[u])
      throw AdviceError(AdviceErrorKind::not_hamiltonian_cycle,
                        "cycle must list every node exactly once");
    seen[u] = 1;
  }
  const auto it = std::find(cycle.begin(), cycle.end(), start);
  if (it == cycle.end())
    throw AdviceError(AdviceErrorKind::not_hamiltonian_cycle,
                      "start node missing from cycle");
  const std::size_t off = static_cast<std::size_t>(it - cycle.begin());

  HamiltonianAdvice adv;
  adv.node_count = n;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const NodeId u = cycle[(off + i) % n];
    const NodeId v = cycle[(off + i + 1) % n];
    adv.ports.push_back(port_between(g, u, v));
  }
  port_between(g, cycle[(off + n - 1) % n], cycle[off]);  // closing edge must exist
  return adv;
}

HamiltonianAdvice decode_hamiltonian_advice(const BitString& wire) {
  BitReader in(wire);
  if (in.remaining() < 32)
    throw AdviceError(AdviceErrorKind::malformed_header, "missing node count");
  const std::uint32_t n = static_cast<std::uint32_t>(in.read_uint(32));
  if (n == 0)
    throw AdviceError(AdviceErrorKind::malformed_header, "zero node count");
  const unsigned w = tree_port_width(n);
  if (in.remaining() < static_cast<std::size_t>(n - 1) * w)
    throw AdviceError(AdviceErrorKind::truncated_ports, "port list truncated");
  HamiltonianAdvice adv;
  adv.node_count = n;
  for (std::uint32_t i = 0; i + 1 < n; ++i)
    adv.ports.push_back(static_cast<Port>(in.read_uint(w)));
  if (in.remaining() != 0)
    throw AdviceError(AdviceErrorKind::malformed_header, "trailing bits");
  return adv;
}

}  // namespace pgx
