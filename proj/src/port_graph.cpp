#include "pgx/port_graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

namespace pgx {

namespace {

std::string edge_str(const EdgeRecord& e) {
  std::ostringstream os;
  os << "(" << e.u << "," << e.pu << ")-(" << e.v << "," << e.pv << ")";
  return os.str();
}

// Shared invariant check for an already-assembled adjacency structure.
void check_structure(const std::vector<std::vector<PortTarget>>& adj) {
  const auto n = static_cast<std::uint32_t>(adj.size());
  for (NodeId u = 0; u < n; ++u) {
    for (Port p = 0; p < adj[u].size(); ++p) {
      const PortTarget t = adj[u][p];
      if (t.node >= n)
        throw GraphError(GraphErrorKind::bad_node,
                         "edge at node " + std::to_string(u) + " port " +
                             std::to_string(p) + " targets missing node " +
                             std::to_string(t.node));
      if (t.node == u)
        throw GraphError(GraphErrorKind::self_loop,
                         "self loop at node " + std::to_string(u));
      if (t.port >= adj[t.node].size() || adj[t.node][t.port].node != u ||
          adj[t.node][t.port].port != p)
        throw GraphError(GraphErrorKind::asymmetric_edge,
                         "edge (" + std::to_string(u) + "," + std::to_string(p) +
                             ") has no symmetric record at node " +
                             std::to_string(t.node));
    }
    // port range is implied by the vector index; parallel edges show up as two
    // ports at u leading to the same neighbor
    std::vector<NodeId> seen;
    for (const PortTarget& t : adj[u]) seen.push_back(t.node);
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
      throw GraphError(GraphErrorKind::parallel_edge,
                       "parallel edge at node " + std::to_string(u));
  }
  if (n == 0) return;
  // connectivity by BFS from node 0
  std::vector<char> vis(n, 0);
  std::vector<NodeId> queue{0};
  vis[0] = 1;
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (const PortTarget& t : adj[queue[i]])
      if (!vis[t.node]) {
        vis[t.node] = 1;
        queue.push_back(t.node);
      }
  for (NodeId u = 0; u < n; ++u)
    if (!vis[u])
      throw GraphError(GraphErrorKind::disconnected,
                       "node " + std::to_string(u) + " unreachable from node 0");
}

}  // namespace

PortGraph PortGraph::from_edges(std::uint32_t node_count,
                                const std::vector<EdgeRecord>& edges) {
  // assemble slots first so gaps and duplicates are reported against the
  // offending record, then run the structural check
  struct Slot {
    bool used = false;
    PortTarget target;
  };
  std::vector<std::vector<Slot>> slots(node_count);
  auto place = [&](NodeId at, Port p, NodeId to, Port back, const EdgeRecord& e) {
    if (at >= node_count)
      throw GraphError(GraphErrorKind::bad_node,
                       "edge " + edge_str(e) + " references missing node " +
                           std::to_string(at));
    if (p >= slots[at].size()) slots[at].resize(p + 1);
    if (slots[at][p].used)
      throw GraphError(GraphErrorKind::port_duplicate,
                       "port " + std::to_string(p) + " at node " +
                           std::to_string(at) + " assigned twice (edge " +
                           edge_str(e) + ")");
    slots[at][p] = {true, {to, back}};
  };
  for (const EdgeRecord& e : edges) {
    if (e.u == e.v)
      throw GraphError(GraphErrorKind::self_loop, "self loop " + edge_str(e));
    place(e.u, e.pu, e.v, e.pv, e);
    place(e.v, e.pv, e.u, e.pu, e);
  }
  std::vector<std::vector<PortTarget>> adj(node_count);
  for (NodeId u = 0; u < node_count; ++u) {
    adj[u].reserve(slots[u].size());
    for (Port p = 0; p < slots[u].size(); ++p) {
      if (!slots[u][p].used)
        throw GraphError(GraphErrorKind::port_gap,
                         "node " + std::to_string(u) + " has no port " +
                             std::to_string(p) + " but uses a higher one");
      adj[u].push_back(slots[u][p].target);
    }
  }
  return from_adjacency(std::move(adj));
}

PortGraph PortGraph::from_adjacency(std::vector<std::vector<PortTarget>> adj) {
  check_structure(adj);
  PortGraph g;
  g.adj_ = std::move(adj);
  return g;
}

PortTarget PortGraph::neighbor(NodeId u, Port p) const {
  check_node(u);
  if (p >= adj_[u].size())
    throw GraphError(GraphErrorKind::port_out_of_range,
                     "port " + std::to_string(p) + " at node " +
                         std::to_string(u) + " of degree " +
                         std::to_string(adj_[u].size()));
  return adj_[u][p];
}

std::vector<EdgeRecord> PortGraph::edge_list() const {
  std::vector<EdgeRecord> out;
  for (NodeId u = 0; u < adj_.size(); ++u)
    for (Port p = 0; p < adj_[u].size(); ++p) {
      const PortTarget t = adj_[u][p];
      if (u < t.node) out.push_back({u, p, t.node, t.port});
    }
  std::sort(out.begin(), out.end(), [](const EdgeRecord& a, const EdgeRecord& b) {
    return std::tie(a.u, a.pu, a.v, a.pv) < std::tie(b.u, b.pu, b.v, b.pv);
  });
  return out;
}

PortGraph PortGraph::relabeled(const std::vector<NodeId>& perm) const {
  if (perm.size() != adj_.size())
    throw GraphError(GraphErrorKind::bad_node, "permutation size mismatch");
  std::vector<std::vector<PortTarget>> out(adj_.size());
  for (NodeId u = 0; u < adj_.size(); ++u) {
    out[perm[u]].resize(adj_[u].size());
    for (Port p = 0; p < adj_[u].size(); ++p)
      out[perm[u]][p] = {perm[adj_[u][p].node], adj_[u][p].port};
  }
  return from_adjacency(std::move(out));
}

PortGraph validate_graph(std::uint32_t node_count,
                         const std::vector<EdgeRecord>& edges) {
  return PortGraph::from_edges(node_count, edges);
}

BipartiteGraph gen_complete_bipartite(std::uint32_t half) {
  if (half == 0)
    throw GraphError(GraphErrorKind::bad_node, "empty bipartite side");
  const std::uint32_t k = half;
  std::vector<std::vector<PortTarget>> adj(2 * k);
  // a_i = i, b_j = k + j; edge (a_i, b_j) has port (j - i) mod k at both ends
  for (NodeId i = 0; i < k; ++i) {
    adj[i].resize(k);
    adj[k + i].resize(k);
  }
  for (NodeId i = 0; i < k; ++i)
    for (Port p = 0; p < k; ++p) {
      const NodeId j = (i + p) % k;
      adj[i][p] = {k + j, p};
      adj[k + j][p] = {i, p};
    }
  BipartiteGraph out;
  out.graph = PortGraph::from_adjacency(std::move(adj));
  for (NodeId i = 0; i < k; ++i) {
    out.hamiltonian_order.push_back(i);
    out.hamiltonian_order.push_back(k + i);
  }
  return out;
}

PortGraph gen_oriented_ring(std::uint32_t n) {
  if (n < 3)
    throw GraphError(GraphErrorKind::bad_node,
                     "oriented ring needs at least 3 nodes");
  std::vector<std::vector<PortTarget>> adj(n);
  for (NodeId i = 0; i < n; ++i)
    adj[i] = {{(i + 1) % n, 1}, {(i + n - 1) % n, 0}};
  return PortGraph::from_adjacency(std::move(adj));
}

PortGraph gen_random_connected(std::uint32_t n, double density, std::uint64_t seed) {
  if (n == 0) throw GraphError(GraphErrorKind::bad_node, "empty graph");
  if (!(density >= 0.0 && density <= 1.0))
    throw GraphError(GraphErrorKind::infeasible_density,
                     "density must be within [0,1]");
  std::mt19937_64 rng(seed);
  const std::uint64_t max_edges = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  std::uint64_t target = static_cast<std::uint64_t>(std::llround(density * static_cast<double>(max_edges)));
  target = std::clamp<std::uint64_t>(target, n == 1 ? 0 : n - 1, max_edges);

  std::vector<std::pair<NodeId, NodeId>> picked;
  std::vector<char> used(n, 0);
  // random attachment spanning tree over a shuffled node order
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<std::vector<char>> has(n, std::vector<char>(n, 0));
  for (std::uint32_t i = 1; i < n; ++i) {
    const NodeId u = order[i];
    const NodeId v = order[std::uniform_int_distribution<std::uint32_t>(0, i - 1)(rng)];
    picked.push_back({std::min(u, v), std::max(u, v)});
    has[u][v] = has[v][u] = 1;
  }
  while (picked.size() < target) {
    const NodeId u = std::uniform_int_distribution<NodeId>(0, n - 1)(rng);
    const NodeId v = std::uniform_int_distribution<NodeId>(0, n - 1)(rng);
    if (u == v || has[u][v]) continue;
    picked.push_back({std::min(u, v), std::max(u, v)});
    has[u][v] = has[v][u] = 1;
  }
  // per-node port order is a seeded shuffle of the incident edges
  std::vector<std::vector<NodeId>> inc(n);
  for (auto [u, v] : picked) {
    inc[u].push_back(v);
    inc[v].push_back(u);
  }
  for (NodeId u = 0; u < n; ++u) {
    std::sort(inc[u].begin(), inc[u].end());
    std::shuffle(inc[u].begin(), inc[u].end(), rng);
  }
  std::vector<std::vector<PortTarget>> adj(n);
  std::vector<std::vector<Port>> port_of(n, std::vector<Port>(n, 0));
  for (NodeId u = 0; u < n; ++u) {
    adj[u].resize(inc[u].size());
    for (Port p = 0; p < inc[u].size(); ++p) port_of[u][inc[u][p]] = p;
  }
  for (NodeId u = 0; u < n; ++u)
    for (Port p = 0; p < inc[u].size(); ++p) {
      const NodeId v = inc[u][p];
      adj[u][p] = {v, port_of[v][u]};
    }
  return PortGraph::from_adjacency(std::move(adj));
}

namespace {

void port_assignments(const std::vector<std::vector<NodeId>>& inc, NodeId u,
                      std::vector<std::vector<std::vector<NodeId>>>& out_orders,
                      std::vector<std::vector<NodeId>>& current) {
  if (u == inc.size()) {
    out_orders.push_back(current);
    return;
  }
  std::vector<NodeId> perm = inc[u];
  std::sort(perm.begin(), perm.end());
  do {
    current[u] = perm;
    port_assignments(inc, u + 1, out_orders, current);
  } while (std::next_permutation(perm.begin(), perm.end()));
}

}  // namespace

std::vector<PortGraph> enumerate_connected_port_graphs(std::uint32_t max_nodes) {
  std::vector<PortGraph> out;
  for (std::uint32_t k = 1; k <= max_nodes; ++k) {
    std::vector<std::pair<NodeId, NodeId>> all_pairs;
    for (NodeId u = 0; u < k; ++u)
      for (NodeId v = u + 1; v < k; ++v) all_pairs.push_back({u, v});
    const std::uint32_t pair_count = static_cast<std::uint32_t>(all_pairs.size());
    for (std::uint64_t mask = 0; mask < (1ull << pair_count); ++mask) {
      if (k > 1 && mask == 0) continue;
      std::vector<std::vector<NodeId>> inc(k);
      for (std::uint32_t b = 0; b < pair_count; ++b)
        if (mask >> b & 1) {
          inc[all_pairs[b].first].push_back(all_pairs[b].second);
          inc[all_pairs[b].second].push_back(all_pairs[b].first);
        }
      // connectivity before enumerating port orders
      std::vector<char> vis(k, 0);
      std::vector<NodeId> queue{0};
      vis[0] = 1;
      for (std::size_t i = 0; i < queue.size(); ++i)
        for (NodeId v : inc[queue[i]])
          if (!vis[v]) {
            vis[v] = 1;
            queue.push_back(v);
          }
      if (std::count(vis.begin(), vis.end(), 1) != static_cast<long>(k)) continue;
      std::vector<std::vector<std::vector<NodeId>>> orders;
      std::vector<std::vector<NodeId>> current(k);
      port_assignments(inc, 0, orders, current);
      for (const auto& ord : orders) {
        std::vector<std::vector<Port>> port_of(k, std::vector<Port>(k, 0));
        for (NodeId u = 0; u < k; ++u)
          for (Port p = 0; p < ord[u].size(); ++p) port_of[u][ord[u][p]] = p;
        std::vector<std::vector<PortTarget>> adj(k);
        for (NodeId u = 0; u < k; ++u) {
          adj[u].resize(ord[u].size());
          for (Port p = 0; p < ord[u].size(); ++p)
            adj[u][p] = {ord[u][p], port_of[ord[u][p]][u]};
        }
        out.push_back(PortGraph::from_adjacency(std::move(adj)));
      }
    }
  }
  return out;
}

std::string serialize_graph(const PortGraph& g) {
  std::ostringstream os;
  os << "pg 1\n";
  os << "n " << g.node_count() << "\n";
  for (const EdgeRecord& e : g.edge_list())
    os << "e " << e.u << " " << e.pu << " " << e.v << " " << e.pv << "\n";
  return os.str();
}

PortGraph parse_graph(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::uint64_t line_no = 0;
  bool saw_version = false;
  bool saw_count = false;
  std::uint32_t node_count = 0;
  std::vector<EdgeRecord> edges;
  auto fail = [&](const std::string& msg) -> void {
    throw GraphError(GraphErrorKind::parse_error,
                     "line " + std::to_string(line_no) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (!saw_version) {
      std::string ver;
      if (tag != "pg" || !(ls >> ver) || ver != "1")
        fail("expected version line 'pg 1'");
      saw_version = true;
    } else if (tag == "n") {
      if (saw_count) fail("duplicate node count");
      if (!(ls >> node_count)) fail("bad node count");
      saw_count = true;
    } else if (tag == "e") {
      if (!saw_count) fail("edge before node count");
      EdgeRecord e;
      if (!(ls >> e.u >> e.pu >> e.v >> e.pv)) fail("bad edge line");
      edges.push_back(e);
    } else {
      fail("unknown directive '" + tag + "'");
    }
    std::string extra;
    if (ls >> extra) fail("trailing tokens");
  }
  if (!saw_version) {
    line_no = 1;
    fail("empty input");
  }
  if (!saw_count) {
    fail("missing node count");
  }
  return PortGraph::from_edges(node_count, edges);
}

}  // namespace pgx
