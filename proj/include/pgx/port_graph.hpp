#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pgx {

using NodeId = std::uint32_t;
using Port = std::uint32_t;

// Other endpoint of an edge as seen from one side: the node reached and the
// port by which the walker enters it.
struct PortTarget {
  NodeId node = 0;
  Port port = 0;
  friend bool operator==(const PortTarget&, const PortTarget&) = default;
};

// One undirected edge with its two local port numbers.
struct EdgeRecord {
  NodeId u = 0;
  Port pu = 0;
  NodeId v = 0;
  Port pv = 0;
  friend bool operator==(const EdgeRecord&, const EdgeRecord&) = default;
};

enum class GraphErrorKind {
  port_gap,
  port_duplicate,
  asymmetric_edge,
  self_loop,
  parallel_edge,
  disconnected,
  port_out_of_range,
  bad_node,
  infeasible_density,
  parse_error,
};

class GraphError : public std::runtime_error {
public:
  GraphError(GraphErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind(kind) {}
  GraphErrorKind kind;
};

// Connected simple graph whose edge ends carry local port numbers: a node of
// degree d has ports exactly 0..d-1. Instances are immutable once built and
// always satisfy the full invariant set (symmetry, simplicity, connectivity).
class PortGraph {
public:
  PortGraph() = default;

  // Builds from an undirected edge list; every invariant is checked and the
  // first violation is reported with the offending node or edge.
  static PortGraph from_edges(std::uint32_t node_count,
                              const std::vector<EdgeRecord>& edges);

  // Builds from per-node port-indexed adjacency (adj[u][p] = target); used by
  // generators that produce the structure directly.
  static PortGraph from_adjacency(std::vector<std::vector<PortTarget>> adj);

  std::uint32_t node_count() const { return static_cast<std::uint32_t>(adj_.size()); }

  std::uint32_t degree(NodeId u) const {
    check_node(u);
    return static_cast<std::uint32_t>(adj_[u].size());
  }

  // (neighbor node, entry port) for port p at u.
  PortTarget neighbor(NodeId u, Port p) const;

  const std::vector<std::vector<PortTarget>>& adjacency() const { return adj_; }

  // Canonical edge list: each edge once with u < v, sorted lexicographically.
  std::vector<EdgeRecord> edge_list() const;

  // Same graph with node ids renamed by perm (perm[old] = new); port numbers
  // are untouched, so walks by port sequence are isomorphic.
  PortGraph relabeled(const std::vector<NodeId>& perm) const;

  friend bool operator==(const PortGraph&, const PortGraph&) = default;

private:
  void check_node(NodeId u) const {
    if (u >= adj_.size())
      throw GraphError(GraphErrorKind::bad_node,
                       "node " + std::to_string(u) + " out of range");
  }

  std::vector<std::vector<PortTarget>> adj_;
};

// Standalone validation entry point: checks an edge list and returns the graph.
PortGraph validate_graph(std::uint32_t node_count,
                         const std::vector<EdgeRecord>& edges);

// K_{k,k} with the canonical port labeling: the edge (a_i, b_j) carries port
// (j - i) mod k at both ends. hamiltonian_order alternates sides:
// a_0, b_0, a_1, b_1, ... (consecutive nodes are adjacent, as are last/first).
struct BipartiteGraph {
  PortGraph graph;
  std::vector<NodeId> hamiltonian_order;
};
BipartiteGraph gen_complete_bipartite(std::uint32_t half);

// Cycle on n >= 3 nodes with a consistent orientation: port 0 leads clockwise
// (id ascending), port 1 counterclockwise; a port-0 walk enters every node by
// port 1.
PortGraph gen_oriented_ring(std::uint32_t n);

// Seeded random connected graph: a random spanning tree plus extra edges up to
// round(density * C(n,2)) total (clamped to [n-1, C(n,2)]), ports shuffled per
// node. Deterministic in (n, density, seed).
PortGraph gen_random_connected(std::uint32_t n, double density, std::uint64_t seed);

// Every connected port-labeled simple graph with 1..max_nodes nodes, all port
// assignments, on labeled nodes 0..k-1. Exhaustive; intended for small bounds.
std::vector<PortGraph> enumerate_connected_port_graphs(std::uint32_t max_nodes);

// Text format: "pg 1" version line, "n <count>", one "e <u> <pu> <v> <pv>"
// per edge, '#' starts a comment. serialize_graph emits the canonical form
// (sorted edge list); parse errors carry 1-based line numbers.
std::string serialize_graph(const PortGraph& g);
PortGraph parse_graph(std::string_view text);

}  // namespace pgx
