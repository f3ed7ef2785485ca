#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pgx/agent.hpp"
#include "pgx/port_graph.hpp"

namespace pgx {

enum class AdversaryErrorKind {
  bad_params,
  zero_vector,
  infeasible_sequence,
  malformed_sequence,
  degree_exceeds_three,
};

class AdversaryError : public std::runtime_error {
public:
  AdversaryError(AdversaryErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind(kind) {}
  AdversaryErrorKind kind;
};

// Subset of the non-tree edges of the crossing base, as a bit vector over the
// canonical non-tree edge order. Bit k set means edge k is crossed between
// the two copies when a gadget is built.
struct CrossingVector {
  std::uint64_t bits = 0;
  std::uint32_t size = 0;

  static CrossingVector zeros(std::uint32_t s) { return {0, s}; }
  static CrossingVector unit(std::uint32_t s, std::uint32_t k = 0) {
    return {1ull << k, s};
  }
  bool test(std::uint32_t k) const { return bits >> k & 1; }
  void set(std::uint32_t k) { bits |= 1ull << k; }
  bool nonzero() const { return bits != 0; }
  friend bool operator==(const CrossingVector&, const CrossingVector&) = default;
};

// The regular base graph all crossing gadgets are cut from: K_{m/2,m/2} with
// its alternating hamiltonian order, the hamiltonian path as spanning tree,
// and the remaining s = m^2/4 - m + 1 edges in canonical order.
struct CrossingBase {
  BipartiteGraph h;
  std::vector<std::pair<NodeId, NodeId>> tree_edges;     // u < v
  std::vector<std::pair<NodeId, NodeId>> nontree_edges;  // u < v, sorted
  std::uint32_t m = 0;
  std::uint32_t s = 0;

  NodeId v1() const { return h.hamiltonian_order.front(); }
};

CrossingBase make_crossing_base(std::uint32_t m);

// Edges of h outside the tree, each as (min id, max id), sorted
// lexicographically. Fixes what bit k of a CrossingVector refers to.
std::vector<std::pair<NodeId, NodeId>> canonical_nontree_edges(
    const PortGraph& h, const std::vector<std::pair<NodeId, NodeId>>& tree);

inline constexpr std::uint32_t kNoGadget = 0xffffffffu;

// A built adversary graph with its role annotations. For pure gadgets the
// ring fields are empty; for ring graphs, node ids 0..ring-1 are the ring in
// clockwise order and each gadget occupies a contiguous 2m-node range: first
// the copy-0 nodes by base node id, then the copy-1 nodes.
struct GadgetGraph {
  PortGraph graph;
  std::vector<NodeId> cycle_nodes;
  std::vector<NodeId> gateways;           // copy-0 image of v1, per gadget
  std::vector<std::uint32_t> gadget_of;   // kNoGadget on the ring
  std::vector<std::uint8_t> copy_of;      // 0 or 1; meaningless on the ring
  std::vector<NodeId> base_node_of;       // base graph id; meaningless on the ring
  std::uint32_t m = 0;
};

// Two copies of the base with the selected non-tree edges crossed between
// them; every node keeps the port numbering of its original, so the gadget is
// indistinguishable from the base along any walk.
GadgetGraph build_crossing_gadget(const CrossingBase& base, const CrossingVector& x);

// m crossing gadgets hung off an oriented m-ring: ring node i reaches gadget
// i's gateway by port 2, the gateway returns by its extra port m/2.
// 2m^2 + m nodes.
GadgetGraph build_gadget_ring(const CrossingBase& base,
                              const std::vector<CrossingVector>& xmap);

// Same shape over p = |positions| gadgets (xmap entries picked by position)
// on a p-ring; 2mp + p nodes. p < 3 degrades the ring to an edge or a single
// node, shifting the gateway port at the ring down accordingly.
GadgetGraph build_gadget_ring_subset(const CrossingBase& base,
                                     const std::vector<std::uint32_t>& positions,
                                     const std::vector<CrossingVector>& xmap);

// Each node v_i of the m/2-regular graph g gains a degree-1 pendant: the
// former port x_i at v_i moves to m/2 and x_i now leads to the pendant.
// Pendant of node i is node m + i with port 0 back.
PortGraph build_pendant_graph(const PortGraph& g, const std::vector<Port>& x);

// build_pendant_graph plus pendant pair edges (m+2t, m+2t+1) with port 1 at
// both ends. Requires ids 0..m-1 to follow a hamiltonian cycle of g; the
// result is then hamiltonian.
PortGraph build_paired_pendant_graph(const PortGraph& g, const std::vector<Port>& x);

// The hamiltonian cycle of build_paired_pendant_graph: main node, its
// pendant, the partner pendant, the partner, next pair, ...
std::vector<NodeId> paired_pendant_cycle(std::uint32_t m);

// Each node v of degree d becomes an oriented 3-cycle with ports 3d, 3d+1;
// each edge (u,v) with ports p,q becomes all nine copy pairs with ports
// p + (j-1)d(u) at u(i) and q + (i-1)d(v) at v(j). Copy j of node v is node
// 3v + j - 1. Node count triples, degrees become 3d + 2.
PortGraph build_triangle_expansion(const PortGraph& g);

// Max-degree-3 spanning tree of build_gadget_ring(base, xmap): a ring path,
// the gateway edges, both tree-path copies per gadget, and per gadget the
// crossed edge of its lowest set bit to join the copies.
std::vector<std::pair<NodeId, NodeId>> gadget_ring_spanning_tree(
    const CrossingBase& base, const std::vector<CrossingVector>& xmap);

// Hamiltonian cycle of the triangle expansion of a graph, from a spanning
// tree of that graph with maximum degree 3: an Euler tour visits each base
// node deg times, the first visit sweeps 4 - deg triangle copies and later
// visits one each, so every copy is hit exactly once. Output verified against
// expanded's adjacency.
std::vector<NodeId> hamiltonian_cycle_from_tree(
    const PortGraph& expanded, const std::vector<std::pair<NodeId, NodeId>>& tree_edges);

// A ring-start exploration script cut at its separators: port 2 on the ring
// enters a gadget, port m/2 at a gateway leaves it. cycle_blocks carry ring
// moves (ports 0/1), gadget_blocks carry gadget moves (ports < m/2). The
// script may end inside a gadget, in which case the last gadget block is
// unterminated and cycle_blocks has one entry fewer than usual.
struct BlockDecomposition {
  std::vector<PortSequence> cycle_blocks;
  std::vector<PortSequence> gadget_blocks;
  std::uint32_t m = 0;

  bool closed() const { return cycle_blocks.size() == gadget_blocks.size() + 1; }
  PortSequence reconcatenate() const;
};

BlockDecomposition decompose_blocks(const PortSequence& u, std::uint32_t m);

// Ring position whose gadget each block enters, for a walk starting at ring
// position start. Ring moves shift the position, gadget visits return to the
// position they left from.
std::vector<std::uint32_t> block_gadgets(const BlockDecomposition& d,
                                         std::uint32_t start);

// Merges all blocks of the same gadget into one at the gadget's first
// occurrence. Never longer than the input; preserves which gadgets are
// entered and, for scripts whose blocks return to the gateway, their
// in-gadget coverage.
BlockDecomposition make_non_repetitive(const BlockDecomposition& d,
                                       const std::vector<std::uint32_t>& gadget_of_block);

struct CrossingWitness {
  CrossingVector x;
  std::uint8_t unvisited_copy = 0;  // 0: copy 0 of the target, 1: copy 1
};

// Walks w on the base from v1, collecting one GF(2) form per visit to target:
// the parity of crossed-candidate edge traversals so far. Solves for x making
// every visit land in copy 1 (copy 0 untouched), else for x keeping every
// visit in copy 0. Some solution exists whenever target is visited at most s
// times.
std::optional<CrossingWitness> solve_crossing_vector(const PortSequence& w,
                                                     NodeId target,
                                                     const CrossingBase& base);

struct AdversaryWitness {
  std::vector<CrossingVector> xmap;  // per ring position
  std::uint32_t start = 0;           // ring position = node id
  NodeId unvisited = 0;
  GadgetGraph graph;                 // build_gadget_ring(base, xmap)
};

// For a non-repetitive script u: finds a start and an xmap whose gadget ring
// the script provably fails to cover, verified by simulation before being
// returned. Scans starts, then blocks, in ascending order; a block visiting
// some base node at most s times yields the witness via solve_crossing_vector.
// NONE only when every block visits every node s+1 times or more, which
// forces |u| >= (s+1) m^2.
std::optional<AdversaryWitness> adversary_witness(const PortSequence& u,
                                                  const CrossingBase& base);

// Random ring exploration script, feasible on every gadget ring built from
// base: each gadget visit walks up to max_walk random steps and then retraces
// them backwards, so it returns to the gateway with even crossing parity.
// distinct_gadgets makes the script non-repetitive (block_count <= m then).
PortSequence gen_feasible_sequence(const CrossingBase& base, std::uint32_t block_count,
                                   std::uint32_t max_walk, std::uint64_t seed,
                                   bool distinct_gadgets = false);

// Role sidecar for gadget graphs: "y <node>" per ring node, "gw <node>
// <gadget>" per gateway, "copy <node> <0|1>" per gadget node.
std::string serialize_roles(const GadgetGraph& g);

}  // namespace pgx
