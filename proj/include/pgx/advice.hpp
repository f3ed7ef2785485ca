#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pgx/agent.hpp"
#include "pgx/bitstring.hpp"
#include "pgx/port_graph.hpp"

namespace pgx {

enum class AdviceErrorKind {
  size_too_small,        // size advice needs n >= 2
  bad_params,
  not_spanning_tree,
  malformed_header,
  malformed_shape,
  truncated_ports,
  not_hamiltonian_cycle,
};

class AdviceError : public std::runtime_error {
public:
  AdviceError(AdviceErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind(kind) {}
  AdviceErrorKind kind;
};

// ---- size advice ------------------------------------------------------------

// c is the truncation constant: encode drops the last c+1 bits of the binary
// representation of floor(log2 log2 n); decode appends c+1 one bits before
// exponentiating back. c = -1 is the degenerate identity (drop/append zero
// bits), kept for cap-scale demos; c >= 0 is the usual regime.
struct SizeAdviceParams {
  int c = 0;
};

BitString encode_size_advice(std::uint64_t n, SizeAdviceParams params);

// Decoded bound N = 2^(2^(n1+1)), held by exponent so astronomically large
// bounds stay exact. log2_log2 saturates at 2^32 when the advice is absurdly
// long; every query stays correct for n that fits in 64 bits.
struct SizeBound {
  std::uint64_t n1 = 0;

  std::uint64_t log2_log2() const {  // = 2^(n1+1), saturated
    return n1 >= 32 ? (1ull << 32) : (1ull << (n1 + 1));
  }
  bool at_least(std::uint64_t n) const;
  // N as a plain integer when it fits in 64 bits
  std::optional<std::uint64_t> small_value() const {
    if (log2_log2() >= 64) return std::nullopt;
    return 1ull << log2_log2();
  }
};

SizeBound decode_size_bound(const BitString& s, SizeAdviceParams params);

// ---- spanning tree advice ---------------------------------------------------

// Port-labeled rooted tree in DFS preorder indexing; node 0 is the root and
// links are sorted by local port.
struct PortTree {
  struct Link {
    Port port_here = 0;
    std::uint32_t neighbor = 0;
    Port port_back = 0;
    friend bool operator==(const Link&, const Link&) = default;
  };
  std::vector<std::vector<Link>> nodes;

  std::uint32_t size() const { return static_cast<std::uint32_t>(nodes.size()); }
  friend bool operator==(const PortTree&, const PortTree&) = default;
};

// Wire form: node count t as a 32-bit big-endian header, 2(t-1) shape bits
// (0 = down, 1 = up) from the DFS tour with children in increasing-port
// order, then 4(t-1) ports: (outgoing, entry) for every tour step, each as a
// fixed-width max(1, ceil(log2 t))-bit big-endian field.
struct SpanningTreeAdvice {
  std::uint32_t node_count = 0;
  BitString shape;
  std::vector<Port> tour_ports;
  bool root_is_start = false;  // context flag, not serialized
  PortTree tree;

  BitString wire() const;
};

unsigned tree_port_width(std::uint32_t node_count);

SpanningTreeAdvice encode_spanning_tree(
    const PortGraph& g, const std::vector<std::pair<NodeId, NodeId>>& tree_edges,
    NodeId root, bool root_is_start = false);

SpanningTreeAdvice decode_spanning_tree(const BitString& wire);

// ---- hamiltonian advice -----------------------------------------------------

// Wire form: node count as a 32-bit big-endian header, then the n-1 outgoing
// ports along the cycle from the start node, fixed width as above.
struct HamiltonianAdvice {
  std::uint32_t node_count = 0;
  std::vector<Port> ports;

  BitString wire() const;
};

HamiltonianAdvice encode_hamiltonian_advice(const PortGraph& g,
                                            const std::vector<NodeId>& cycle,
                                            NodeId start);

HamiltonianAdvice decode_hamiltonian_advice(const BitString& wire);

}  // namespace pgx
