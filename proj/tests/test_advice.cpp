#include <bit>
#include <functional>

#include "doctest.h"
#include "pgx/advice.hpp"
#include "pgx/agent.hpp"
#include "pgx/port_graph.hpp"

using namespace pgx;

namespace {

AdviceErrorKind advice_error_kind(const std::function<void()>& f) {
  try {
    f();
  } catch (const AdviceError& e) {
    return e.kind;
  }
  FAIL("expected an AdviceError");
  return AdviceErrorKind::bad_params;
}

std::uint32_t log2_floor(std::uint64_t x) {
  return static_cast<std::uint32_t>(std::bit_width(x)) - 1;
}

}  // namespace

TEST_CASE("size advice drops the last c+1 bits of the loglog spelling") {
  CHECK(encode_size_advice(1ull << 32, {-1}).to_ascii() == "101");
  CHECK(encode_size_advice(1ull << 32, {0}).to_ascii() == "10");
  CHECK(encode_size_advice(1ull << 32, {2}).to_ascii() == "");
  CHECK(encode_size_advice(4, {-1}).to_ascii() == "1");
  CHECK(encode_size_advice(4, {0}).to_ascii() == "");
  CHECK(encode_size_advice(16, {0}).to_ascii() == "1");
  CHECK(encode_size_advice(2, {0}).to_ascii() == "");
  CHECK(encode_size_advice(3, {-1}).to_ascii() == "0");
  CHECK(advice_error_kind([] { encode_size_advice(1, {0}); }) ==
        AdviceErrorKind::size_too_small);
  CHECK(advice_error_kind([] { encode_size_advice(10, {-2}); }) ==
        AdviceErrorKind::bad_params);
}

TEST_CASE("size bound decodes by appending ones") {
  const SizeBound b = decode_size_bound(BitString::from_ascii("10"), {0});
  CHECK(b.n1 == 5);
  CHECK(b.log2_log2() == 64);
  CHECK(b.at_least(1ull << 62));
  CHECK(!b.small_value().has_value());

  const SizeBound c2 = decode_size_bound(BitString::from_ascii(""), {2});
  CHECK(c2.n1 == 7);
  CHECK(c2.at_least(1ull << 40));

  // the one-bit identity used for tiny bounds: "0" spells n1 = 0, N = 4
  const SizeBound tiny = decode_size_bound(BitString::from_ascii("0"), {-1});
  CHECK(tiny.n1 == 0);
  CHECK(tiny.small_value() == 4);
  CHECK(tiny.at_least(4));
  CHECK(!tiny.at_least(5));
}

TEST_CASE("size codec upper-bounds every tested n") {
  for (std::uint64_t n = 4; n <= (1ull << 14); ++n)
    for (int c : {0, 1, 2}) {
      const BitString s = encode_size_advice(n, {c});
      const SizeBound b = decode_size_bound(s, {c});
      CHECK(b.at_least(n));
      if (n >= 16) {
        const std::uint32_t logloglog = log2_floor(log2_floor(log2_floor(n)));
        const std::size_t cap =
            logloglog > static_cast<std::uint32_t>(c) ? logloglog - c : 0;
        CHECK(s.size() <= cap);
      }
      // N <= n^K for K = 2^(2^(c+1)): compare exponents exactly
      const std::uint64_t k = 1ull << (1u << (c + 1));
      CHECK((1ull << (b.n1 + 1)) <= k * log2_floor(n));
    }
}

TEST_CASE("two-node tree advice is the minimal walk") {
  const PortGraph g = PortGraph::from_edges(2, {{0, 0, 1, 0}});
  const SpanningTreeAdvice adv = encode_spanning_tree(g, {{0, 1}}, 0, true);
  CHECK(adv.node_count == 2);
  CHECK(adv.shape.to_ascii() == "01");
  CHECK(adv.tour_ports == std::vector<Port>{0, 0, 0, 0});
  CHECK(adv.root_is_start);
  const BitString wire = adv.wire();
  CHECK(wire.size() == 32 + 2 + 4);
  const SpanningTreeAdvice back = decode_spanning_tree(wire);
  CHECK(back.node_count == 2);
  CHECK(back.shape.to_ascii() == "01");
  CHECK(back.tour_ports == adv.tour_ports);
  CHECK(back.wire().to_ascii() == wire.to_ascii());
}

TEST_CASE("three-node path advice from an end") {
  const PortGraph g = PortGraph::from_edges(3, {{0, 0, 1, 0}, {1, 1, 2, 0}});
  const SpanningTreeAdvice adv =
      encode_spanning_tree(g, {{0, 1}, {1, 2}}, 0, false);
  CHECK(adv.shape.to_ascii() == "0011");
  CHECK(adv.tour_ports == std::vector<Port>{0, 0, 1, 0, 0, 1, 0, 0});
  CHECK(adv.wire().size() == 32 + 4 + 8 * 2);
  const SpanningTreeAdvice back = decode_spanning_tree(adv.wire());
  CHECK(back.wire().to_ascii() == adv.wire().to_ascii());
}

TEST_CASE("tree advice round trips on a random graph") {
  const PortGraph g = gen_random_connected(16, 0.35, 11);
  std::vector<std::pair<NodeId, NodeId>> tree;
  // canonical DFS tree by increasing port numbers
  std::vector<char> seen(16, 0);
  std::function<void(NodeId)> dfs = [&](NodeId u) {
    seen[u] = 1;
    for (Port p = 0; p < g.degree(u); ++p) {
      const NodeId v = g.neighbor(u, p).node;
      if (!seen[v]) {
        tree.push_back({u, v});
        dfs(v);
      }
    }
  };
  dfs(0);
  REQUIRE(tree.size() == 15);
  const SpanningTreeAdvice adv = encode_spanning_tree(g, tree, 0, false);
  const SpanningTreeAdvice back = decode_spanning_tree(adv.wire());
  CHECK(back.node_count == 16);
  CHECK(back.wire().to_ascii() == adv.wire().to_ascii());
}

TEST_CASE("malformed tree wires are rejected") {
  CHECK(advice_error_kind([] {
          decode_spanning_tree(BitString::from_ascii("0101"));
        }) == AdviceErrorKind::malformed_header);
  {
    BitString w;
    w.append_uint(2, 32);
    w.append(BitString::from_ascii("10"));
    w.append(BitString::from_ascii("0000"));
    CHECK(advice_error_kind([&] { decode_spanning_tree(w); }) ==
          AdviceErrorKind::malformed_shape);
  }
  {
    BitString w;
    w.append_uint(2, 32);
    w.append(BitString::from_ascii("01"));
    w.append(BitString::from_ascii("00"));
    CHECK(advice_error_kind([&] { decode_spanning_tree(w); }) ==
          AdviceErrorKind::truncated_ports);
  }
}

TEST_CASE("tree encoder requires a spanning tree") {
  const PortGraph g = gen_oriented_ring(4);
  CHECK(advice_error_kind([&] {
          encode_spanning_tree(g, {{0, 1}}, 0, false);
        }) == AdviceErrorKind::not_spanning_tree);
  CHECK(advice_error_kind([&] {
          encode_spanning_tree(g, {{0, 1}, {1, 2}, {0, 2}}, 0, false);
        }) == AdviceErrorKind::not_spanning_tree);
}

TEST_CASE("hamiltonian advice lists the cycle ports from the start") {
  const PortGraph ring = gen_oriented_ring(4);
  const HamiltonianAdvice adv =
      encode_hamiltonian_advice(ring, {0, 1, 2, 3}, 2);
  CHECK(adv.node_count == 4);
  CHECK(adv.ports == std::vector<Port>{0, 0, 0});
  CHECK(adv.wire().size() == 32 + 3 * 2);
  const HamiltonianAdvice back = decode_hamiltonian_advice(adv.wire());
  CHECK(back.ports == adv.ports);

  const BipartiteGraph b = gen_complete_bipartite(2);
  const HamiltonianAdvice k22 =
      encode_hamiltonian_advice(b.graph, b.hamiltonian_order, 0);
  CHECK(k22.ports == std::vector<Port>{0, 1, 0});
  const ExplorationOutcome o = run_port_sequence(b.graph, 0, k22.ports);
  CHECK(o.completed);
  CHECK(o.steps_used == 3);
}

TEST_CASE("hamiltonian encoder validates the cycle") {
  const PortGraph ring = gen_oriented_ring(4);
  CHECK(advice_error_kind([&] {
          encode_hamiltonian_advice(ring, {0, 1, 2}, 0);
        }) == AdviceErrorKind::not_hamiltonian_cycle);
  CHECK(advice_error_kind([&] {
          encode_hamiltonian_advice(ring, {0, 1, 1, 3}, 0);
        }) == AdviceErrorKind::not_hamiltonian_cycle);
  CHECK(advice_error_kind([&] {
          encode_hamiltonian_advice(ring, {0, 2, 1, 3}, 0);
        }) == AdviceErrorKind::not_hamiltonian_cycle);
}

TEST_CASE("bit strings append and read back") {
  BitString b;
  b.append_uint(5, 4);
  CHECK(b.to_ascii() == "0101");
  b.push_back(true);
  CHECK(b.size() == 5);
  BitReader r(b);
  CHECK(r.read_uint(4) == 5);
  CHECK(r.read_bit());
  CHECK(r.remaining() == 0);
  CHECK_THROWS_AS(r.read_bit(), std::out_of_range);
}
