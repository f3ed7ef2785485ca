#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include "doctest.h"
#include "pgx/explorers.hpp"

using namespace pgx;

namespace {

BitString tree_advice(const PortGraph& g, NodeId root, bool root_is_start) {
  return encode_spanning_tree(g, dfs_spanning_tree(g, root), root, root_is_start)
      .wire();
}

ExplorerErrorKind explorer_error_kind(const std::function<void()>& f) {
  try {
    f();
  } catch (const ExplorerError& e) {
    return e.kind();
  }
  FAIL("expected an ExplorerError");
  return ExplorerErrorKind::bad_advice;
}

// positions along a kept trace; index k = node after k moves
std::vector<NodeId> trace_positions(const PortGraph& g, NodeId start,
                                    const std::vector<TraceStep>& trace) {
  std::vector<NodeId> pos{start};
  for (const TraceStep& t : trace)
    pos.push_back(g.neighbor(pos.back(), t.out_port).node);
  return pos;
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("pgx_test_" + std::to_string(::getpid()));
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("dfs tree scans ports in ascending order") {
  const PortGraph path = PortGraph::from_edges(3, {{0, 0, 1, 0}, {1, 1, 2, 0}});
  CHECK(dfs_spanning_tree(path, 0) ==
        std::vector<std::pair<NodeId, NodeId>>{{0, 1}, {1, 2}});

  const BipartiteGraph b = gen_complete_bipartite(2);
  CHECK(dfs_spanning_tree(b.graph, 0) ==
        std::vector<std::pair<NodeId, NodeId>>{{0, 2}, {2, 1}, {1, 3}});

  CHECK(dfs_spanning_tree(gen_oriented_ring(5), 0).size() == 4);
}

TEST_CASE("instance explorer walks the doubled tree exactly") {
  const PortGraph ring6 = gen_oriented_ring(6);
  InstanceTreeExplorer strat(tree_advice(ring6, 0, true));
  CHECK(strat.tour_length() == 10);
  const ExplorationOutcome o = run_strategy(ring6, 0, strat);
  CHECK(o.steps_used == 10);
  CHECK(o.completed);
  CHECK(!o.aborted_at.has_value());

  const PortGraph ring32 = gen_oriented_ring(32);
  InstanceTreeExplorer big(tree_advice(ring32, 5, true));
  const ExplorationOutcome o32 = run_strategy(ring32, 5, big);
  CHECK(o32.steps_used == 62);
  CHECK(o32.completed);
}

TEST_CASE("instance explorer completes from every start of a random graph") {
  const PortGraph g = gen_random_connected(8, 0.4, 3);
  for (NodeId s = 0; s < 8; ++s) {
    InstanceTreeExplorer strat(tree_advice(g, s, true));
    const ExplorationOutcome o = run_strategy(g, s, strat);
    CHECK(o.steps_used == 14);
    CHECK(o.completed);
  }
}

TEST_CASE("instance explorer on a larger ring stops clean but incomplete") {
  // a six-node tour replays feasibly on the seven-ring yet misses a node
  const PortGraph ring7 = gen_oriented_ring(7);
  InstanceTreeExplorer strat(tree_advice(gen_oriented_ring(6), 0, true));
  const ExplorationOutcome o = run_strategy(ring7, 0, strat);
  CHECK(o.steps_used == 10);
  CHECK(!o.completed);
  CHECK(o.visited_count == 6);
  CHECK(!o.aborted_at.has_value());
}

TEST_CASE("map explorer succeeds without knowing the start") {
  const BipartiteGraph b = gen_complete_bipartite(2);
  const BitString advice = tree_advice(b.graph, 0, false);
  for (NodeId s = 0; s < 4; ++s) {
    MapTreeExplorer strat(advice);
    CHECK(strat.hypothesis_count() == 4);
    const ExplorationOutcome o = run_strategy(b.graph, s, strat, kNoBudget, true);
    CHECK(o.completed);
    CHECK(o.steps_used <= 8 * 4 * 3);
    // the agent is back at its start after every finished hypothesis
    const std::vector<NodeId> pos = trace_positions(b.graph, s, *o.trace);
    for (std::uint64_t end : strat.tour_end_steps()) CHECK(pos[end] == s);
  }
}

TEST_CASE("map explorer stays within the move bound on random graphs") {
  for (std::uint32_t n : {8u, 16u}) {
    const PortGraph g = gen_random_connected(n, 0.3, 41 + n);
    const BitString advice = tree_advice(g, 0, false);
    for (NodeId s = 0; s < n; s += 3) {
      MapTreeExplorer strat(advice);
      const ExplorationOutcome o = run_strategy(g, s, strat, kNoBudget, true);
      CHECK(o.completed);
      CHECK(o.steps_used <= 8ull * n * (n - 1));
      const std::vector<NodeId> pos = trace_positions(g, s, *o.trace);
      for (std::uint64_t end : strat.tour_end_steps()) CHECK(pos[end] == s);
    }
  }
}

TEST_CASE("hamiltonian explorer follows the cycle ports") {
  const BipartiteGraph b = gen_complete_bipartite(3);
  for (NodeId s = 0; s < 6; ++s) {
    const BitString advice =
        encode_hamiltonian_advice(b.graph, b.hamiltonian_order, s).wire();
    HamiltonianExplorer strat(advice);
    const ExplorationOutcome o = run_strategy(b.graph, s, strat);
    CHECK(o.steps_used == 5);
    CHECK(o.completed);
  }
}

TEST_CASE("shortest covering sequences for tiny bounds are frozen") {
  const UxsCertificate c1 = certified_uxs(1);
  CHECK(c1.offsets.empty());
  CHECK(c1.verified_graph_count == 1);

  const UxsCertificate c2 = certified_uxs(2);
  CHECK(c2.offsets == std::vector<std::uint32_t>{0});

  const UxsCertificate c3 = certified_uxs(3);
  CHECK(c3.offsets == std::vector<std::uint32_t>{0, 1, 1});
  CHECK(c3.verified_graph_count == 16);
  CHECK(verify_uxs(c3));

  const UxsCertificate c4 = certified_uxs(4);
  CHECK(c4.offsets == std::vector<std::uint32_t>{0, 1, 1, 1, 1, 2, 1, 1});
  CHECK(c4.verified_graph_count == 2584);
  CHECK(verify_uxs(c4));
}

TEST_CASE("verification rejects a sequence that misses a graph") {
  UxsCertificate doctored;
  doctored.bound = 3;
  doctored.offsets = {0};
  doctored.verified_graph_count = 16;
  CHECK(!verify_uxs(doctored));
}

TEST_CASE("covering sequence cache round trips") {
  TempDir dir;
  const std::string cache = dir.path.string();
  const UxsCertificate fresh = certified_uxs(3, cache);
  CHECK(std::filesystem::exists(dir.path / "uxs_3.cert"));
  const UxsCertificate reloaded = certified_uxs(3, cache);
  CHECK(reloaded.offsets == fresh.offsets);
  CHECK(reloaded.verified_graph_count == fresh.verified_graph_count);

  // a corrupt cache entry is recomputed, not trusted
  std::ofstream(dir.path / "uxs_3.cert") << "uxs 3 1 7 16\n";
  const UxsCertificate recomputed = certified_uxs(3, cache);
  CHECK(recomputed.offsets == fresh.offsets);
  CHECK(verify_uxs(recomputed));
}

TEST_CASE("covering sequence search rejects bad bounds") {
  CHECK(explorer_error_kind([] { certified_uxs(0); }) ==
        ExplorerErrorKind::bad_advice);
  CHECK(explorer_error_kind([] { certified_uxs(6, "", 5); }) ==
        ExplorerErrorKind::feasibility_cap_exceeded);
}

TEST_CASE("offset walker covers everything under the decoded bound") {
  // advice "0" decodes to the exact bound 4
  const BitString advice = BitString::from_ascii("0");
  for (std::uint32_t n = 2; n <= 4; ++n) {
    const PortGraph ring =
        n >= 3 ? gen_oriented_ring(n)
               : PortGraph::from_edges(2, {{0, 0, 1, 0}});
    for (NodeId s = 0; s < n; ++s) {
      PolyExplorer strat(advice, {-1});
      CHECK(strat.certificate().bound == 4);
      const ExplorationOutcome o = run_strategy(ring, s, strat);
      CHECK(o.completed);
      CHECK(o.steps_used <= 8);
    }
  }
}

TEST_CASE("offset walker refuses astronomically large bounds") {
  CHECK(explorer_error_kind([] {
          PolyExplorer strat(BitString::from_ascii("10"), {0});
        }) == ExplorerErrorKind::feasibility_cap_exceeded);
}
