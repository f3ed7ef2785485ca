#include <algorithm>
#include <random>

#include "doctest.h"
#include "pgx/agent.hpp"
#include "pgx/port_graph.hpp"

using namespace pgx;

TEST_CASE("port-0 walk sweeps an oriented ring") {
  const PortGraph g = gen_oriented_ring(6);
  const ExplorationOutcome o = run_port_sequence(g, 0, PortSequence(5, 0));
  CHECK(o.steps_used == 5);
  CHECK(o.visited_count == 6);
  CHECK(o.completed);
  CHECK(!o.budget_exhausted);
  CHECK(!o.aborted_at.has_value());
}

TEST_CASE("budget cuts a walk short") {
  const PortGraph g = gen_oriented_ring(6);
  const ExplorationOutcome o = run_port_sequence(g, 0, PortSequence(5, 0), 3);
  CHECK(o.steps_used == 3);
  CHECK(o.visited_count == 4);
  CHECK(!o.completed);
  CHECK(o.budget_exhausted);
  // a budget equal to the walk length is not exhaustion
  const ExplorationOutcome exact = run_port_sequence(g, 0, PortSequence(5, 0), 5);
  CHECK(exact.completed);
  CHECK(!exact.budget_exhausted);
}

TEST_CASE("replay aborts on an infeasible port") {
  const PortGraph g = gen_oriented_ring(6);
  const ExplorationOutcome o = run_port_sequence(g, 0, {0, 7, 0});
  CHECK(o.aborted_at.has_value());
  CHECK(*o.aborted_at == 1);
  CHECK(o.steps_used == 1);
  CHECK(!o.completed);
}

TEST_CASE("trace records ports and degrees") {
  const PortGraph g = gen_oriented_ring(4);
  const ExplorationOutcome o =
      run_port_sequence(g, 0, PortSequence(3, 0), kNoBudget, true);
  REQUIRE(o.trace.has_value());
  REQUIRE(o.trace->size() == 3);
  for (const TraceStep& s : *o.trace) {
    CHECK(s.out_port == 0);
    CHECK(s.entry_port == 1);
    CHECK(s.degree == 2);
  }
}

TEST_CASE("out-of-range strategy moves throw") {
  struct Bad : Strategy {
    StrategyAction next(const Observation&) override {
      return StrategyAction::move_to(9);
    }
  };
  const PortGraph g = gen_oriented_ring(4);
  Bad bad;
  CHECK_THROWS_AS(run_strategy(g, 0, bad), StrategyPortOutOfRange);
}

TEST_CASE("bad start node is rejected") {
  const PortGraph g = gen_oriented_ring(4);
  CHECK_THROWS_AS(run_port_sequence(g, 9, {0}), GraphError);
}

TEST_CASE("outcomes are invariant under relabeling") {
  const PortGraph g = gen_random_connected(10, 0.4, 21);
  std::vector<NodeId> perm(10);
  for (NodeId v = 0; v < 10; ++v) perm[v] = v;
  std::shuffle(perm.begin(), perm.end(), std::mt19937_64(5));
  const PortGraph h = g.relabeled(perm);

  std::mt19937_64 rng(9);
  PortSequence seq;
  for (int i = 0; i < 40; ++i)
    seq.push_back(std::uniform_int_distribution<Port>(0, 3)(rng));
  const ExplorationOutcome a = run_port_sequence(g, 2, seq, kNoBudget, true);
  const ExplorationOutcome b = run_port_sequence(h, perm[2], seq, kNoBudget, true);
  CHECK(a.steps_used == b.steps_used);
  CHECK(a.visited_count == b.visited_count);
  CHECK(a.completed == b.completed);
  CHECK(a.aborted_at == b.aborted_at);
  REQUIRE(a.trace.has_value());
  REQUIRE(b.trace.has_value());
  REQUIRE(a.trace->size() == b.trace->size());
  for (std::size_t i = 0; i < a.trace->size(); ++i) {
    CHECK((*a.trace)[i].out_port == (*b.trace)[i].out_port);
    CHECK((*a.trace)[i].entry_port == (*b.trace)[i].entry_port);
    CHECK((*a.trace)[i].degree == (*b.trace)[i].degree);
  }
}
