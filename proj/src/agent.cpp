#include "pgx/agent.hpp"

namespace pgx {

ExplorationOutcome run_strategy(const PortGraph& g, NodeId start, Strategy& strategy,
                                std::uint64_t budget, bool keep_trace) {
  const std::uint32_t n = g.node_count();
  if (start >= n)
    throw GraphError(GraphErrorKind::bad_node,
                     "start node " + std::to_string(start) + " out of range");
  std::vector<char> visited(n, 0);
  visited[start] = 1;
  ExplorationOutcome out;
  out.visited_count = 1;
  if (keep_trace) out.trace.emplace();

  NodeId at = start;
  Observation obs{g.degree(start), std::nullopt};
  while (true) {
    if (out.steps_used == budget) {
      // ask once more only to learn whether the strategy was done anyway
      const StrategyAction a = strategy.next(obs);
      if (a.kind == StrategyAction::Kind::move) out.budget_exhausted = true;
      if (a.kind == StrategyAction::Kind::abort_run) out.aborted_at = out.steps_used;
      break;
    }
    const StrategyAction a = strategy.next(obs);
    if (a.kind == StrategyAction::Kind::stop) break;
    if (a.kind == StrategyAction::Kind::abort_run) {
      out.aborted_at = out.steps_used;
      break;
    }
    if (a.port >= obs.degree)
      throw StrategyPortOutOfRange("strategy chose port " + std::to_string(a.port) +
                                   " at a node of degree " + std::to_string(obs.degree));
    const PortTarget t = g.neighbor(at, a.port);
    at = t.node;
    ++out.steps_used;
    if (!visited[at]) {
      visited[at] = 1;
      ++out.visited_count;
    }
    obs = {g.degree(at), t.port};
    if (keep_trace) out.trace->push_back({a.port, t.port, obs.degree});
  }
  out.completed = out.visited_count == n;
  return out;
}

ExplorationOutcome run_port_sequence(const PortGraph& g, NodeId start,
                                     const PortSequence& seq, std::uint64_t budget,
                                     bool keep_trace) {
  ReplayStrategy replay(seq);
  return run_strategy(g, start, replay, budget, keep_trace);
}

}  // namespace pgx
