#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pgx/port_graph.hpp"

namespace pgx {

using PortSequence = std::vector<Port>;

// Everything an agent may perceive at its current node: the degree, and the
// port of arrival (absent at the start node). Node identity is never exposed.
struct Observation {
  std::uint32_t degree = 0;
  std::optional<Port> entry_port;
};

struct TraceStep {
  Port out_port = 0;
  Port entry_port = 0;
  std::uint32_t degree = 0;  // degree of the node arrived at
  friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

struct ExplorationOutcome {
  std::uint64_t steps_used = 0;
  std::uint32_t visited_count = 0;
  bool completed = false;                    // every node visited
  std::optional<std::uint64_t> aborted_at;   // step index that was infeasible
  bool budget_exhausted = false;
  std::optional<std::vector<TraceStep>> trace;
  friend bool operator==(const ExplorationOutcome&, const ExplorationOutcome&) = default;
};

// What a strategy may do after each observation. A strategy that knowingly
// reaches an impossible prescription signals abort itself (it can see the
// degree); emitting a port >= degree is treated as a bug, not an abort.
struct StrategyAction {
  enum class Kind { move, stop, abort_run };
  Kind kind = Kind::stop;
  Port port = 0;

  static StrategyAction move_to(Port p) { return {Kind::move, p}; }
  static StrategyAction stop() { return {Kind::stop, 0}; }
  static StrategyAction abort_run() { return {Kind::abort_run, 0}; }
};

class Strategy {
public:
  virtual ~Strategy() = default;
  virtual StrategyAction next(const Observation& current) = 0;
};

class AgentError : public std::runtime_error {
public:
  explicit AgentError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a strategy emits a port >= current degree; distinguishes
// algorithm bugs from adversarial infeasibility (which strategies signal
// with abort_run).
class StrategyPortOutOfRange : public AgentError {
public:
  using AgentError::AgentError;
};

inline constexpr std::uint64_t kNoBudget = ~0ull;

// Drives a strategy from start until stop/abort or budget exhaustion.
ExplorationOutcome run_strategy(const PortGraph& g, NodeId start, Strategy& strategy,
                                std::uint64_t budget = kNoBudget,
                                bool keep_trace = false);

// Replays a fixed port sequence, aborting at the first infeasible port;
// running off the end stops.
ExplorationOutcome run_port_sequence(const PortGraph& g, NodeId start,
                                     const PortSequence& seq,
                                     std::uint64_t budget = kNoBudget,
                                     bool keep_trace = false);

// Strategy form of run_port_sequence; the two are equivalent by construction.
class ReplayStrategy : public Strategy {
public:
  explicit ReplayStrategy(PortSequence seq) : seq_(std::move(seq)) {}
  StrategyAction next(const Observation& current) override {
    if (pos_ == seq_.size()) return StrategyAction::stop();
    const Port p = seq_[pos_];
    if (p >= current.degree) return StrategyAction::abort_run();
    ++pos_;
    return StrategyAction::move_to(p);
  }

private:
  PortSequence seq_;
  std::size_t pos_ = 0;
};

}  // namespace pgx
