#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pgx/advice.hpp"
#include "pgx/agent.hpp"
#include "pgx/port_graph.hpp"

namespace pgx {

enum class ExplorerErrorKind {
  bad_advice,
  feasibility_cap_exceeded,
  cache_io,
};

class ExplorerError : public std::runtime_error {
public:
  ExplorerError(ExplorerErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ExplorerErrorKind kind() const { return kind_; }

private:
  ExplorerErrorKind kind_;
};

// DFS tree edges (parent, child) in discovery order, ports scanned ascending.
std::vector<std::pair<NodeId, NodeId>> dfs_spanning_tree(const PortGraph& g,
                                                         NodeId root);

struct EulerStep {
  Port out_port;
  Port entry_port;
};

// Closed tour from start crossing every tree edge once each way: 2(t-1) steps.
std::vector<EulerStep> euler_tour(const PortTree& tree, std::uint32_t start);

// Replays the advised Euler tour from the tree root; aborts as soon as an
// observed entry port or an out-of-range prescription contradicts the advice.
class InstanceTreeExplorer : public Strategy {
public:
  explicit InstanceTreeExplorer(const BitString& advice);
  StrategyAction next(const Observation& current) override;
  std::size_t tour_length() const { return tour_.size(); }

private:
  std::vector<EulerStep> tour_;
  std::size_t pos_ = 0;
  bool done_ = false;
};

// Tries every node of the advised tree as the start hypothesis in id order.
// Each attempt replays that node's doubled Euler tour; on the first
// contradiction the walked edges are retraced backwards (entry ports of the
// moves actually performed), which is always feasible and returns the agent
// to its true start before the next hypothesis.
class MapTreeExplorer : public Strategy {
public:
  explicit MapTreeExplorer(const BitString& advice);
  StrategyAction next(const Observation& current) override;
  std::uint32_t hypothesis_count() const {
    return static_cast<std::uint32_t>(tours_.size());
  }
  // cumulative move counts at the end of each finished hypothesis
  const std::vector<std::uint64_t>& tour_end_steps() const { return tour_ends_; }

private:
  struct Performed {
    Port out;
    Port entered;
  };
  void advance_hypothesis();

  std::vector<std::vector<EulerStep>> tours_;
  std::size_t hypothesis_ = 0;
  std::size_t pos_ = 0;
  bool backtracking_ = false;
  bool done_ = false;
  bool pending_ = false;
  Port pending_out_ = 0;
  Port expected_entry_ = 0;
  std::vector<Performed> walked_;
  std::uint64_t moves_ = 0;
  std::vector<std::uint64_t> tour_ends_;
};

// Follows the advised port list along a hamiltonian cycle: n-1 moves, then stop.
class HamiltonianExplorer : public Strategy {
public:
  explicit HamiltonianExplorer(const BitString& advice);
  StrategyAction next(const Observation& current) override;

private:
  HamiltonianAdvice advice_;
  std::size_t pos_ = 0;
  bool done_ = false;
};

// A sequence of port offsets that explores every connected port-labeled graph
// with at most `bound` nodes from every start, verified by exhaustive replay.
struct UxsCertificate {
  std::uint32_t bound = 0;
  std::vector<std::uint32_t> offsets;
  std::size_t verified_graph_count = 0;
};

ExplorationOutcome replay_uxs(const PortGraph& g, NodeId start,
                              const std::vector<std::uint32_t>& offsets,
                              std::uint64_t budget = kNoBudget,
                              bool keep_trace = false);

bool verify_uxs(const UxsCertificate& cert);

inline constexpr std::uint32_t kDefaultUxsCap = 5;

// Finds (or loads from cache_dir and re-verifies) the shortest such sequence.
// The search is exhaustive, so `cap` guards against infeasible bounds.
UxsCertificate certified_uxs(std::uint32_t bound,
                             const std::string& cache_dir = "",
                             std::uint32_t cap = kDefaultUxsCap);

// Walks the certified sequence for the size bound decoded from the advice.
class PolyExplorer : public Strategy {
public:
  PolyExplorer(const BitString& advice, SizeAdviceParams params = {},
               const std::string& cache_dir = "",
               std::uint32_t cap = kDefaultUxsCap);
  StrategyAction next(const Observation& current) override;
  const UxsCertificate& certificate() const { return cert_; }

private:
  UxsCertificate cert_;
  std::size_t pos_ = 0;
};

}  // namespace pgx
