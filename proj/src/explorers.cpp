#include "pgx/explorers.hpp"

#include <algorithm>
#include <bit>
#include <filesystem>
#include <fstream>
#include <optional>

namespace pgx {

std::vector<std::pair<NodeId, NodeId>> dfs_spanning_tree(const PortGraph& g,
                                                         NodeId root) {
  const std::uint32_t n = g.node_count();
  if (root >= n)
    throw GraphError(GraphErrorKind::bad_node, "root out of range");
  std::vector<char> visited(n, 0);
  visited[root] = 1;
  std::vector<std::pair<NodeId, Port>> stack{{root, 0}};
  std::vector<std::pair<NodeId, NodeId>> edges;
  while (!stack.empty()) {
    auto& [node, next_port] = stack.back();
    if (next_port == g.degree(node)) {
      stack.pop_back();
      continue;
    }
    const PortTarget t = g.adjacency()[node][next_port++];
    if (!visited[t.node]) {
      visited[t.node] = 1;
      edges.push_back({node, t.node});
      stack.push_back({t.node, 0});
    }
  }
  return edges;
}

std::vector<EulerStep> euler_tour(const PortTree& tree, std::uint32_t start) {
  if (start >= tree.size())
    throw ExplorerError(ExplorerErrorKind::bad_advice, "tour start out of range");
  std::vector<EulerStep> tour;
  struct Frame {
    std::uint32_t node;
    std::uint32_t parent;
    bool has_parent;
    std::size_t next_link = 0;
  };
  std::vector<Frame> stack{{start, 0, false}};
  while (!stack.empty()) {
    Frame& f = stack.back();
    const auto& links = tree.nodes[f.node];
    bool descended = false;
    while (f.next_link < links.size()) {
      const PortTree::Link link = links[f.next_link++];
      if (f.has_parent && link.neighbor == f.parent) continue;
      tour.push_back({link.port_here, link.port_back});
      stack.push_back({link.neighbor, f.node, true});
      descended = true;
      break;
    }
    if (descended) continue;
    const Frame done = stack.back();
    stack.pop_back();
    if (done.has_parent)
      for (const PortTree::Link& link : tree.nodes[done.node])
        if (link.neighbor == done.parent) {
          tour.push_back({link.port_here, link.port_back});
          break;
        }
  }
  return tour;
}

InstanceTreeExplorer::InstanceTreeExplorer(const BitString& advice) {
  const SpanningTreeAdvice adv = decode_spanning_tree(advice);
  tour_ = euler_tour(adv.tree, 0);
}

StrategyAction InstanceTreeExplorer::next(const Observation& current) {
  if (done_) return StrategyAction::stop();
  if (pos_ > 0 && current.entry_port != tour_[pos_ - 1].entry_port) {
    done_ = true;
    return StrategyAction::abort_run();
  }
  if (pos_ == tour_.size()) {
    done_ = true;
    return StrategyAction::stop();
  }
  const Port out = tour_[pos_].out_port;
  if (out >= current.degree) {
    done_ = true;
    return StrategyAction::abort_run();
  }
  ++pos_;
  return StrategyAction::move_to(out);
}

MapTreeExplorer::MapTreeExplorer(const BitString& advice) {
  const SpanningTreeAdvice adv = decode_spanning_tree(advice);
  tours_.reserve(adv.node_count);
  for (std::uint32_t u = 0; u < adv.node_count; ++u) {
    std::vector<EulerStep> f = euler_tour(adv.tree, u);
    // followed by its reversal: retracing the expected entry ports walks the
    // same edges backwards, so a fully matched attempt ends where it began
    for (std::size_t i = f.size(); i-- > 0;)
      f.push_back({f[i].entry_port, f[i].out_port});
    tours_.push_back(std::move(f));
  }
}

void MapTreeExplorer::advance_hypothesis() {
  tour_ends_.push_back(moves_);
  walked_.clear();
  ++hypothesis_;
  pos_ = 0;
  backtracking_ = false;
  if (hypothesis_ == tours_.size()) done_ = true;
}

StrategyAction MapTreeExplorer::next(const Observation& current) {
  if (pending_) {
    // the observation closes out the previous tour move
    pending_ = false;
    walked_.push_back({pending_out_, *current.entry_port});
    if (*current.entry_port != expected_entry_) backtracking_ = true;
  }
  while (true) {
    if (done_) return StrategyAction::stop();
    if (backtracking_) {
      if (walked_.empty()) {
        advance_hypothesis();
        continue;
      }
      const Performed last = walked_.back();
      walked_.pop_back();
      ++moves_;
      return StrategyAction::move_to(last.entered);
    }
    const std::vector<EulerStep>& f = tours_[hypothesis_];
    if (pos_ == f.size()) {
      advance_hypothesis();
      continue;
    }
    const EulerStep step = f[pos_];
    if (step.out_port >= current.degree) {
      backtracking_ = true;
      continue;
    }
    ++pos_;
    ++moves_;
    pending_ = true;
    pending_out_ = step.out_port;
    expected_entry_ = step.entry_port;
    return StrategyAction::move_to(step.out_port);
  }
}

HamiltonianExplorer::HamiltonianExplorer(const BitString& advice)
    : advice_(decode_hamiltonian_advice(advice)) {}

StrategyAction HamiltonianExplorer::next(const Observation& current) {
  if (done_ || pos_ == advice_.ports.size()) return StrategyAction::stop();
  const Port out = advice_.ports[pos_];
  if (out >= current.degree) {
    done_ = true;
    return StrategyAction::abort_run();
  }
  ++pos_;
  return StrategyAction::move_to(out);
}

// ---- universal exploration sequences ---------------------------------------

namespace {

class UxsStrategy : public Strategy {
public:
  explicit UxsStrategy(const std::vector<std::uint32_t>& offsets)
      : offsets_(offsets) {}
  StrategyAction next(const Observation& current) override {
    if (pos_ == offsets_.size() || current.degree == 0)
      return StrategyAction::stop();
    const Port out =
        (current.entry_port.value_or(0) + offsets_[pos_]) % current.degree;
    ++pos_;
    return StrategyAction::move_to(out);
  }

private:
  const std::vector<std::uint32_t>& offsets_;
  std::size_t pos_ = 0;
};

struct WalkState {
  NodeId node = 0;
  Port entry = 0;  // 0 doubles as the virtual entry port at the start node
  std::uint32_t mask = 0;
};

struct UxsInstance {
  const PortGraph* g;
  NodeId start;
  std::uint32_t full_mask;
};

inline void uxs_step(const PortGraph& g, WalkState& s, std::uint32_t offset) {
  const auto& links = g.adjacency()[s.node];
  if (links.empty()) return;
  const PortTarget t = links[(s.entry + offset) % links.size()];
  s.node = t.node;
  s.entry = t.port;
  s.mask |= 1u << t.node;
}

bool covers(const UxsInstance& inst, const std::vector<std::uint32_t>& offsets,
            std::size_t len) {
  WalkState s{inst.start, 0, 1u << inst.start};
  for (std::size_t i = 0; i < len && s.mask != inst.full_mask; ++i)
    uxs_step(*inst.g, s, offsets[i]);
  return s.mask == inst.full_mask;
}

std::string cache_path(const std::string& cache_dir, std::uint32_t bound) {
  return cache_dir + "/uxs_" + std::to_string(bound) + ".cert";
}

}  // namespace

ExplorationOutcome replay_uxs(const PortGraph& g, NodeId start,
                              const std::vector<std::uint32_t>& offsets,
                              std::uint64_t budget, bool keep_trace) {
  UxsStrategy strat(offsets);
  return run_strategy(g, start, strat, budget, keep_trace);
}

bool verify_uxs(const UxsCertificate& cert) {
  const std::vector<PortGraph> graphs = enumerate_connected_port_graphs(cert.bound);
  if (cert.verified_graph_count != graphs.size()) return false;
  for (const PortGraph& g : graphs) {
    const std::uint32_t full = (1u << g.node_count()) - 1;
    for (NodeId s = 0; s < g.node_count(); ++s)
      if (!covers({&g, s, full}, cert.offsets, cert.offsets.size())) return false;
  }
  return true;
}

UxsCertificate certified_uxs(std::uint32_t bound, const std::string& cache_dir,
                             std::uint32_t cap) {
  if (bound == 0)
    throw ExplorerError(ExplorerErrorKind::bad_advice, "bound must be positive");
  if (bound > cap)
    throw ExplorerError(ExplorerErrorKind::feasibility_cap_exceeded,
                        "bound " + std::to_string(bound) +
                            " exceeds the feasibility cap " + std::to_string(cap));
  if (!cache_dir.empty()) {
    std::ifstream in(cache_path(cache_dir, bound));
    if (in) {
      std::string tag;
      UxsCertificate cert;
      std::size_t len = 0;
      in >> tag >> cert.bound >> len;
      if (in && tag == "uxs" && cert.bound == bound && len <= 4096) {
        cert.offsets.resize(len);
        for (std::size_t i = 0; i < len && in; ++i) in >> cert.offsets[i];
        in >> cert.verified_graph_count;
        if (in && verify_uxs(cert)) return cert;
      }
    }
  }

  const std::vector<PortGraph> graphs = enumerate_connected_port_graphs(bound);
  std::vector<UxsInstance> universe;
  for (const PortGraph& g : graphs) {
    const std::uint32_t full = (1u << g.node_count()) - 1;
    for (NodeId s = 0; s < g.node_count(); ++s) universe.push_back({&g, s, full});
  }

  // Iterative deepening with offsets tried in ascending order, so the first
  // sequence that passes the full check is the length-then-lex minimum. A
  // small working set of discriminating instances rejects almost every
  // candidate after a few steps; survivors face the whole universe and any
  // miss joins the working set. Subtrees that cannot cover the worst working
  // instance in the moves left are cut.
  std::vector<std::size_t> working;
  for (std::size_t i = 0; i < universe.size(); ++i)
    if (universe[i].full_mask != (1u << universe[i].start)) {
      working.push_back(i);
      break;
    }

  UxsCertificate cert;
  cert.bound = bound;
  cert.verified_graph_count = graphs.size();

  for (std::uint32_t target_len = 0; target_len <= 64; ++target_len) {
    std::vector<std::uint32_t> prefix(target_len, 0);
    std::vector<std::vector<WalkState>> states(target_len + 1);
    states[0].clear();
    for (std::size_t k : working) {
      const UxsInstance& inst = universe[k];
      states[0].push_back({inst.start, 0, 1u << inst.start});
    }
    std::size_t depth = 0;
    auto next_branch = [&]() -> bool {
      while (depth > 0) {
        --depth;
        if (++prefix[depth] < bound) return true;
        prefix[depth] = 0;
      }
      return false;
    };
    bool searching = true;
    while (searching) {
      if (depth == target_len) {
        bool all = true;
        for (std::size_t k = 0; k < working.size(); ++k)
          if (states[depth][k].mask != universe[working[k]].full_mask) {
            all = false;
            break;
          }
        if (all) {
          std::optional<std::size_t> missed;
          for (std::size_t i = 0; i < universe.size(); ++i)
            if (!covers(universe[i], prefix, target_len)) {
              missed = i;
              break;
            }
          if (!missed) {
            cert.offsets = prefix;
            if (!cache_dir.empty()) {
              std::filesystem::create_directories(cache_dir);
              const std::string path = cache_path(cache_dir, bound);
              const std::string tmp = path + ".tmp";
              std::ofstream out(tmp);
              out << "uxs " << cert.bound << " " << cert.offsets.size();
              for (std::uint32_t o : cert.offsets) out << " " << o;
              out << " " << cert.verified_graph_count << "\n";
              out.close();
              std::filesystem::rename(tmp, path);
            }
            return cert;
          }
          working.push_back(*missed);
          const UxsInstance& inst = universe[*missed];
          WalkState s{inst.start, 0, 1u << inst.start};
          states[0].push_back(s);
          for (std::size_t d = 0; d < depth; ++d) {
            uxs_step(*inst.g, s, prefix[d]);
            states[d + 1].push_back(s);
          }
        }
        searching = next_branch();
        continue;
      }
      states[depth + 1] = states[depth];
      const std::size_t moves_left = target_len - depth - 1;
      bool viable = true;
      for (std::size_t k = 0; k < working.size(); ++k) {
        WalkState& s = states[depth + 1][k];
        uxs_step(*universe[working[k]].g, s, prefix[depth]);
        if (static_cast<std::size_t>(
                std::popcount(universe[working[k]].full_mask & ~s.mask)) >
            moves_left)
          viable = false;
      }
      if (viable) {
        ++depth;
      } else if (++prefix[depth] >= bound) {
        prefix[depth] = 0;
        searching = next_branch();
      }
    }
  }
  throw ExplorerError(ExplorerErrorKind::bad_advice,
                      "no covering sequence found up to length 64");
}

PolyExplorer::PolyExplorer(const BitString& advice, SizeAdviceParams params,
                           const std::string& cache_dir, std::uint32_t cap) {
  const SizeBound bound = decode_size_bound(advice, params);
  const auto small = bound.small_value();
  if (!small || *small > cap)
    throw ExplorerError(ExplorerErrorKind::feasibility_cap_exceeded,
                        "decoded bound " +
                            (small ? std::to_string(*small)
                                   : "2^2^" + std::to_string(bound.n1 + 1)) +
                            " exceeds the feasibility cap " + std::to_string(cap));
  cert_ = certified_uxs(static_cast<std::uint32_t>(*small), cache_dir, cap);
}

StrategyAction PolyExplorer::next(const Observation& current) {
  if (pos_ == cert_.offsets.size() || current.degree == 0)
    return StrategyAction::stop();
  const Port out =
      (current.entry_port.value_or(0) + cert_.offsets[pos_]) % current.degree;
  ++pos_;
  return StrategyAction::move_to(out);
}

}  // namespace pgx
