#include "pgx/harness.hpp"

#include <charconv>
#include <fstream>
#include <memory>
#include <numeric>
#include <random>
#include <sstream>

#include "pgx/advice.hpp"

namespace pgx {

namespace {

struct BuiltFamily {
  PortGraph graph;
  std::vector<NodeId> cycle_starts;  // gadget families: the main-cycle nodes
  std::vector<NodeId> ham_cycle;     // families with a known hamiltonian cycle
};

std::vector<CrossingVector> plain_xmap(const CrossingBase& base) {
  return std::vector<CrossingVector>(base.m, CrossingVector::unit(base.s));
}

BuiltFamily build_family(const ExperimentSpec& spec) {
  BuiltFamily out;
  if (spec.family == "ring") {
    out.graph = gen_oriented_ring(spec.n);
    out.ham_cycle.resize(spec.n);
    std::iota(out.ham_cycle.begin(), out.ham_cycle.end(), 0);
  } else if (spec.family == "bipartite") {
    BipartiteGraph b = gen_complete_bipartite(spec.half);
    out.graph = std::move(b.graph);
    out.ham_cycle = std::move(b.hamiltonian_order);
  } else if (spec.family == "random") {
    out.graph = gen_random_connected(spec.n, spec.density, spec.seed);
  } else if (spec.family == "gadget-ring") {
    const CrossingBase base = make_crossing_base(spec.m);
    GadgetGraph g = build_gadget_ring(base, plain_xmap(base));
    out.graph = std::move(g.graph);
    out.cycle_starts = std::move(g.cycle_nodes);
  } else if (spec.family == "gadget-ring-subset") {
    const CrossingBase base = make_crossing_base(spec.m);
    std::vector<std::uint32_t> positions(spec.p);
    std::iota(positions.begin(), positions.end(), 0);
    GadgetGraph g = build_gadget_ring_subset(base, positions, plain_xmap(base));
    out.graph = std::move(g.graph);
    out.cycle_starts = std::move(g.cycle_nodes);
  } else if (spec.family == "pendant" || spec.family == "paired-pendant") {
    if (spec.n < 8 || spec.n % 4 != 0)
      throw HarnessError("pendant families need n divisible by 4, at least 8");
    const std::uint32_t m = spec.n / 2;
    const BipartiteGraph b = gen_complete_bipartite(m / 2);
    std::vector<NodeId> perm(m);
    for (std::uint32_t t = 0; t < m; ++t) perm[b.hamiltonian_order[t]] = t;
    const PortGraph base = b.graph.relabeled(perm);
    std::mt19937_64 rng(spec.seed);
    std::vector<Port> x(m);
    for (Port& xi : x)
      xi = std::uniform_int_distribution<Port>(0, m / 2 - 1)(rng);
    if (spec.family == "pendant") {
      out.graph = build_pendant_graph(base, x);
    } else {
      out.graph = build_paired_pendant_graph(base, x);
      out.ham_cycle = paired_pendant_cycle(m);
    }
  } else if (spec.family == "triangle") {
    const CrossingBase base = make_crossing_base(spec.m);
    const auto xmap = plain_xmap(base);
    GadgetGraph ring = build_gadget_ring(base, xmap);
    out.graph = build_triangle_expansion(ring.graph);
    out.ham_cycle = hamiltonian_cycle_from_tree(
        out.graph, gadget_ring_spanning_tree(base, xmap));
  } else {
    throw HarnessError("unknown family " + spec.family);
  }
  return out;
}

std::vector<NodeId> resolve_starts(const ExperimentSpec& spec,
                                   const BuiltFamily& fam) {
  const std::uint32_t n = fam.graph.node_count();
  if (spec.start == "all") {
    std::vector<NodeId> all(n);
    std::iota(all.begin(), all.end(), 0);
    return all;
  }
  if (spec.start == "cycle") {
    if (fam.cycle_starts.empty())
      throw HarnessError("family " + spec.family + " has no main cycle");
    return fam.cycle_starts;
  }
  NodeId v = 0;
  const char* first = spec.start.data();
  const char* last = first + spec.start.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || v >= n)
    throw HarnessError("bad start '" + spec.start + "'");
  return {v};
}

}  // namespace

std::vector<ReportRow> run_experiment(const ExperimentSpec& spec) {
  if (spec.oracle != "instance" && spec.oracle != "map")
    throw HarnessError("oracle must be instance or map");
  if (spec.algo != "tree" && spec.algo != "ham" && spec.algo != "poly")
    throw HarnessError("algo must be tree, ham, or poly");
  if (spec.algo == "ham" && spec.oracle != "instance")
    throw HarnessError("hamiltonian advice depends on the start node");

  const BuiltFamily fam = build_family(spec);
  const std::uint32_t n = fam.graph.node_count();
  const std::vector<NodeId> starts = resolve_starts(spec, fam);

  // map-oracle tree advice and size advice do not depend on the start
  std::optional<BitString> shared;
  if (spec.algo == "tree" && spec.oracle == "map")
    shared = encode_spanning_tree(fam.graph, dfs_spanning_tree(fam.graph, 0), 0,
                                  false)
                 .wire();
  if (spec.algo == "poly")
    shared = encode_size_advice(n, SizeAdviceParams{spec.size_param});

  std::vector<ReportRow> rows;
  rows.reserve(starts.size());
  for (const NodeId s0 : starts) {
    ReportRow row;
    row.family = spec.family;
    row.n = n;
    row.start = s0;
    BitString advice;
    std::unique_ptr<Strategy> strategy;
    if (spec.algo == "tree" && spec.oracle == "instance") {
      advice = encode_spanning_tree(fam.graph,
                                    dfs_spanning_tree(fam.graph, s0), s0, true)
                   .wire();
      strategy = std::make_unique<InstanceTreeExplorer>(advice);
      row.bound_checked = "2n-2";
      row.bound_value = 2ull * n - 2;
    } else if (spec.algo == "tree") {
      advice = *shared;
      strategy = std::make_unique<MapTreeExplorer>(advice);
      row.bound_checked = "8n(n-1)";
      row.bound_value = 8ull * n * (n - 1);
    } else if (spec.algo == "ham") {
      if (fam.ham_cycle.empty())
        throw HarnessError("family " + spec.family +
                           " has no hamiltonian cycle");
      advice = encode_hamiltonian_advice(fam.graph, fam.ham_cycle, s0).wire();
      strategy = std::make_unique<HamiltonianExplorer>(advice);
      row.bound_checked = "n-1";
      row.bound_value = n - 1;
    } else {
      advice = *shared;
      strategy = std::make_unique<PolyExplorer>(advice, SizeAdviceParams{spec.size_param},
                                                spec.cache_dir, spec.uxs_cap);
      row.bound_checked = "none";
      row.bound_value = 0;
    }
    const ExplorationOutcome outcome =
        run_strategy(fam.graph, s0, *strategy, spec.budget);
    row.advice_bits = advice.size();
    row.steps_used = outcome.steps_used;
    row.completed = outcome.completed;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::optional<std::pair<std::size_t, std::size_t>> find_advice_collision(
    const std::vector<BitString>& advice) {
  for (std::size_t i = 0; i < advice.size(); ++i)
    for (std::size_t j = i + 1; j < advice.size(); ++j)
      if (advice[i].to_ascii() == advice[j].to_ascii())
        return std::pair{i, j};
  return std::nullopt;
}

std::string format_report(const std::vector<ReportRow>& rows) {
  std::ostringstream out;
  out << "family,n,start,advice_bits,steps_used,completed,bound_checked,"
         "bound_value\n";
  for (const ReportRow& r : rows)
    out << r.family << ',' << r.n << ',' << r.start << ',' << r.advice_bits
        << ',' << r.steps_used << ',' << (r.completed ? 1 : 0) << ','
        << r.bound_checked << ',' << r.bound_value << '\n';
  return out.str();
}

void emit_report(const std::vector<ReportRow>& rows, const std::string& path) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw HarnessError("cannot open " + path + " for writing");
  f << format_report(rows);
  f.flush();
  if (!f) throw HarnessError("write to " + path + " failed");
}

RingPigeonholeDemo run_ring_pigeonhole_demo() {
  RingPigeonholeDemo demo;
  demo.sizes = {5, 6, 7, 8, 9};
  for (const std::uint32_t n : demo.sizes) {
    BitString b;
    b.append_uint(n % 4, 2);
    demo.advice.push_back(b);
  }
  const auto hit = find_advice_collision(demo.advice);
  if (!hit) throw std::logic_error("five rings with 2-bit advice must collide");
  demo.collision = *hit;
  demo.small_n = demo.sizes[hit->first];
  demo.large_n = demo.sizes[hit->second];

  // the replay trusts the advice: walk port 0 as far as the smallest
  // consistent ring needs, then stop
  const std::string key = demo.advice[hit->first].to_ascii();
  std::uint32_t smallest = 0;
  for (std::size_t k = 0; k < demo.sizes.size(); ++k)
    if (demo.advice[k].to_ascii() == key) {
      smallest = demo.sizes[k];
      break;
    }
  demo.replay_steps = smallest - 1;
  const std::vector<Port> walk(demo.replay_steps, 0);
  demo.small_completed =
      run_port_sequence(gen_oriented_ring(demo.small_n), 0, walk).completed;
  demo.large_completed =
      run_port_sequence(gen_oriented_ring(demo.large_n), 0, walk).completed;
  return demo;
}

}  // namespace pgx
