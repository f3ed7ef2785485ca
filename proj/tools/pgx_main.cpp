#include <cctype>
#include <fstream>
#include <iostream>
#include <memory>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pgx/advice.hpp"
#include "pgx/adversary.hpp"
#include "pgx/agent.hpp"
#include "pgx/explorers.hpp"
#include "pgx/harness.hpp"
#include "pgx/port_graph.hpp"

namespace {

using namespace pgx;

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw HarnessError("cannot read " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw HarnessError("cannot write " + path);
  f << content;
  f.flush();
  if (!f) throw HarnessError("write to " + path + " failed");
}

std::vector<std::uint32_t> parse_uints(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::uint32_t> out;
  std::uint32_t v = 0;
  while (in >> v) out.push_back(v);
  if (!in.eof()) throw HarnessError("expected whitespace-separated integers");
  return out;
}

BitString read_advice(const std::string& path) {
  std::string text = read_file(path);
  std::string bits;
  for (char ch : text) {
    if (ch == '0' || ch == '1') bits.push_back(ch);
    else if (!std::isspace(static_cast<unsigned char>(ch)))
      throw HarnessError("advice file must contain only 0/1 characters");
  }
  return BitString::from_ascii(bits);
}

struct FamilyOptions {
  std::string family = "ring";
  std::uint32_t n = 8;
  std::uint32_t half = 2;
  std::uint32_t m = 4;
  std::uint32_t p = 1;
  double density = 0.3;
  std::uint64_t seed = 1;
};

void add_family_flags(CLI::App& cmd, FamilyOptions& f) {
  cmd.add_option("--family", f.family,
                 "ring | bipartite | random | gadget-ring | gadget-ring-subset"
                 " | pendant | paired-pendant | triangle");
  cmd.add_option("--n", f.n, "node count for ring/random/pendant families");
  cmd.add_option("--half", f.half, "bipartite half size");
  cmd.add_option("--m", f.m, "crossing base size for gadget families");
  cmd.add_option("--p", f.p, "attached gadget count for gadget-ring-subset");
  cmd.add_option("--density", f.density, "random family edge density");
  cmd.add_option("--seed", f.seed, "seed for random edges and pendant ports");
}

void run_gen(const FamilyOptions& f, const std::string& out,
             const std::string& roles_out, const std::string& cycle_out) {
  std::optional<GadgetGraph> gadget;
  std::vector<NodeId> cycle;
  PortGraph g;
  if (f.family == "ring") {
    g = gen_oriented_ring(f.n);
    cycle.resize(f.n);
    std::iota(cycle.begin(), cycle.end(), 0);
  } else if (f.family == "bipartite") {
    const BipartiteGraph b = gen_complete_bipartite(f.half);
    g = b.graph;
    cycle = b.hamiltonian_order;
  } else if (f.family == "random") {
    g = gen_random_connected(f.n, f.density, f.seed);
  } else if (f.family == "gadget-ring") {
    const CrossingBase base = make_crossing_base(f.m);
    gadget = build_gadget_ring(
        base, std::vector<CrossingVector>(f.m, CrossingVector::unit(base.s)));
    g = gadget->graph;
  } else if (f.family == "gadget-ring-subset") {
    const CrossingBase base = make_crossing_base(f.m);
    std::vector<std::uint32_t> positions(f.p);
    std::iota(positions.begin(), positions.end(), 0);
    gadget = build_gadget_ring_subset(
        base, positions,
        std::vector<CrossingVector>(f.m, CrossingVector::unit(base.s)));
    g = gadget->graph;
  } else if (f.family == "pendant" || f.family == "paired-pendant") {
    if (f.n < 8 || f.n % 4 != 0)
      throw HarnessError("pendant families need n divisible by 4, at least 8");
    const std::uint32_t m = f.n / 2;
    const BipartiteGraph b = gen_complete_bipartite(m / 2);
    std::vector<NodeId> perm(m);
    for (std::uint32_t t = 0; t < m; ++t) perm[b.hamiltonian_order[t]] = t;
    const PortGraph base = b.graph.relabeled(perm);
    std::mt19937_64 rng(f.seed);
    std::vector<Port> x(m);
    for (Port& xi : x)
      xi = std::uniform_int_distribution<Port>(0, m / 2 - 1)(rng);
    if (f.family == "pendant") {
      g = build_pendant_graph(base, x);
    } else {
      g = build_paired_pendant_graph(base, x);
      cycle = paired_pendant_cycle(m);
    }
  } else if (f.family == "triangle") {
    const CrossingBase base = make_crossing_base(f.m);
    const std::vector<CrossingVector> xmap(f.m, CrossingVector::unit(base.s));
    g = build_triangle_expansion(build_gadget_ring(base, xmap).graph);
    cycle = hamiltonian_cycle_from_tree(g, gadget_ring_spanning_tree(base, xmap));
  } else {
    throw HarnessError("unknown family " + f.family);
  }
  write_output(out, serialize_graph(g));
  if (!roles_out.empty()) {
    if (!gadget) throw HarnessError("family " + f.family + " has no role file");
    write_output(roles_out, serialize_roles(*gadget));
  }
  if (!cycle_out.empty()) {
    if (cycle.empty())
      throw HarnessError("family " + f.family + " has no known hamiltonian cycle");
    std::ostringstream os;
    for (std::size_t i = 0; i < cycle.size(); ++i)
      os << cycle[i] << (i + 1 == cycle.size() ? "\n" : " ");
    write_output(cycle_out, os.str());
  }
}

void run_advise(const std::string& graph_path, const std::string& oracle,
                const std::string& algo, const std::string& start,
                const std::string& cycle_path, int c, const std::string& out) {
  const PortGraph g = parse_graph(read_file(graph_path));
  BitString advice;
  if (algo == "tree") {
    const NodeId root = oracle == "instance"
                            ? static_cast<NodeId>(std::stoul(start))
                            : 0;
    if (root >= g.node_count()) throw HarnessError("start out of range");
    advice = encode_spanning_tree(g, dfs_spanning_tree(g, root), root,
                                  oracle == "instance")
                 .wire();
  } else if (algo == "ham") {
    if (cycle_path.empty())
      throw HarnessError("hamiltonian advice needs --cycle FILE");
    const std::vector<std::uint32_t> cycle = parse_uints(read_file(cycle_path));
    advice = encode_hamiltonian_advice(
                 g, std::vector<NodeId>(cycle.begin(), cycle.end()),
                 static_cast<NodeId>(std::stoul(start)))
                 .wire();
  } else if (algo == "poly") {
    advice = encode_size_advice(g.node_count(), SizeAdviceParams{c});
  } else {
    throw HarnessError("algo must be tree, ham, or poly");
  }
  write_output(out, advice.to_ascii() + "\n");
}

void run_explore(const std::string& graph_path, const std::string& advice_path,
                 const std::string& oracle, const std::string& algo,
                 const std::string& start, std::uint64_t budget, int c,
                 std::uint32_t cap, const std::string& cache,
                 const std::string& out) {
  const PortGraph g = parse_graph(read_file(graph_path));
  const BitString advice = read_advice(advice_path);
  std::vector<NodeId> starts;
  if (start == "all") {
    starts.resize(g.node_count());
    std::iota(starts.begin(), starts.end(), 0);
  } else {
    const NodeId v = static_cast<NodeId>(std::stoul(start));
    if (v >= g.node_count()) throw HarnessError("start out of range");
    starts = {v};
  }
  std::vector<ReportRow> rows;
  for (const NodeId s0 : starts) {
    std::unique_ptr<Strategy> strategy;
    ReportRow row;
    row.family = "file";
    row.n = g.node_count();
    row.start = s0;
    row.advice_bits = advice.size();
    if (algo == "tree" && oracle == "instance") {
      strategy = std::make_unique<InstanceTreeExplorer>(advice);
      row.bound_checked = "2n-2";
      row.bound_value = 2ull * g.node_count() - 2;
    } else if (algo == "tree") {
      strategy = std::make_unique<MapTreeExplorer>(advice);
      row.bound_checked = "8n(n-1)";
      row.bound_value = 8ull * g.node_count() * (g.node_count() - 1);
    } else if (algo == "ham") {
      strategy = std::make_unique<HamiltonianExplorer>(advice);
      row.bound_checked = "n-1";
      row.bound_value = g.node_count() - 1;
    } else if (algo == "poly") {
      strategy = std::make_unique<PolyExplorer>(advice, SizeAdviceParams{c},
                                                cache, cap);
    } else {
      throw HarnessError("algo must be tree, ham, or poly");
    }
    const ExplorationOutcome o = run_strategy(g, s0, *strategy, budget);
    row.steps_used = o.steps_used;
    row.completed = o.completed;
    rows.push_back(std::move(row));
  }
  write_output(out, format_report(rows));
}

void run_adversary(std::uint32_t m, std::uint32_t blocks, std::uint32_t max_walk,
                   std::uint64_t seed, bool distinct,
                   const std::string& script_path, const std::string& out,
                   const std::string& roles_out) {
  const CrossingBase base = make_crossing_base(m);
  PortSequence u;
  if (!script_path.empty()) {
    u = parse_uints(read_file(script_path));
  } else {
    u = gen_feasible_sequence(base, blocks, max_walk, seed, distinct);
  }
  std::ostringstream report;
  report << "script";
  for (const Port p : u) report << ' ' << p;
  report << '\n';
  const auto w = adversary_witness(u, base);
  if (!w) {
    report << "none\n";
    std::cout << report.str();
    return;
  }
  report << "start " << w->start << "\nunvisited " << w->unvisited << '\n';
  for (std::uint32_t i = 0; i < m; ++i) {
    report << "x " << i << ' ';
    for (std::uint32_t k = 0; k < base.s; ++k)
      report << (w->xmap[i].test(k) ? '1' : '0');
    report << '\n';
  }
  std::cout << report.str();
  if (!out.empty()) write_output(out, serialize_graph(w->graph.graph));
  if (!roles_out.empty()) write_output(roles_out, serialize_roles(w->graph));
}

void run_collide(const std::string& out) {
  const RingPigeonholeDemo demo = run_ring_pigeonhole_demo();
  std::ostringstream report;
  report << "sizes";
  for (const std::uint32_t n : demo.sizes) report << ' ' << n;
  report << "\nadvice";
  for (const BitString& b : demo.advice) report << ' ' << b.to_ascii();
  report << "\ncollision " << demo.collision.first << ' '
         << demo.collision.second << "\nreplay_steps " << demo.replay_steps
         << "\ncompleted_on_" << demo.small_n << ' '
         << (demo.small_completed ? 1 : 0) << "\ncompleted_on_" << demo.large_n
         << ' ' << (demo.large_completed ? 1 : 0) << '\n';
  write_output(out, report.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"port-numbered graph exploration with advice"};
  app.require_subcommand(1);

  FamilyOptions gen_family;
  std::string gen_out, gen_roles, gen_cycle;
  CLI::App* gen = app.add_subcommand("gen", "generate a graph family member");
  add_family_flags(*gen, gen_family);
  gen->add_option("--out", gen_out, "graph file (default stdout)");
  gen->add_option("--roles", gen_roles, "role sidecar file for gadget families");
  gen->add_option("--cycle", gen_cycle,
                  "write the family's hamiltonian cycle to this file");

  std::string adv_graph, adv_oracle = "instance", adv_algo = "tree";
  std::string adv_start = "0", adv_cycle, adv_out;
  int adv_c = 0;
  CLI::App* advise = app.add_subcommand("advise", "produce advice for a graph");
  advise->add_option("--graph", adv_graph, "graph file")->required();
  advise->add_option("--oracle", adv_oracle, "instance | map");
  advise->add_option("--algo", adv_algo, "tree | ham | poly");
  advise->add_option("--start", adv_start, "start node for instance oracles");
  advise->add_option("--cycle", adv_cycle, "hamiltonian cycle file for ham");
  advise->add_option("--c", adv_c, "size codec parameter");
  advise->add_option("--out", adv_out, "advice file (default stdout)");

  std::string ex_graph, ex_advice, ex_oracle = "instance", ex_algo = "tree";
  std::string ex_start = "0", ex_cache, ex_out;
  std::uint64_t ex_budget = kNoBudget;
  int ex_c = 0;
  std::uint32_t ex_cap = kDefaultUxsCap;
  CLI::App* explore = app.add_subcommand("explore", "run an explorer");
  explore->add_option("--graph", ex_graph, "graph file")->required();
  explore->add_option("--advice", ex_advice, "advice file")->required();
  explore->add_option("--oracle", ex_oracle, "instance | map");
  explore->add_option("--algo", ex_algo, "tree | ham | poly");
  explore->add_option("--start", ex_start, "start node index or 'all'");
  explore->add_option("--budget", ex_budget, "step budget");
  explore->add_option("--c", ex_c, "size codec parameter for poly");
  explore->add_option("--cap", ex_cap, "feasibility cap for poly");
  explore->add_option("--cache", ex_cache, "certificate cache directory");
  explore->add_option("--out", ex_out, "report file (default stdout)");

  std::uint32_t ad_m = 4, ad_blocks = 4, ad_walk = 3;
  std::uint64_t ad_seed = 1;
  bool ad_distinct = false;
  std::string ad_script, ad_out, ad_roles;
  CLI::App* adversary =
      app.add_subcommand("adversary", "find a failing start and gadget ring");
  adversary->add_option("--m", ad_m, "crossing base size");
  adversary->add_option("--blocks", ad_blocks, "gadget visits to generate");
  adversary->add_option("--max-walk", ad_walk, "walk length bound per gadget");
  adversary->add_option("--seed", ad_seed, "script generator seed");
  adversary->add_flag("--distinct", ad_distinct, "one visit per gadget");
  adversary->add_option("--script", ad_script, "replay a port script file");
  adversary->add_option("--out", ad_out, "witness graph file");
  adversary->add_option("--roles", ad_roles, "witness role sidecar file");

  std::string col_out;
  CLI::App* collide =
      app.add_subcommand("collide", "pigeonhole collision demonstration");
  collide->add_option("--out", col_out, "report file (default stdout)");

  ExperimentSpec spec;
  std::string exp_out;
  CLI::App* experiment = app.add_subcommand("experiment", "run a family end to end and report");
  experiment->add_option("--family", spec.family, "graph family");
  experiment->add_option("--n", spec.n, "node count parameter");
  experiment->add_option("--half", spec.half, "bipartite half size");
  experiment->add_option("--m", spec.m, "crossing base size");
  experiment->add_option("--p", spec.p, "attached gadget count");
  experiment->add_option("--density", spec.density, "random edge density");
  experiment->add_option("--seed", spec.seed, "family seed");
  experiment->add_option("--oracle", spec.oracle, "instance | map");
  experiment->add_option("--algo", spec.algo, "tree | ham | poly");
  experiment->add_option("--start", spec.start, "node index, 'all', or 'cycle'");
  experiment->add_option("--budget", spec.budget, "step budget");
  experiment->add_option("--c", spec.size_param, "size codec parameter");
  experiment->add_option("--cap", spec.uxs_cap, "feasibility cap for poly");
  experiment->add_option("--cache", spec.cache_dir, "certificate cache dir");
  experiment->add_option("--out", exp_out, "report file (default stdout)");

  try {
    app.parse(argc, argv);
    if (*gen) run_gen(gen_family, gen_out, gen_roles, gen_cycle);
    if (*advise)
      run_advise(adv_graph, adv_oracle, adv_algo, adv_start, adv_cycle, adv_c,
                 adv_out);
    if (*explore)
      run_explore(ex_graph, ex_advice, ex_oracle, ex_algo, ex_start, ex_budget,
                  ex_c, ex_cap, ex_cache, ex_out);
    if (*adversary)
      run_adversary(ad_m, ad_blocks, ad_walk, ad_seed, ad_distinct, ad_script,
                    ad_out, ad_roles);
    if (*collide) run_collide(col_out);
    if (*experiment) {
      const std::vector<ReportRow> rows = run_experiment(spec);
      if (exp_out.empty())
        std::cout << format_report(rows);
      else
        emit_report(rows, exp_out);
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::logic_error& e) {
    std::cerr << "assertion failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
