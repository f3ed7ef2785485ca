#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pgx/adversary.hpp"
#include "pgx/agent.hpp"
#include "pgx/explorers.hpp"
#include "pgx/port_graph.hpp"

namespace pgx {

struct HarnessError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One experiment: build a graph family member, produce advice for the chosen
// oracle, run the explorer from each requested start, report rows.
struct ExperimentSpec {
  std::string family = "ring";  // ring | bipartite | random | gadget-ring |
                                // gadget-ring-subset | pendant |
                                // paired-pendant | triangle
  std::uint32_t n = 8;          // ring / random / pendant base node count
  std::uint32_t half = 2;       // bipartite half size
  std::uint32_t m = 4;          // crossing base size for gadget families
  std::uint32_t p = 1;          // attached gadget count for gadget-ring-subset
  double density = 0.3;         // random family edge density
  std::uint64_t seed = 1;       // random family and pendant port choices
  std::string oracle = "instance";  // instance | map
  std::string algo = "tree";        // tree | ham | poly
  std::string start = "0";          // node index | all | cycle
  std::uint64_t budget = kNoBudget;
  int size_param = 0;               // codec parameter c when algo is poly
  std::uint32_t uxs_cap = kDefaultUxsCap;
  std::string cache_dir;            // reuse certified sequences across runs
};

struct ReportRow {
  std::string family;
  std::uint32_t n = 0;
  std::uint32_t start = 0;
  std::uint64_t advice_bits = 0;
  std::uint64_t steps_used = 0;
  bool completed = false;
  std::string bound_checked = "none";
  std::uint64_t bound_value = 0;
};

// Deterministic: an ExperimentSpec fixes every output byte.
std::vector<ReportRow> run_experiment(const ExperimentSpec& spec);

// First pair (i, j), i < j, with identical advice strings; scan order is
// i ascending then j ascending.
std::optional<std::pair<std::size_t, std::size_t>> find_advice_collision(
    const std::vector<BitString>& advice);

std::string format_report(const std::vector<ReportRow>& rows);
void emit_report(const std::vector<ReportRow>& rows, const std::string& path);

// Built-in pigeonhole demonstration: five oriented rings of distinct sizes
// share a 2-bit advice function (n mod 4), so two of them collide; the replay
// walks port 0 for as many steps as the smallest ring consistent with the
// advice needs, which completes there and falls short on the larger ring.
struct RingPigeonholeDemo {
  std::vector<std::uint32_t> sizes;
  std::vector<BitString> advice;
  std::pair<std::size_t, std::size_t> collision;
  std::uint32_t small_n = 0;
  std::uint32_t large_n = 0;
  std::uint64_t replay_steps = 0;
  bool small_completed = false;
  bool large_completed = false;
};

RingPigeonholeDemo run_ring_pigeonhole_demo();

}  // namespace pgx
