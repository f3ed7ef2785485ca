#include <unistd.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "pgx/harness.hpp"

using namespace pgx;

TEST_CASE("ring experiment reports the doubled tree walk") {
  ExperimentSpec spec;
  const std::vector<ReportRow> rows = run_experiment(spec);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].family == "ring");
  CHECK(rows[0].n == 8);
  CHECK(rows[0].start == 0);
  CHECK(rows[0].steps_used == 14);
  CHECK(rows[0].completed);
  CHECK(rows[0].bound_checked == "2n-2");
  CHECK(rows[0].bound_value == 14);
  CHECK(rows[0].advice_bits > 32);
}

TEST_CASE("gadget ring experiment succeeds from every cycle start") {
  ExperimentSpec spec;
  spec.family = "gadget-ring";
  spec.m = 4;
  spec.oracle = "map";
  spec.start = "cycle";
  const std::vector<ReportRow> rows = run_experiment(spec);
  REQUIRE(rows.size() == 4);
  for (const ReportRow& r : rows) {
    CHECK(r.n == 36);
    CHECK(r.completed);
    CHECK(r.bound_checked == "8n(n-1)");
    CHECK(r.steps_used <= r.bound_value);
  }
}

TEST_CASE("bipartite cycle advice costs one move per node") {
  ExperimentSpec spec;
  spec.family = "bipartite";
  spec.half = 3;
  spec.algo = "ham";
  spec.start = "all";
  const std::vector<ReportRow> rows = run_experiment(spec);
  REQUIRE(rows.size() == 6);
  for (const ReportRow& r : rows) {
    CHECK(r.steps_used == 5);
    CHECK(r.completed);
    CHECK(r.bound_checked == "n-1");
  }
}

TEST_CASE("offset walker experiment covers a tiny ring") {
  ExperimentSpec spec;
  spec.n = 3;
  spec.algo = "poly";
  spec.size_param = -1;
  const std::vector<ReportRow> rows = run_experiment(spec);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].completed);
  CHECK(rows[0].advice_bits == 1);
  CHECK(rows[0].bound_checked == "none");
}

TEST_CASE("experiments are reproducible byte for byte") {
  ExperimentSpec spec;
  spec.family = "random";
  spec.n = 12;
  spec.density = 0.4;
  spec.seed = 5;
  spec.start = "all";
  CHECK(format_report(run_experiment(spec)) == format_report(run_experiment(spec)));
}

TEST_CASE("bad experiment parameters are rejected") {
  ExperimentSpec spec;
  spec.family = "moebius";
  CHECK_THROWS_AS(run_experiment(spec), HarnessError);

  ExperimentSpec cyc;
  cyc.start = "cycle";
  CHECK_THROWS_AS(run_experiment(cyc), HarnessError);

  ExperimentSpec oracle;
  oracle.oracle = "psychic";
  CHECK_THROWS_AS(run_experiment(oracle), HarnessError);

  ExperimentSpec mapham;
  mapham.family = "bipartite";
  mapham.oracle = "map";
  mapham.algo = "ham";
  CHECK_THROWS_AS(run_experiment(mapham), HarnessError);

  ExperimentSpec hamrand;
  hamrand.family = "random";
  hamrand.algo = "ham";
  CHECK_THROWS_AS(run_experiment(hamrand), HarnessError);
}

TEST_CASE("advice collisions are found in scan order") {
  auto bits = [](const char* s) { return BitString::from_ascii(s); };
  CHECK(find_advice_collision({bits("01"), bits("10"), bits("11"), bits("00"),
                               bits("01")}) == std::pair<std::size_t, std::size_t>{0, 4});
  CHECK(!find_advice_collision({bits("0"), bits("1"), bits("01")}).has_value());
  CHECK(find_advice_collision({bits(""), bits(""), bits("")}) ==
        std::pair<std::size_t, std::size_t>{0, 1});

  // the size codec cannot separate neighbors: both spell the same advice
  const BitString a = encode_size_advice(65536, {0});
  const BitString b = encode_size_advice(65537, {0});
  CHECK(a.to_ascii() == "10");
  CHECK(find_advice_collision({a, b}) == std::pair<std::size_t, std::size_t>{0, 1});
}

TEST_CASE("report format is one line per row plus a header") {
  CHECK(format_report({}) ==
        "family,n,start,advice_bits,steps_used,completed,bound_checked,bound_value\n");
  ExperimentSpec spec;
  spec.start = "all";
  spec.n = 4;
  const std::vector<ReportRow> rows = run_experiment(spec);
  REQUIRE(rows.size() == 4);
  const std::string text = format_report(rows);
  CHECK(std::count(text.begin(), text.end(), '\n') == 5);
  CHECK(text.find("ring,4,0,") != std::string::npos);
  CHECK(text.find(",1,2n-2,") != std::string::npos);  // completed flag as 0/1
}

TEST_CASE("report files round trip") {
  const std::filesystem::path path =
      std::filesystem::temp_directory_path() /
      ("pgx_report_" + std::to_string(::getpid()) + ".csv");
  ExperimentSpec spec;
  spec.start = "all";
  const std::vector<ReportRow> rows = run_experiment(spec);
  emit_report(rows, path.string());
  std::ifstream in(path, std::ios::binary);
  std::ostringstream body;
  body << in.rdbuf();
  CHECK(body.str() == format_report(rows));
  std::filesystem::remove(path);

  CHECK_THROWS_AS(emit_report(rows, "/nonexistent_dir_zz/x.csv"), HarnessError);
}

TEST_CASE("pigeonhole demo pits two rings against shared advice") {
  const RingPigeonholeDemo demo = run_ring_pigeonhole_demo();
  CHECK(demo.sizes == std::vector<std::uint32_t>{5, 6, 7, 8, 9});
  CHECK(demo.advice.size() == 5);
  for (const BitString& a : demo.advice) CHECK(a.size() == 2);
  CHECK(demo.collision == std::pair<std::size_t, std::size_t>{0, 4});
  CHECK(demo.small_n == 5);
  CHECK(demo.large_n == 9);
  CHECK(demo.replay_steps == 4);
  CHECK(demo.small_completed);
  CHECK(!demo.large_completed);
}
