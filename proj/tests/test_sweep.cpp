#include "doctest.h"

#include "wc/report.hpp"
#include "wc/sweep.hpp"

using namespace wc;

TEST_CASE("q ranges") {
  CHECK(q_range(3, 9, 3) == std::vector<std::uint64_t>{3, 6, 9});
  CHECK(q_range(5, 4).empty());
}

TEST_CASE("sweeps are deterministic and independent of scheduling") {
  ExperimentSpec spec;
  spec.ns = {10, 14};
  spec.qs = q_range(2, 6, 2);
  spec.trials = 3;
  spec.seed = 7;
  spec.parallel = false;
  const auto a = run_sweep(spec);
  spec.parallel = true;
  const auto b = run_sweep(spec);
  CHECK(sweep_csv(a) == sweep_csv(b));
  CHECK(sweep_json(a) == sweep_json(b));
  CHECK(a.rows.size() == 2 * 3 * 3);
  for (const auto& row : a.rows) {
    CHECK(row.status == "ok");
    CHECK(row.largest_component >= std::min<std::size_t>(row.n, 2 * (row.n - row.q - 1)));
    CHECK(row.seed == trial_seed(7, row.n, row.q, row.trial));
  }
  CHECK(a.summary.size() == 6);
}

TEST_CASE("an empty q range yields no rows") {
  ExperimentSpec spec;
  spec.ns = {10};
  spec.qs = q_range(8, 2);
  CHECK(run_sweep(spec).rows.empty());
}

TEST_CASE("rejected parameters are reported per row, unknown names throw") {
  ExperimentSpec spec;
  spec.ns = {8};
  spec.qs = {5};
  spec.waiter = "connectivity";
  const auto r = run_sweep(spec);
  REQUIRE(r.rows.size() == 1);
  CHECK(r.rows[0].status == "rejected");
  spec.waiter = "nobody";
  CHECK_THROWS_AS(run_sweep(spec), SpecError);
}

TEST_CASE("end-of-game report") {
  GameState s(Board::complete(5), 1);
  REQUIRE_FALSE(apply_round(s, {0, 1}, 0));
  REQUIRE_FALSE(apply_round(s, {2, 3}, 2));
  auto r = analyze_state(s);
  CHECK(r.largest_component == 3);
  CHECK_FALSE(r.connected);
  CHECK(r.min_degree == 0);
  CHECK(r.cycles_exact);
  CHECK(*r.circumference == 0);
  auto j = report_to_json(r);
  CHECK(j["components"] == Json::array({3, 1, 1}));
  CHECK(report_text(r).find("largest component 3") != std::string::npos);
}
