#include "doctest.h"

#include <algorithm>

#include "brute.hpp"
#include "wc/analysis.hpp"
#include "wc/baselines.hpp"
#include "wc/oracle.hpp"
#include "wc/registry.hpp"

using namespace wc;

namespace {

// Plain minimax over explicit offer subsets, no memo, no pruning. Returns the
// largest Client component order at the end.
int naive_comp(Vertex n, std::uint64_t q, std::uint32_t free, std::uint32_t client) {
  const int m = n * (n - 1) / 2;
  const int nfree = __builtin_popcount(free);
  if (nfree < static_cast<int>(q) + 1) {
    std::vector<Edge> e;
    for (int x = 0; x < m; ++x)
      if (client >> x & 1) {
        auto [u, v] = Board::pair_of(x);
        e.push_back({u, v});
      }
    return static_cast<int>(component_profile(SimpleGraph::from_edges(n, e)).largest());
  }
  int best = -1;
  // Offers: subsets of free of size q+1, enumerated by Gosper's hack over the
  // free positions.
  std::vector<int> pos;
  for (int x = 0; x < m; ++x)
    if (free >> x & 1) pos.push_back(x);
  const int k = static_cast<int>(q) + 1;
  for (std::uint32_t sel = (1u << k) - 1; sel < (1u << nfree);) {
    std::uint32_t offer = 0;
    for (int i = 0; i < nfree; ++i)
      if (sel >> i & 1) offer |= 1u << pos[i];
    int worst = 1 << 20;
    for (int i = 0; i < nfree; ++i)
      if (sel >> i & 1)
        worst = std::min(worst, naive_comp(n, q, free & ~offer, client | 1u << pos[i]));
    best = std::max(best, worst);
    const std::uint32_t c = sel & -sel, r = sel + c;
    sel = (((r ^ sel) >> 2) / c) | r;
  }
  return best;
}

int naive_comp(Vertex n, std::uint64_t q) {
  const int m = n * (n - 1) / 2;
  return naive_comp(n, q, (1u << m) - 1, 0);
}

}  // namespace

TEST_CASE("connectivity threshold on K_4 and K_5") {
  for (auto [n, q] : {std::pair{4u, 1ull}, {4u, 2ull}, {4u, 3ull}, {5u, 1ull}, {5u, 2ull}}) {
    auto r = solve_game_exact(Board::complete(n), q, objective_connectivity());
    CHECK(r.waiter_wins == (q + 1 <= n / 2));
    auto again = replay(r.principal_variation);
    REQUIRE(again.has_value());
    CHECK(objective_connectivity()(*again) == r.value);
  }
}

TEST_CASE("comp values against a plain minimax") {
  CHECK(game_value_comp(4, 1) == 4);
  CHECK(game_value_comp(4, 3) == 2);
  for (std::uint64_t q = 1; q <= 3; ++q) CHECK(game_value_comp(4, q) == naive_comp(4, q));
  CHECK(game_value_comp(5, 2) >= 4);
}

TEST_CASE("memo, symmetry and parallel search agree") {
  for (auto [n, q] : {std::pair{4u, 1ull}, {4u, 2ull}, {5u, 2ull}}) {
    for (const char* name : {"connectivity", "largest_component", "min_degree"}) {
      const auto obj = objective_by_name(name);
      const auto base = solve_game_exact(Board::complete(n), q, obj).value;
      CHECK(solve_game_exact(Board::complete(n), q, obj, {.memo = false}).value == base);
      CHECK(solve_game_exact(Board::complete(n), q, obj, {.symmetry = true}).value == base);
      CHECK(solve_game_exact(Board::complete(n), q, obj, {.parallel = true}).value == base);
    }
  }
}

TEST_CASE("values are antitone in q") {
  for (Vertex n = 4; n <= 5; ++n) {
    std::int64_t prev = 1 << 20;
    for (std::uint64_t q = 1; q <= 2; ++q) {
      const auto v = game_value_comp(n, q);
      CHECK(v <= prev);
      prev = v;
    }
  }
}

TEST_CASE("budgets are enforced") {
  CHECK_THROWS_AS(solve_game_exact(Board::complete(6), 1, objective_connectivity()), BudgetExceeded);
  CHECK_THROWS_AS(
      solve_game_exact(Board::complete(5), 1, objective_connectivity(), {.node_budget = 10}),
      BudgetExceeded);
}

TEST_CASE("exhaustive verification of constructive strategies") {
  auto conn = verify_waiter_strategy_exhaustive(
      [] { return make_waiter("connectivity", {.n = 4, .q = 1}); }, Board::complete(4), 1,
      objective_connectivity(), 1);
  CHECK(conn.holds);
  CHECK(conn.leaves == 8);

  auto big = verify_waiter_strategy_exhaustive(
      [] { return make_waiter("big_component", {.n = 6, .q = 2}); }, Board::complete(6), 2,
      objective_component_at_least(6), 1);
  CHECK(big.holds);
}

TEST_CASE("a random Waiter is refuted with a counterexample") {
  auto r = verify_waiter_strategy_exhaustive([] { return waiter_random(3); }, Board::complete(4), 1,
                                             objective_connectivity(), 1);
  CHECK_FALSE(r.holds);
  REQUIRE(r.counterexample.has_value());
  auto end = replay(*r.counterexample);
  REQUIRE(end.has_value());
  CHECK(objective_connectivity()(*end) == 0);
}

TEST_CASE("oracle wins imply strategy wins") {
  for (auto [n, q] : {std::pair{4u, 1ull}, {5u, 1ull}}) {
    if (!solve_game_exact(Board::complete(n), q, objective_connectivity()).waiter_wins) continue;
    auto v = verify_waiter_strategy_exhaustive(
        [n = n, q = q] { return make_waiter("connectivity", {.n = n, .q = q}); },
        Board::complete(n), q, objective_connectivity(), 1);
    CHECK(v.holds);
  }
}
