#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "brute.hpp"
#include "wc/analysis.hpp"
#include "wc/baselines.hpp"
#include "wc/client.hpp"
#include "wc/cycle_potential.hpp"
#include "wc/set_family.hpp"

using namespace wc;

namespace {

std::vector<std::unique_ptr<WaiterStrategy>> waiters(std::uint64_t seed) {
  std::vector<std::unique_ptr<WaiterStrategy>> out;
  out.push_back(waiter_random(seed));
  out.push_back(waiter_cycle_hunter());
  out.push_back(waiter_star());
  out.push_back(waiter_arbitrary());
  return out;
}

}  // namespace

TEST_CASE("simple Clients pick offered elements") {
  GameState s(Board::complete(6), 2);
  const Offer o{3, 7, 11};
  CHECK(std::get<Elem>(client_arbitrary()->choose(s, o)) == 3);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto x = std::get<Elem>(client_random(seed)->choose(s, o));
    CHECK(std::find(o.begin(), o.end(), x) != o.end());
  }
}

TEST_CASE("greedy min-degree Client prefers untouched endpoints") {
  GameState s(Board::complete(6), 1);
  REQUIRE_FALSE(apply_round(s, {Board::pair_id(0, 1), Board::pair_id(2, 3)}, Board::pair_id(0, 1)));
  auto c = client_greedy_min_degree();
  const Offer o{Board::pair_id(0, 4), Board::pair_id(4, 5)};
  CHECK(std::get<Elem>(c->choose(s, o)) == Board::pair_id(4, 5));
}

TEST_CASE("component potential Client prefers edges inside a component") {
  GameState s(Board::complete(6), 1);
  REQUIRE_FALSE(apply_round(s, {Board::pair_id(0, 1), Board::pair_id(3, 4)}, Board::pair_id(0, 1)));
  REQUIRE_FALSE(apply_round(s, {Board::pair_id(1, 2), Board::pair_id(3, 5)}, Board::pair_id(1, 2)));
  auto c = client_component_potential();
  const Offer o{Board::pair_id(0, 2), Board::pair_id(2, 5)};
  CHECK(std::get<Elem>(c->choose(s, o)) == Board::pair_id(0, 2));
}

TEST_CASE("cycle-avoiding Client at q = ceil(1.1 n), n = 20") {
  const Vertex n = 20;
  const std::uint64_t q = 22;
  for (auto& w : waiters(4)) {
    auto c = client_avoid_cycles(n, q, 3);
    auto r = play_game(GameState(Board::complete(n), q), *w, *c);
    CHECK_FALSE(r.forfeited());
    CHECK(cycle_spectrum_exact(SimpleGraph::client_graph(r.state), 20).circumference == 0);
  }
}

TEST_CASE("explicit and implicit cycle potentials make the same choices") {
  const Vertex n = 6;
  const std::uint64_t q = 7;
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    auto a = client_avoid_cycles(n, q, 3, false);
    auto b = client_avoid_cycles(n, q, 3, true);
    auto w = waiter_random(seed);
    GameState s(Board::complete(n), q);
    while (!s.terminal()) {
      auto o = std::get<Offer>(w->offer(s));
      auto x = std::get<Elem>(a->choose(s, o));
      CHECK(x == std::get<Elem>(b->choose(s, o)));
      const std::size_t before = s.history().size();
      REQUIRE_FALSE(apply_round(s, o, x));
      for (std::size_t i = before; i < s.history().size(); ++i) {
        a->observe(s, s.history()[i]);
        b->observe(s, s.history()[i]);
      }
    }
  }
}

TEST_CASE("big-component audit on small boards") {
  const Vertex n = 8;
  const std::uint64_t q = 10;
  const auto f = build_path_tuple_family(n, 1);
  for (auto& w : waiters(9)) {
    auto c = client_avoid_big_component(n, q, 1);
    auto r = play_game(GameState(Board::complete(n), q), *w, *c);
    auto a = audit_big_component(f, q, 1, r.state);
    CHECK(a.ok());
    CHECK(a.largest == component_profile(SimpleGraph::client_graph(r.state)).largest());
  }
}

TEST_CASE("min-degree Client at n=200, q=98") {
  const Vertex n = 200;
  const std::uint64_t q = 98;
  for (auto& w : waiters(2)) {
    auto c = client_min_degree(n, q);
    REQUIRE(c->guaranteed());
    auto r = play_game(GameState(Board::complete(n), q), *w, *c);
    REQUIRE_FALSE(r.forfeited());
    auto g = SimpleGraph::client_graph(r.state);
    std::size_t low = n;
    for (Vertex v = 0; v < n; ++v) low = std::min(low, g.degree(v));
    CHECK(low <= 1);
    std::string why;
    CHECK_MESSAGE(c->check(r.state, &why), why);
    if (!c->boundary()) {
      // Stage I never ended, so most vertices stayed isolated.
      CHECK(low == 0);
      continue;
    }
    const auto& b = *c->boundary();
    CHECK(b.k_ok);
    CHECK(b.average_ok);
    CHECK(g.degree(b.x) <= 1);
    // Recompute the boundary bound independently.
    const long double bound = static_cast<long double>(b.k) * (q - b.k + 2) / (2.0L * (n - b.k));
    CHECK(b.bound == doctest::Approx(static_cast<double>(bound)));
    CHECK(b.average + 1e-12 >= b.bound);
  }
}
