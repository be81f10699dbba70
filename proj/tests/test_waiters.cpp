#include "doctest.h"

#include <algorithm>

#include "brute.hpp"
#include "wc/analysis.hpp"
#include "wc/baselines.hpp"
#include "wc/client.hpp"
#include "wc/registry.hpp"
#include "wc/waiters.hpp"

using namespace wc;

namespace {

std::vector<std::unique_ptr<ClientStrategy>> adversaries(std::uint64_t seed) {
  std::vector<std::unique_ptr<ClientStrategy>> out;
  out.push_back(client_random(seed));
  out.push_back(client_greedy_min_degree());
  out.push_back(client_component_potential());
  out.push_back(client_arbitrary());
  return out;
}

}  // namespace

TEST_CASE("big component: target, round count and component order") {
  for (Vertex n = 4; n <= 24; ++n)
    for (std::uint64_t q = 1; q + 3 <= n; ++q)
      for (auto& c : adversaries(n * 31 + q)) {
        BigComponentWaiter w(iota_vertices(n), q);
        auto r = play_game(GameState(Board::complete(n), q), w, *c);
        REQUIRE_FALSE(r.forfeited());
        const std::size_t want = std::min<std::size_t>(n, 2 * (n - q - 1));
        CHECK(w.target() >= want);
        CHECK(w.all_stages_ok());
        CHECK(w.goal_reached());
        CHECK(component_profile(SimpleGraph::client_graph(r.state)).largest() >= want);
        if (!w.trivial()) {
          CHECK(w.goal_round() - w.first_round() == w.expected_rounds());
        }
      }
}

TEST_CASE("connectivity rejects q above floor(n/2)-1") {
  CHECK_FALSE(waiter_preflight("connectivity", {.n = 4, .q = 2}).feasible);
  CHECK_THROWS_AS(make_waiter("connectivity", {.n = 4, .q = 2}), SpecError);
  CHECK(waiter_preflight("connectivity", {.n = 4, .q = 1}).feasible);
  CHECK_THROWS_AS(make_waiter("no_such_strategy", {.n = 4, .q = 1}), SpecError);
}

TEST_CASE("connectivity on K_n for n up to 30") {
  for (Vertex n = 4; n <= 30; n += 2)
    for (std::uint64_t q : {std::uint64_t{1}, std::uint64_t{n / 2 - 1}})
      for (auto& c : adversaries(n + q)) {
        auto w = make_waiter("connectivity", {.n = n, .q = q});
        auto r = play_game(GameState(Board::complete(n), q), *w, *c);
        REQUIRE_FALSE(r.forfeited());
        CHECK(component_profile(SimpleGraph::client_graph(r.state)).connected);
      }
}

TEST_CASE("k-connectivity on small boards, checked by separators") {
  for (auto [n, q, k] : {std::tuple{12u, 1ull, 2u}, {16u, 1ull, 2u}, {18u, 1ull, 3u}}) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      auto w = make_waiter("k_connected", {.n = n, .q = q, .k = k});
      auto c = client_random(seed);
      auto r = play_game(GameState(Board::complete(n), q), *w, *c);
      REQUIRE_FALSE(r.forfeited());
      auto g = SimpleGraph::client_graph(r.state);
      CHECK(brute::k_connected(g, k));
      auto* kw = dynamic_cast<KConnectedWaiter*>(w.get());
      REQUIRE(kw);
      CHECK(kw->report().k_connected);
    }
  }
}

TEST_CASE("path doubling on a small board") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    PathDoublingWaiter w(2000, 2000);
    auto c = client_random(seed);
    auto r = play_game(GameState(Board::complete(2000), 2000), w, *c, {.stop_at_goal = true});
    REQUIRE_FALSE(r.forfeited());
    REQUIRE_FALSE(w.levels().empty());
    for (const auto& p : w.paths()) CHECK(is_path(SimpleGraph::client_graph(r.state), p));
  }
  CHECK(PathDoublingWaiter::t_star(100000, 100000) == 1);
}

TEST_CASE("long cycle: the certificate is a real Client cycle") {
  const Vertex n = 3000;
  const std::uint64_t eta = 2900, q = n - eta;
  LongCycleWaiter w(n, q, eta);
  auto c = client_random(1);
  auto r = play_game(GameState(Board::complete(n), q), w, *c, {.stop_at_goal = true});
  REQUIRE_FALSE(r.forfeited());
  REQUIRE_FALSE(w.certificates().empty());
  std::string why;
  CHECK_MESSAGE(certificates_hold(SimpleGraph::client_graph(r.state), w.certificates(), &why), why);
  std::size_t longest = 0;
  for (const auto& cert : w.certificates()) longest = std::max(longest, cert.cycle.size());
  CHECK(6 * longest >= eta);
}

TEST_CASE("long cycle with eta = n-1, q = 1 builds a long path first") {
  const Vertex n = 400;
  LongCycleWaiter w(n, 1, n - 1);
  auto c = client_random(5);
  auto r = play_game(GameState(Board::complete(n), 1), w, *c);
  REQUIRE_FALSE(r.forfeited());
  CHECK(w.path().size() >= (n - 1 + 1) / 2);
  CHECK(is_path(SimpleGraph::client_graph(r.state), w.path()));
}

TEST_CASE("registry names build") {
  for (const auto& name : waiter_names()) {
    StrategyParams p{.n = 40, .q = 1};
    if (!waiter_preflight(name, p).feasible) continue;
    CHECK_NOTHROW(make_waiter(name, p));
  }
  for (const auto& name : client_names()) CHECK_NOTHROW(make_client(name, {.n = 7, .q = 8}));
}

TEST_CASE("baseline Waiters play legal games") {
  for (auto* make : {+[] { return waiter_cycle_hunter(); }, +[] { return waiter_star(); },
                     +[] { return waiter_arbitrary(); }}) {
    auto w = make();
    auto c = client_random(3);
    auto r = play_game(GameState(Board::complete(11), 2), *w, *c);
    CHECK_FALSE(r.forfeited());
    CHECK(r.state.terminal());
  }
}
