#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "brute.hpp"
#include "wc/baselines.hpp"
#include "wc/client.hpp"
#include "wc/cycle_potential.hpp"
#include "wc/set_family.hpp"

using namespace wc;

namespace {

// Cycles of K_n with at least m edges, by DFS from the least vertex with the
// second vertex below the last one.
std::size_t count_cycles(Vertex n, Vertex m) {
  std::size_t total = 0;
  std::function<void(Vertex, Vertex, std::uint32_t, std::vector<Vertex>&)> go =
      [&](Vertex start, Vertex v, std::uint32_t used, std::vector<Vertex>& path) {
        if (path.size() >= std::max<Vertex>(m, 3) && path[1] < path.back()) ++total;
        for (Vertex w = start + 1; w < n; ++w)
          if (!(used >> w & 1)) {
            path.push_back(w);
            go(start, w, used | 1u << w, path);
            path.pop_back();
          }
      };
  for (Vertex s = 0; s < n; ++s) {
    std::vector<Vertex> path{s};
    go(s, s, 1u << s, path);
  }
  return total;
}

long double brute_phi(const SetFamily& f, std::uint64_t q, const GameState& s) {
  long double phi = 0;
  for (const auto& a : f.sets()) {
    bool dead = false;
    std::size_t open = 0;
    for (Elem x : a) {
      if (s.owner(x) == Owner::Waiter) dead = true;
      if (s.owner(x) != Owner::Client) ++open;
    }
    if (!dead) phi += std::pow(static_cast<long double>(q + 1), -static_cast<long double>(open));
  }
  return phi;
}

}  // namespace

TEST_CASE("cycle family sizes") {
  CHECK(build_cycle_family(4, 3).size() == 7);
  CHECK(build_cycle_family(5, 3).size() == 37);
  CHECK(build_cycle_family(4, 4).size() == 3);
  for (Vertex n = 3; n <= 8; ++n)
    for (Vertex m = 3; m <= n; ++m) {
      const auto want = count_cycles(n, m);
      CHECK(std::llround(cycle_family_size(n, m)) == static_cast<long long>(want));
      if (n <= 7) CHECK(build_cycle_family(n, m).size() == want);
    }
}

TEST_CASE("initial potential of the cycles of K_5 at q=2 is 49/81") {
  auto f = build_cycle_family(5, 3);
  auto p = family_potential_phi(f, 2);
  CHECK(p.phi == doctest::Approx(49.0 / 81));
  REQUIRE(p.phi_num.has_value());
  // 49/81 = 147/243 = 49 * 3^{k-4} / 3^k
  CHECK(*p.phi_num * 81 == 49 * boost::multiprecision::pow(BigInt(3), p.phi_exp));
  CHECK(cycle_family_phi(5, 3, 2) == doctest::Approx(49.0 / 81));
}

TEST_CASE("trivial potentials") {
  SetFamily one({{0, 1, 2}});
  CHECK(family_potential_phi(one, 2).phi == doctest::Approx(1.0 / 27));
  CHECK(family_potential_phi(SetFamily{}, 2).phi == 0);
  const std::uint64_t q = 3;
  std::vector<Elem> s1(2 * q - 1), s2(4 * q - 2);
  std::iota(s1.begin(), s1.end(), 0);
  std::iota(s2.begin(), s2.end(), 0);
  auto p1 = family_potential_psi(SetFamily({s1}), q);
  auto p2 = family_potential_psi(SetFamily({s2}), q);
  CHECK(p1.psi == doctest::Approx(0.5));
  CHECK_FALSE(p1.psi_criterion);
  CHECK(p2.psi == doctest::Approx(0.25));
  CHECK(p2.psi_criterion);
}

TEST_CASE("path tuple family for n=3, r=1 has six entries") {
  auto f = build_path_tuple_family(3, 1);
  CHECK(f.size() == 6);
  CHECK_THROWS(build_path_tuple_family(5, 0));
}

TEST_CASE("path tuple family is a multi-family") {
  auto f = build_path_tuple_family(4, 2);
  std::map<std::vector<Elem>, int> mult;
  for (const auto& a : f.sets()) {
    auto b = a;
    std::sort(b.begin(), b.end());
    ++mult[b];
  }
  CHECK(std::any_of(mult.begin(), mult.end(), [](auto& kv) { return kv.second >= 2; }));
}

TEST_CASE("families survive a text round trip") {
  auto f = build_cycle_family(5, 4);
  std::stringstream ss;
  write_family(ss, f);
  auto g = read_family(ss);
  CHECK(g.sets() == f.sets());
}

TEST_CASE("potential-minimizing Client: Phi never rises and Completed <= Phi0") {
  std::mt19937_64 rng(17);
  for (int game = 0; game < 60; ++game) {
    const Vertex n = 4 + rng() % 3;
    const std::uint64_t q = 1 + rng() % 3;
    auto f = std::make_shared<const SetFamily>(game % 2 ? build_cycle_family(n, 3)
                                                        : build_labeled_path_family(n));
    auto client = client_minimize_potential(f, q);
    auto waiter = game % 3 ? waiter_random(rng()) : waiter_cycle_hunter();
    GameState s(Board::complete(n), q);
    const auto phi0 = family_potential_phi(*f, q, s);
    CHECK(phi0.phi == doctest::Approx(brute_phi(*f, q, s)));
    auto prev = phi0;
    std::vector<SetStatus> seen(f->size(), SetStatus::Alive);
    while (!s.terminal()) {
      auto mv = waiter->offer(s);
      REQUIRE(std::holds_alternative<Offer>(mv));
      Offer o = std::get<Offer>(mv);
      if (o.empty()) {
        for (Elem x = 0; x < s.board().size() && o.size() < s.offer_size(); ++x)
          if (s.owner(x) == Owner::Free) o.push_back(x);
      }
      auto c = client->choose(s, o);
      REQUIRE(std::holds_alternative<Elem>(c));
      const std::size_t before = s.history().size();
      REQUIRE_FALSE(apply_round(s, o, std::get<Elem>(c)));
      for (std::size_t i = before; i < s.history().size(); ++i) client->observe(s, s.history()[i]);
      auto now = family_potential_phi(*f, q, s);
      CHECK(phi_leq(now, prev));
      CHECK(now.phi == doctest::Approx(brute_phi(*f, q, s)));
      for (std::size_t i = 0; i < f->size(); ++i) {
        auto st = f->status(i, s);
        if (seen[i] != SetStatus::Alive) CHECK(st == seen[i]);
        seen[i] = st;
      }
      prev = now;
    }
    CHECK(static_cast<long double>(prev.completed) <= phi0.phi + kPhiTolerance);
  }
}

TEST_CASE("transversal Waiter on disjoint pairs") {
  auto f = std::make_shared<const SetFamily>(SetFamily({{0, 1}, {2, 3}, {4, 5}}));
  auto w = waiter_force_transversal(f, 1);
  auto c = client_random(4);
  auto r = play_game(GameState(Board::abstract(6), 1), *w, *c);
  CHECK_FALSE(r.forfeited());
  CHECK(transversal_hit(*f, r.state));
}

TEST_CASE("implicit cycle potential agrees with the explicit family") {
  std::mt19937_64 rng(2);
  for (int game = 0; game < 10; ++game) {
    const Vertex n = 5 + game % 2;
    const Vertex m = 3 + game % 3;
    const std::uint64_t q = 2;
    auto f = build_cycle_family(n, m);
    CyclePotential cp(n, m, q);
    GameState s(Board::complete(n), q);
    auto w = waiter_random(rng());
    auto c = client_random(rng());
    while (!s.terminal()) {
      CHECK(cp.phi(s) == doctest::Approx(brute_phi(f, q, s)));
      auto o = std::get<Offer>(w->offer(s));
      auto x = std::get<Elem>(c->choose(s, o));
      REQUIRE_FALSE(apply_round(s, o, x));
    }
  }
}

TEST_CASE("cycle-avoiding Client keeps a forest at q = 1.1n") {
  for (Vertex n : {10u, 15u}) {
    const std::uint64_t q = (11 * n + 9) / 10;
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      auto c = client_avoid_cycles(n, q, 3);
      auto w = seed ? waiter_random(seed) : waiter_cycle_hunter();
      auto r = play_game(GameState(Board::complete(n), q), *w, *c);
      CHECK(brute::cycle_lengths(SimpleGraph::client_graph(r.state)).empty());
    }
  }
}

TEST_CASE("transversal Waiter wins whenever the Psi criterion holds") {
  std::mt19937_64 rng(31);
  int played = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const std::uint64_t q = 1 + rng() % 2;
    const Elem e = 20 + rng() % 20;
    SetFamily f;
    const int sets = 1 + rng() % 12;
    for (int i = 0; i < sets; ++i) {
      std::vector<Elem> a;
      for (Elem x = 0; x < e; ++x)
        if (rng() % 3) a.push_back(x);
      f.add(a);
    }
    if (!family_potential_psi(f, q).psi_criterion) continue;
    auto fam = std::make_shared<const SetFamily>(f);
    auto w = waiter_force_transversal(fam, q);
    auto c = trial % 2 ? client_random(trial) : client_arbitrary();
    auto r = play_game(GameState(Board::abstract(e), q), *w, *c);
    CHECK_FALSE(r.forfeited());
    CHECK(transversal_hit(f, r.state));
    ++played;
  }
  CHECK(played > 50);
}
