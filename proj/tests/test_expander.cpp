#include "doctest.h"

#include <algorithm>
#include <random>

#include "brute.hpp"
#include "wc/expander.hpp"

using namespace wc;

namespace {

std::vector<Vertex> range(Vertex lo, Vertex hi) {
  std::vector<Vertex> v;
  for (Vertex x = lo; x < hi; ++x) v.push_back(x);
  return v;
}

// Is S (within side) minimal non-expanding: violates, and no proper nonempty
// subset does.
bool minimal_violator(const SimpleGraph& g, const std::vector<Vertex>& s, double d) {
  if (!violates_expansion(g, s, d)) return false;
  const std::size_t k = s.size();
  for (std::uint32_t m = 1; m + 1 < (1u << k); ++m) {
    std::vector<Vertex> sub;
    for (std::size_t i = 0; i < k; ++i)
      if (m >> i & 1) sub.push_back(s[i]);
    if (violates_expansion(g, sub, d)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("neighbourhood of a set") {
  auto g = SimpleGraph::from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  CHECK(neighbourhood_size(g, {1, 2}) == 2);
  CHECK(neighbourhood_size(g, {0}) == 1);
  CHECK(violates_expansion(g, {0}, 2));
  CHECK_FALSE(violates_expansion(g, {2}, 2));
}

TEST_CASE("exhaustive expander check matches subset enumeration") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 120; ++trial) {
    const Vertex n = 6 + rng() % 7;
    auto g = brute::random_graph(n, 0.3 + 0.05 * (trial % 10), rng);
    const std::size_t lim = brute::expansion_limit(g, 2);
    for (std::size_t s = 1; s <= n / 2; ++s) {
      const double eps = (s + 0.5) / n;
      ExpanderOptions opt;
      opt.subset_budget = n;
      opt.parallel = trial % 2;
      auto v = check_expander(g, 2, eps, opt);
      CHECK(v.mode == CheckMode::Exhaustive);
      CHECK(v.holds == (lim >= s));
      if (!v.holds) {
        CHECK(violates_expansion(g, v.witness, 2));
        CHECK(v.witness.size() <= s);
      }
    }
  }
}

TEST_CASE("a sampled check never reports a false witness") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 10; ++trial) {
    auto g = brute::random_graph(40, 0.12, rng);
    ExpanderOptions opt;
    opt.subset_budget = 2;
    opt.samples = 300;
    opt.seed = trial;
    auto v = check_expander(g, 2, 0.25, opt);
    if (!v.holds) CHECK(violates_expansion(g, v.witness, 2));
    else CHECK(v.mode == CheckMode::Sampled);
  }
}

TEST_CASE("half-expander check looks only at the left side") {
  // Left {0,1}, right {2..5}; 0 sees 2,3 and 1 sees 4,5.
  auto g = SimpleGraph::from_edges(6, {{0, 2}, {0, 3}, {1, 4}, {1, 5}});
  g.set_bipartition({0, 1});
  CHECK(check_half_expander(g, 2, 1.0).holds);
  CHECK_FALSE(check_half_expander(g, 3, 1.0).holds);
  SimpleGraph plain(3);
  CHECK_THROWS(check_half_expander(plain, 2, 0.5));
}

TEST_CASE("minimal non-expanding sets are exactly the minimal violators") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 40; ++trial) {
    const Vertex n = 8 + rng() % 3;
    auto g = brute::random_graph(n, 0.25, rng);
    const auto side = range(0, n);
    const std::size_t max_size = 3;
    auto got = minimal_non_expanding(g, side, 2, max_size, trial % 2);
    for (auto& s : got) std::sort(s.begin(), s.end());
    std::sort(got.begin(), got.end());
    std::vector<std::vector<Vertex>> want;
    for (std::uint32_t m = 1; m < (1u << n); ++m) {
      if (static_cast<std::size_t>(__builtin_popcount(m)) > max_size) continue;
      std::vector<Vertex> s;
      for (Vertex v = 0; v < n; ++v)
        if (m >> v & 1) s.push_back(v);
      if (minimal_violator(g, s, 2)) want.push_back(s);
    }
    std::sort(want.begin(), want.end());
    CHECK(got == want);
  }
}

TEST_CASE("Hall matching or violator") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    auto g = brute::random_graph(12, 0.2, rng);
    const auto t = range(0, 5), y = range(5, 12);
    auto h = hall_cover_matching(g, t, y);
    if (h.saturated) {
      CHECK(h.matching.size() == t.size());
      std::vector<Vertex> used;
      for (auto [a, b] : h.matching) {
        CHECK(g.has_edge(a, b));
        CHECK(a < 5);
        CHECK(b >= 5);
        used.push_back(b);
      }
      std::sort(used.begin(), used.end());
      CHECK(std::adjacent_find(used.begin(), used.end()) == used.end());
    } else {
      std::vector<char> nb(12, 0);
      for (Vertex s : h.violator)
        for (Vertex w : g.neighbors(s))
          if (w >= 5) nb[w] = 1;
      CHECK(static_cast<std::size_t>(std::count(nb.begin(), nb.end(), 1)) < h.violator.size());
    }
  }
}

TEST_CASE("four-partite DFS follows the orientation") {
  SimpleGraph h(24);
  std::vector<int> part(24);
  for (Vertex v = 0; v < 24; ++v) part[v] = v % 4;
  for (Vertex v = 0; v + 1 < 24; ++v) h.add_edge(v, v + 1);
  auto r = dfs_fourpartite_long_path(h, part, 12, true);
  CHECK(r.found);
  CHECK(r.invariant_held);
  CHECK(is_path(h, r.path));
  CHECK(r.path.size() >= 13);
  for (std::size_t i = 1; i < r.path.size(); ++i)
    CHECK(part[r.path[i]] == (part[r.path[i - 1]] + 1) % 4);
  auto none = dfs_fourpartite_long_path(h, part, 40, true);
  CHECK_FALSE(none.found);
}
