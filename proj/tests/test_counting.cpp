#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "brute.hpp"
#include "wc/analysis.hpp"
#include "wc/counting.hpp"

using namespace wc;

namespace {

// Labeled trees on k >= 3 vertices with exactly j leaves: k!/j! * S(k-2, k-j).
std::uint64_t trees_with_leaves(unsigned k, unsigned j) {
  const unsigned n = k - 2, parts = k - j;
  std::vector<std::vector<std::uint64_t>> s(n + 1, std::vector<std::uint64_t>(n + 1, 0));
  s[0][0] = 1;
  for (unsigned a = 1; a <= n; ++a)
    for (unsigned b = 1; b <= a; ++b) s[a][b] = b * s[a - 1][b] + s[a - 1][b - 1];
  if (parts > n) return 0;
  std::uint64_t f = 1;
  for (unsigned i = j + 1; i <= k; ++i) f *= i;
  return f * s[n][parts];
}

}  // namespace

TEST_CASE("Prufer decoding yields trees") {
  for (Vertex k = 2; k <= 6; ++k) {
    std::size_t trees = 0;
    std::set<std::vector<Edge>> distinct;
    for_each_labeled_tree(k, [&](const std::vector<Edge>& e) {
      auto g = SimpleGraph::from_edges(k, e);
      CHECK(e.size() == k - 1);
      CHECK(component_profile(g).connected);
      auto s = e;
      std::sort(s.begin(), s.end());
      distinct.insert(s);
      ++trees;
    });
    CHECK(trees == static_cast<std::size_t>(std::pow(k, k - 2) + 0.5));
    CHECK(distinct.size() == trees);
  }
}

TEST_CASE("low-leaf tree counts against the Stirling formula") {
  for (Vertex k = 3; k <= 8; ++k)
    for (Vertex l = 2; l < k; ++l) {
      std::uint64_t want = 0;
      for (Vertex j = 2; j <= l; ++j) want += trees_with_leaves(k, j);
      CHECK(count_low_leaf_trees(k, l, false) == want);
      CHECK(count_low_leaf_trees(k, l, true) == want);
      CHECK(count_low_leaf_trees_by_decoding(k, l) == want);
    }
}

TEST_CASE("low-leaf bound holds for k <= 8, 2l < k") {
  for (Vertex k = 3; k <= 8; ++k)
    for (Vertex l = 1; 2 * l < k; ++l)
      CHECK(static_cast<long double>(count_low_leaf_trees(k, l)) < low_leaf_bound(k, l));
}

TEST_CASE("path tuple counts against direct enumeration") {
  for (Vertex m = 3; m <= 6; ++m)
    for_each_labeled_tree(m, [&](const std::vector<Edge>& e) {
      auto t = SimpleGraph::from_edges(m, e);
      for (unsigned r = 1; r <= 2; ++r) {
        auto got = count_path_tuples(t, r);
        REQUIRE(got.exact);
        CHECK(got.count == brute::path_tuples(t, r));
        CHECK(static_cast<long double>(got.count) >= std::pow(m / 4.0L, 2.0L * r));
        CHECK(got.certified <= got.count);
      }
    });
}

TEST_CASE("a star on 7 vertices") {
  std::vector<Edge> e;
  for (Vertex v = 1; v < 7; ++v) e.push_back({0, v});
  auto t = SimpleGraph::from_edges(7, e);
  CHECK(count_path_tuples(t, 1).count == 21);
  // Every path of a star passes through the centre.
  CHECK(count_path_tuples(t, 2).count == 21 * 21);
  CHECK(count_path_tuples(t, 2).count == brute::path_tuples(t, 2));
}
