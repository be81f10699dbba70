#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "wc/graph.hpp"

namespace wc {

// Largest k for labeled-tree enumeration.
inline constexpr Vertex kPruferBudget = 9;

// Tree edges of a Prufer sequence over 0..k-1 (length k-2).
std::vector<Edge> prufer_decode(const std::vector<Vertex>& seq);
// Calls fn on the edge list of every labeled tree on k vertices.
void for_each_labeled_tree(Vertex k, const std::function<void(const std::vector<Edge>&)>& fn);

// Number of labeled spanning trees of K_k with at most l leaves.
std::uint64_t count_low_leaf_trees(Vertex k, Vertex l, bool parallel = true);
std::uint64_t count_low_leaf_trees_by_decoding(Vertex k, Vertex l);
// (ek)^{2l} k! / (2l)!
long double low_leaf_bound(Vertex k, Vertex l);

struct PathTupleCount {
  std::uint64_t count = 0;  // exact, when exact is true
  bool exact = false;
  Vertex centroid = 0;
  std::vector<Vertex> a, b;  // split of V minus centroid along its branches
  // |A|^r |B|^r: tuples of paths a_i..b_i, all through the centroid.
  std::uint64_t certified = 0;
};

// Ordered r-tuples of non-trivial paths of the tree whose union is connected.
PathTupleCount count_path_tuples(const SimpleGraph& tree, unsigned r,
                                 std::uint64_t budget = 50'000'000);

}  // namespace wc
