#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wc/graph.hpp"

namespace wc {

enum class CheckMode { Exhaustive, ExactUpTo, Sampled };
std::string to_string(CheckMode m);

struct ExpanderOptions {
  // Sets up to this size are checked exactly; above it, sampled.
  std::size_t subset_budget = 7;
  std::size_t samples = 2000;
  std::uint64_t seed = 0;
  bool parallel = true;
};

struct ExpanderVerdict {
  bool holds = true;
  std::vector<Vertex> witness;  // sorted, empty when holds
  CheckMode mode = CheckMode::Exhaustive;
  std::size_t exact_up_to = 0;
  std::size_t sampled = 0;
};

// External neighbourhood N(S) = (union of N(v), v in S) minus S.
std::size_t neighbourhood_size(const SimpleGraph& g, const std::vector<Vertex>& s);
// Independent re-check of a witness: |N(S)| < d|S|.
bool violates_expansion(const SimpleGraph& g, const std::vector<Vertex>& s, double d);

// |S| ranges over 1..floor(eps*n).
ExpanderVerdict check_expander(const SimpleGraph& g, double d, double eps,
                               const ExpanderOptions& opt = {});
// S ranges over subsets of the left side with |S| <= eps*|V1|; g must carry a bipartition.
ExpanderVerdict check_half_expander(const SimpleGraph& g, double d, double eps,
                                    const ExpanderOptions& opt = {});

// Inclusion-minimal S within `side` with |S| <= max_size and |N(S)| < d|S|.
std::vector<std::vector<Vertex>> minimal_non_expanding(const SimpleGraph& g,
                                                       const std::vector<Vertex>& side, double d,
                                                       std::size_t max_size, bool parallel = true);

struct HallResult {
  bool saturated = false;
  std::vector<Edge> matching;    // (t, y) pairs
  std::vector<Vertex> violator;  // S subset of T with |N(S) ∩ Y| < |S|
};

// Matching from T into Y using edges of g, or a Hall violator.
HallResult hall_cover_matching(const SimpleGraph& g, const std::vector<Vertex>& t,
                               const std::vector<Vertex>& y);

struct LongPathResult {
  bool found = false;
  std::vector<Vertex> path;  // v_0..v_m, v_j in part j mod 4
  std::size_t longest_stack = 0;
  bool invariant_held = true;
};

// DFS on the orientation part i -> part i+1 (mod 4). part[v] in 0..3, or -1
// for vertices outside. Stops once the active stack reaches m+4 vertices.
LongPathResult dfs_fourpartite_long_path(const SimpleGraph& h, const std::vector<int>& part,
                                         std::size_t m, bool check_invariant = false);

}  // namespace wc
