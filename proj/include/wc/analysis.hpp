#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wc/graph.hpp"

namespace wc {

struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Largest order accepted by the subset dynamic programs.
inline constexpr Vertex kExactBudget = 18;

struct ComponentProfile {
  std::vector<std::size_t> sizes;  // non-increasing
  bool connected = false;
  std::size_t largest() const { return sizes.empty() ? 0 : sizes.front(); }
};

ComponentProfile component_profile(const SimpleGraph& g);
std::vector<Vertex> component_labels(const SimpleGraph& g);

struct CycleSpectrum {
  std::vector<bool> has;  // has[k] for 0 <= k <= n
  std::size_t circumference = 0;  // 0 for forests
  bool hamiltonian = false;
  bool pancyclic = false;
  bool exact = true;
  std::size_t max_checked = 0;
  std::vector<std::size_t> lengths() const;
};

// Exact subset DP, n <= budget.
CycleSpectrum cycle_spectrum_exact(const SimpleGraph& g, Vertex budget = kExactBudget);
// Cycle lengths up to k_max by colour coding; may miss lengths with small
// probability, never reports a length that is absent.
CycleSpectrum cycle_spectrum_bounded(const SimpleGraph& g, std::size_t k_max,
                                     std::size_t repetitions, std::uint64_t seed);

std::vector<Vertex> longest_path_exact(const SimpleGraph& g, Vertex budget = kExactBudget);
std::optional<std::vector<Vertex>> hamilton_cycle_exact(const SimpleGraph& g,
                                                        Vertex budget = kExactBudget);
std::vector<Edge> boosters_exact(const SimpleGraph& g, Vertex budget = kExactBudget);

// Endpoints reachable from a path by Posa rotations keeping path.front()
// fixed. Each endpoint remembers the rotation that produced it, so the
// witnessing path can be rebuilt.
class RotationClosure {
 public:
  RotationClosure(const SimpleGraph& g, std::vector<Vertex> path, std::size_t max_endpoints = 0);

  const std::vector<Vertex>& endpoints() const { return order_; }
  bool reached(Vertex z) const { return parent_[z] != kNone; }
  std::vector<Vertex> path_to(Vertex z) const;
  bool truncated() const { return truncated_; }
  Vertex fixed() const { return base_.front(); }

 private:
  static constexpr Vertex kNone = static_cast<Vertex>(-1);
  std::vector<Vertex> base_;
  std::vector<Vertex> parent_;  // endpoint -> previous endpoint
  std::vector<Vertex> pivot_;   // endpoint -> vertex it was rotated at
  std::vector<Vertex> order_;
  bool truncated_ = false;
};

struct RotationReport {
  std::vector<Vertex> endpoints;
  std::vector<Edge> booster_pairs;  // rotation-derived
  bool pairs_verified = false;     // checked against boosters_exact
};

// Endpoint set U and the rotation-derived booster candidates: non-edges
// between the two ends of paths obtained by rotating at both ends.
RotationReport posa_rotation_endpoints(const SimpleGraph& g, const std::vector<Vertex>& path,
                                       std::size_t max_pairs = 0);

// Internally vertex-disjoint s-t paths (a direct edge counts as one), up to cap.
std::size_t disjoint_paths(const SimpleGraph& g, Vertex s, Vertex t, std::size_t cap);

struct ConnectivityCheck {
  bool holds = false;
  bool exact = true;
  std::optional<Edge> witness;  // pair with fewer than k disjoint paths
};

// k-vertex-connectivity. All pairs up to all_pairs_limit vertices, otherwise
// the O(kn)-flow reduction with a virtual source.
ConnectivityCheck vertex_connectivity_check(const SimpleGraph& g, std::size_t k,
                                            Vertex all_pairs_limit = 80);

}  // namespace wc
