#pragma once

#include <memory>
#include <vector>

#include "wc/game.hpp"

namespace wc {

// Potential of the family of all cycles of K_n with at least m edges,
// evaluated by subset dynamic programming instead of listing the cycles.
// Practical up to n around 22.
class CyclePotential {
 public:
  CyclePotential(Vertex n, Vertex m, std::uint64_t q);

  Vertex n() const { return n_; }
  Vertex m() const { return m_; }

  // Phi at s (Completed cycles weigh 1).
  long double phi(const GameState& s) const;
  // For each offered edge x: total post-round weight of live cycles that meet
  // the offer in x alone.
  std::vector<long double> choice_weights(const GameState& s, const Offer& offer) const;

 private:
  Vertex n_, m_;
  std::uint64_t q_;
};

// Client avoiding cycles of length >= m by potential minimization. Uses the
// explicit family when it fits the budget and implicit otherwise.
std::unique_ptr<ClientStrategy> client_avoid_cycles(Vertex n, std::uint64_t q, Vertex m,
                                                    bool force_implicit = false);

}  // namespace wc
