#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wc/cycle_potential.hpp"
#include "wc/game.hpp"
#include "wc/graph.hpp"
#include "wc/set_family.hpp"

namespace wc {

// Least offered id, or a uniformly random offered element when seeded.
std::unique_ptr<ClientStrategy> client_arbitrary();
std::unique_ptr<ClientStrategy> client_random(std::uint64_t seed);

// Takes the offered edge whose larger endpoint Client degree is smallest
// (then the smaller one, then the least id).
std::unique_ptr<ClientStrategy> client_greedy_min_degree();

// Keeps Client's components small: picks the offered edge minimizing the
// increase of the sum of squared component orders. Edges inside a component
// cost nothing.
std::unique_ptr<ClientStrategy> client_component_potential();

// Potential minimization over the path-tuple family F_r of K_n.
std::unique_ptr<ClientStrategy> client_avoid_big_component(Vertex n, std::uint64_t q, unsigned r);
// Same over labeled non-trivial paths.
std::unique_ptr<ClientStrategy> client_avoid_big_component_paths(Vertex n, std::uint64_t q);

struct BigComponentAudit {
  long double phi0 = 0;
  std::size_t completed = 0;
  std::size_t largest = 0;
  // Path tuples inside the largest component's spanning tree.
  std::uint64_t tuples_in_largest = 0;
  long double tuple_floor = 0;  // (s/4)^{2r}
  bool completed_ok = false;    // completed <= phi0
  bool floor_ok = false;        // tuple_floor <= tuples_in_largest <= completed
  bool ok() const { return completed_ok && floor_ok; }
};

// End-state checks for client_avoid_big_component on a finished K_n game.
BigComponentAudit audit_big_component(const SetFamily& f, std::uint64_t q, unsigned r,
                                      const GameState& end);

class MinDegreeClient final : public ClientStrategy {
 public:
  MinDegreeClient(Vertex n, std::uint64_t q, std::optional<std::uint64_t> seed = std::nullopt);

  std::string name() const override { return "min_degree"; }
  ClientMove choose(const GameState& s, const Offer& offer) override;
  void observe(const GameState& s, const RoundRecord& r) override;

  struct Boundary {
    std::uint64_t round = 0;  // rounds played in Stage I
    Vertex k = 0;             // |U| when Stage I ended
    bool k_ok = false;        // k in {ceil(n/4), ceil(n/4)+1}
    long double average = 0;  // mean Waiter degree over V_0
    long double bound = 0;    // k(q-k+2)/(2(n-k))
    bool average_ok = false;
    Vertex x = 0;
    std::uint32_t x_waiter_degree = 0;
  };
  bool guaranteed() const { return guaranteed_; }
  bool in_stage_two() const { return boundary_.has_value(); }
  const std::optional<Boundary>& boundary() const { return boundary_; }
  std::optional<Vertex> x() const;
  // Client degree of x at s, and whether the promised bound holds there.
  bool check(const GameState& s, std::string* why = nullptr) const;

 private:
  void maybe_enter_stage_two(const GameState& s);

  Vertex n_;
  std::uint64_t q_;
  bool guaranteed_;
  std::vector<char> touched_;  // vertex in U
  Vertex u_size_ = 0;
  std::optional<Boundary> boundary_;
  ArbitraryPicker picker_;
  bool random_ = false;
};

std::unique_ptr<MinDegreeClient> client_min_degree(Vertex n, std::uint64_t q,
                                                   std::optional<std::uint64_t> seed = std::nullopt);

}  // namespace wc
