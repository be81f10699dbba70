#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <vector>

#include "wc/game.hpp"

namespace wc {

using BigInt = boost::multiprecision::cpp_int;

enum class SetStatus { Alive, Dead, Completed };

// Explicit multi-family of element sets. Duplicates are kept.
class SetFamily {
 public:
  SetFamily() = default;
  explicit SetFamily(std::vector<std::vector<Elem>> sets);

  void add(std::vector<Elem> set);
  std::size_t size() const { return sets_.size(); }
  bool empty() const { return sets_.empty(); }
  const std::vector<Elem>& operator[](std::size_t i) const { return sets_[i]; }
  const std::vector<std::vector<Elem>>& sets() const { return sets_; }
  std::size_t max_set_size() const { return max_size_; }

  // Indices of sets containing x (x beyond every set yields an empty list).
  const std::vector<std::uint32_t>& containing(Elem x) const;

  SetStatus status(std::size_t i, const GameState& s) const;

 private:
  std::vector<std::vector<Elem>> sets_;
  std::vector<std::vector<std::uint32_t>> index_;
  std::size_t max_size_ = 0;
};

// Newline-delimited sets of decimal ids.
SetFamily read_family(std::istream& in);
void write_family(std::ostream& out, const SetFamily& f);

// Largest K * log2(q+1) for which potentials are kept as exact integers
// over (q+1)^K.
inline constexpr double kExactPhiBits = 4096;
// Tie tolerance for floating potentials.
inline constexpr long double kPhiTolerance = 1e-9L;

struct PotentialReport {
  long double phi = 0;
  // phi = phi_num / (q+1)^phi_exp when exact.
  std::optional<BigInt> phi_num;
  std::uint64_t phi_base = 2;
  std::size_t phi_exp = 0;
  long double psi = 0;
  bool psi_criterion = false;  // psi < 1/2
  std::size_t dead = 0, alive = 0, completed = 0;
};

// In-game Phi: Dead sets weigh 0, Completed 1, others (q+1)^{-|A \ C|}.
PotentialReport family_potential_phi(const SetFamily& f, std::uint64_t q, const GameState& s);
PotentialReport family_potential_phi(const SetFamily& f, std::uint64_t q);  // initial state
// Psi = sum 2^{-|A|/(2q-1)}.
PotentialReport family_potential_psi(const SetFamily& f, std::uint64_t q);

// True iff a <= b as potentials, exactly when both are exact.
bool phi_leq(const PotentialReport& a, const PotentialReport& b);

// Picks the offered element minimizing the post-round Phi.
std::unique_ptr<ClientStrategy> client_minimize_potential(std::shared_ptr<const SetFamily> f,
                                                          std::uint64_t q);

// Heuristic Waiter for the transversal game: offers the q+1 free elements
// of largest share of endangered sets. Forfeits once a set is fully Waiter-owned.
class TransversalWaiter final : public WaiterStrategy {
 public:
  TransversalWaiter(std::shared_ptr<const SetFamily> f, std::uint64_t q);
  std::string name() const override { return "force_transversal"; }
  WaiterMove offer(const GameState& s) override;
  void finish(const GameState& s) override;
  std::vector<StageRecord> stages() const override { return {stage_}; }
  // A set with no Client element, if the game ended with one.
  const std::optional<std::vector<Elem>>& certificate() const { return certificate_; }

 private:
  std::optional<std::size_t> uncovered(const GameState& s) const;

  std::shared_ptr<const SetFamily> f_;
  std::uint64_t q_;
  StageRecord stage_{"transversal", 0, 0, true, ""};
  std::optional<std::vector<Elem>> certificate_;
};

std::unique_ptr<TransversalWaiter> waiter_force_transversal(std::shared_ptr<const SetFamily> f,
                                                            std::uint64_t q);

// Every set meets Client's elements.
bool transversal_hit(const SetFamily& f, const GameState& s);

// Edge sets of all cycles of K_n of length >= m.
inline constexpr std::uint64_t kFamilyBudget = 5'000'000;
SetFamily build_cycle_family(Vertex n, Vertex m, std::uint64_t budget = kFamilyBudget);
// Closed-form count sum_{k=m}^{n} C(n,k)(k-1)!/2.
long double cycle_family_size(Vertex n, Vertex m);
// sum_{k=m}^{n} C(n,k)(k-1)!/2 (q+1)^{-k}
long double cycle_family_phi(Vertex n, Vertex m, std::uint64_t q);

// Ordered r-tuples of non-trivial paths of K_n whose union is a tree; each
// tuple contributes its union's edge set.
SetFamily build_path_tuple_family(Vertex n, unsigned r, std::uint64_t budget = kFamilyBudget);
// Every labeled non-trivial path of K_n, both orientations.
SetFamily build_labeled_path_family(Vertex n, std::uint64_t budget = kFamilyBudget);

}  // namespace wc
