#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "wc/game.hpp"
#include "wc/graph.hpp"

namespace wc {

// Final-state statistic. Waiter maximizes it, Client minimizes it. A
// predicate objective takes the values 0 and 1.
struct Objective {
  std::string name;
  bool predicate = false;
  std::int64_t lo = 0, hi = 0;  // range of values, used for cut-offs
  std::function<std::int64_t(const Board&, const std::vector<Elem>& client)> eval;

  std::int64_t operator()(const GameState& s) const;
};

Objective objective_connectivity();
Objective objective_largest_component();
Objective objective_circumference();
Objective objective_min_degree();
// 1 iff Client's graph has a component of order >= s.
Objective objective_component_at_least(std::size_t s);
Objective objective_by_name(const std::string& name, std::size_t arg = 0);

struct SolveOptions {
  bool memo = true;
  // Identify positions up to vertex relabeling (K_n boards, n <= 8).
  bool symmetry = false;
  bool parallel = false;
  Elem max_elements = 10;
  std::uint64_t max_q = 4;
  std::uint64_t node_budget = 200'000'000;
};

struct SolveResult {
  std::int64_t value = 0;
  bool waiter_wins = false;  // predicate objectives: value == 1
  Transcript principal_variation;
  std::uint64_t nodes = 0;
  std::uint64_t memo_entries = 0;
  std::uint64_t memo_hits = 0;
};

// Exact minimax value of the game on board with bias q. Throws
// BudgetExceeded outside the configured limits.
SolveResult solve_game_exact(const Board& board, std::uint64_t q, const Objective& objective,
                             const SolveOptions& opts = {});

std::int64_t game_value_comp(Vertex n, std::uint64_t q, const SolveOptions& opts = {});

struct VerifyResult {
  bool holds = true;
  std::uint64_t leaves = 0;
  std::int64_t worst = 0;  // least objective value over all leaves
  std::optional<Transcript> counterexample;
};

using WaiterFactory = std::function<std::unique_ptr<WaiterStrategy>()>;

// Plays a fresh strategy instance against every Client response sequence and
// checks objective >= required on every leaf. A Waiter forfeit fails.
VerifyResult verify_waiter_strategy_exhaustive(const WaiterFactory& make, const Board& board,
                                               std::uint64_t q, const Objective& objective,
                                               std::int64_t required,
                                               std::uint64_t leaf_budget = 5'000'000);

}  // namespace wc
