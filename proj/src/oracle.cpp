#include "wc/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <limits>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <unordered_map>

#include "wc/analysis.hpp"

#ifdef WC_HAVE_OPENMP
#include <omp.h>
#endif

namespace wc {

std::int64_t Objective::operator()(const GameState& s) const {
  return eval(s.board(), s.elements_of(Owner::Client));
}

namespace {

SimpleGraph graph_of(const Board& b, const std::vector<Elem>& client) {
  SimpleGraph g(b.n());
  for (Elem x : client) {
    const auto [u, v] = Board::pair_of(x);
    g.add_edge(u, v);
  }
  return g;
}

template <class F>
Objective graph_objective(std::string name, bool predicate, std::int64_t lo, std::int64_t hi, F f) {
  Objective o;
  o.name = std::move(name);
  o.predicate = predicate;
  o.lo = lo;
  o.hi = hi;
  o.eval = [f](const Board& b, const std::vector<Elem>& c) -> std::int64_t {
    if (!b.is_graph()) throw std::invalid_argument("graph objective on an abstract board");
    return f(graph_of(b, c));
  };
  return o;
}

constexpr std::int64_t kOpen = std::numeric_limits<std::int64_t>::max();

}  // namespace

Objective objective_connectivity() {
  return graph_objective("connectivity", true, 0, 1, [](const SimpleGraph& g) {
    return static_cast<std::int64_t>(component_profile(g).connected);
  });
}

Objective objective_largest_component() {
  return graph_objective("largest_component", false, 1, kOpen, [](const SimpleGraph& g) {
    return static_cast<std::int64_t>(component_profile(g).largest());
  });
}

Objective objective_circumference() {
  return graph_objective("circumference", false, 0, kOpen, [](const SimpleGraph& g) {
    return static_cast<std::int64_t>(cycle_spectrum_exact(g).circumference);
  });
}

Objective objective_min_degree() {
  return graph_objective("min_degree", false, 0, kOpen, [](const SimpleGraph& g) {
    std::size_t d = g.n() ? g.degree(0) : 0;
    for (Vertex v = 1; v < g.n(); ++v) d = std::min(d, g.degree(v));
    return static_cast<std::int64_t>(d);
  });
}

Objective objective_component_at_least(std::size_t s) {
  return graph_objective("component>=" + std::to_string(s), true, 0, 1, [s](const SimpleGraph& g) {
    return static_cast<std::int64_t>(component_profile(g).largest() >= s);
  });
}

Objective objective_by_name(const std::string& name, std::size_t arg) {
  if (name == "connectivity") return objective_connectivity();
  if (name == "largest_component" || name == "comp") return objective_largest_component();
  if (name == "circumference" || name == "cyc") return objective_circumference();
  if (name == "min_degree") return objective_min_degree();
  if (name == "component_at_least") return objective_component_at_least(arg);
  throw std::invalid_argument("unknown objective: " + name);
}

namespace {

struct Key {
  std::uint64_t c, w;
  friend bool operator==(const Key&, const Key&) = default;
};
struct KeyHash {
  std::size_t operator()(const Key& k) const {
    return std::hash<std::uint64_t>()(k.c * 0x9E3779B97F4A7C15ull ^ (k.w + 0x632BE59BD9B4E019ull));
  }
};

class Solver {
 public:
  Solver(const Board& b, std::uint64_t q, const Objective& obj, const SolveOptions& o)
      : board_(b), q_(q), obj_(obj), opts_(o) {
    const Elem e = b.size();
    if (e > opts_.max_elements || e > 63 || q > opts_.max_q)
      throw BudgetExceeded("solver budget: at most " + std::to_string(opts_.max_elements) +
                           " elements and q <= " + std::to_string(opts_.max_q));
    full_ = e == 64 ? ~0ull : (1ull << e) - 1;
    lo_ = obj.lo;
    hi_ = obj.hi == kOpen && b.is_graph() ? static_cast<std::int64_t>(b.n()) : obj.hi;
    if (opts_.symmetry && b.is_graph() && b.n() <= 8) build_perms();
  }

  std::int64_t value(std::uint64_t c, std::uint64_t w) {
    const std::uint64_t free = full_ & ~(c | w);
    if (static_cast<std::uint64_t>(std::popcount(free)) < q_ + 1) return leaf(c);
    if (++nodes_ > opts_.node_budget) throw BudgetExceeded("solver node budget exceeded");
    const Key key = canonical(c, w);
    if (opts_.memo) {
      std::shared_lock lock(mu_);
      auto it = memo_.find(key);
      if (it != memo_.end()) {
        ++hits_;
        return it->second;
      }
    }
    std::vector<int> ids;
    for (std::uint64_t f = free; f; f &= f - 1) ids.push_back(std::countr_zero(f));
    std::int64_t best = std::numeric_limits<std::int64_t>::min();
    for_each_offer(ids, [&](std::uint64_t offer) {
      const std::int64_t v = client_value(c, w, offer, best);
      best = std::max(best, v);
      return best < hi_;
    });
    if (opts_.memo) {
      std::unique_lock lock(mu_);
      memo_.emplace(key, best);
    }
    return best;
  }

  // Min over Client's choices, cut once it cannot beat `floor`.
  std::int64_t client_value(std::uint64_t c, std::uint64_t w, std::uint64_t offer,
                            std::int64_t floor) {
    std::int64_t worst = std::numeric_limits<std::int64_t>::max();
    for (std::uint64_t o = offer; o; o &= o - 1) {
      const std::uint64_t x = o & -o;
      worst = std::min(worst, value(c | x, w | (offer & ~x)));
      if (worst <= floor || worst <= lo_) break;
    }
    return worst;
  }

  std::int64_t root_parallel() {
    const std::uint64_t free = full_;
    if (static_cast<std::uint64_t>(std::popcount(free)) < q_ + 1) return leaf(0);
    std::vector<int> ids;
    for (std::uint64_t f = free; f; f &= f - 1) ids.push_back(std::countr_zero(f));
    std::vector<std::uint64_t> offers;
    for_each_offer(ids, [&](std::uint64_t o) {
      offers.push_back(o);
      return true;
    });
    std::vector<std::int64_t> vals(offers.size());
#ifdef WC_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::size_t i = 0; i < offers.size(); ++i)
      vals[i] = client_value(0, 0, offers[i], std::numeric_limits<std::int64_t>::min());
    return *std::max_element(vals.begin(), vals.end());
  }

  std::int64_t leaf(std::uint64_t c) const {
    std::vector<Elem> els;
    for (std::uint64_t f = c; f; f &= f - 1) els.push_back(static_cast<Elem>(std::countr_zero(f)));
    return obj_.eval(board_, els);
  }

  std::uint64_t nodes() const { return nodes_; }
  std::uint64_t hits() const { return hits_; }
  std::uint64_t entries() const { return memo_.size(); }
  std::uint64_t q() const { return q_; }

 private:
  template <class F>
  void for_each_offer(const std::vector<int>& ids, F&& f) const {
    const std::size_t k = q_ + 1, m = ids.size();
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      std::uint64_t offer = 0;
      for (auto i : idx) offer |= 1ull << ids[i];
      if (!f(offer)) return;
      std::size_t i = k;
      while (i > 0 && idx[i - 1] == m - k + i - 1) --i;
      if (i == 0) return;
      ++idx[i - 1];
      for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }

  void build_perms() {
    const Vertex n = board_.n();
    std::vector<Vertex> p(n);
    std::iota(p.begin(), p.end(), Vertex{0});
    do {
      std::vector<std::uint8_t> map(board_.size());
      for (Elem x = 0; x < board_.size(); ++x) {
        const auto [u, v] = Board::pair_of(x);
        map[x] = static_cast<std::uint8_t>(Board::pair_id(p[u], p[v]));
      }
      perms_.push_back(std::move(map));
    } while (std::next_permutation(p.begin(), p.end()));
  }

  Key canonical(std::uint64_t c, std::uint64_t w) const {
    if (perms_.empty()) return {c, w};
    Key best{c, w};
    for (const auto& map : perms_) {
      Key k{0, 0};
      for (std::uint64_t f = c; f; f &= f - 1) k.c |= 1ull << map[std::countr_zero(f)];
      for (std::uint64_t f = w; f; f &= f - 1) k.w |= 1ull << map[std::countr_zero(f)];
      if (k.c < best.c || (k.c == best.c && k.w < best.w)) best = k;
    }
    return best;
  }

  const Board& board_;
  std::uint64_t q_;
  const Objective& obj_;
  SolveOptions opts_;
  std::uint64_t full_ = 0;
  std::int64_t lo_ = 0, hi_ = 0;
  std::vector<std::vector<std::uint8_t>> perms_;
  std::unordered_map<Key, std::int64_t, KeyHash> memo_;
  mutable std::shared_mutex mu_;
  std::atomic<std::uint64_t> nodes_{0}, hits_{0};
};

std::pair<std::uint64_t, std::uint64_t> masks(const GameState& s) {
  std::uint64_t c = 0, w = 0;
  for (Elem x = 0; x < s.board().size(); ++x) {
    const Owner o = s.owner(x);
    if (o == Owner::Client) c |= 1ull << x;
    else if (o == Owner::Waiter) w |= 1ull << x;
  }
  return {c, w};
}

class OptimalWaiter final : public WaiterStrategy {
 public:
  explicit OptimalWaiter(Solver& s) : solver_(s) {}
  std::string name() const override { return "oracle"; }
  WaiterMove offer(const GameState& s) override {
    const auto [c, w] = masks(s);
    const std::int64_t target = solver_.value(c, w);
    const std::uint64_t free = ((s.board().size() == 64) ? ~0ull : (1ull << s.board().size()) - 1) & ~(c | w);
    std::vector<Elem> ids;
    for (std::uint64_t f = free; f; f &= f - 1) ids.push_back(static_cast<Elem>(std::countr_zero(f)));
    const std::size_t k = solver_.q() + 1;
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      std::uint64_t o = 0;
      for (auto i : idx) o |= 1ull << ids[i];
      if (solver_.client_value(c, w, o, std::numeric_limits<std::int64_t>::min()) == target) {
        Offer out;
        for (auto i : idx) out.push_back(ids[i]);
        return out;
      }
      std::size_t i = k;
      while (i > 0 && idx[i - 1] == ids.size() - k + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    return Forfeit{Side::Waiter, 0, "oracle", "no offer attains the solved value"};
  }

 private:
  Solver& solver_;
};

class OptimalClient final : public ClientStrategy {
 public:
  explicit OptimalClient(Solver& s) : solver_(s) {}
  std::string name() const override { return "oracle"; }
  ClientMove choose(const GameState& s, const Offer& offer) override {
    const auto [c, w] = masks(s);
    std::uint64_t om = 0;
    for (Elem x : offer) om |= 1ull << x;
    Elem best = offer.front();
    std::int64_t best_v = std::numeric_limits<std::int64_t>::max();
    for (Elem x : offer) {
      const std::uint64_t b = 1ull << x;
      const std::int64_t v = solver_.value(c | b, w | (om & ~b));
      if (v < best_v || (v == best_v && x < best)) {
        best_v = v;
        best = x;
      }
    }
    return best;
  }

 private:
  Solver& solver_;
};

}  // namespace

SolveResult solve_game_exact(const Board& board, std::uint64_t q, const Objective& objective,
                             const SolveOptions& opts) {
  if (q == 0) throw std::invalid_argument("q must be positive");
  Solver solver(board, q, objective, opts);
  SolveResult r;
  r.value = opts.parallel ? solver.root_parallel() : solver.value(0, 0);
  r.waiter_wins = objective.predicate && r.value == 1;
  const std::uint64_t nodes = solver.nodes();

  OptimalWaiter w(solver);
  OptimalClient c(solver);
  auto played = play_game(GameState(board, q), w, c);
  r.principal_variation = std::move(played.transcript);
  r.principal_variation.waiter = "oracle";
  r.principal_variation.client = "oracle";
  r.nodes = nodes;
  r.memo_entries = solver.entries();
  r.memo_hits = solver.hits();
  if (objective(played.state) != r.value)
    throw std::logic_error("principal variation does not attain the solved value");
  return r;
}

std::int64_t game_value_comp(Vertex n, std::uint64_t q, const SolveOptions& opts) {
  return solve_game_exact(Board::complete(n), q, objective_largest_component(), opts).value;
}

namespace {

class ScriptedClient final : public ClientStrategy {
 public:
  ScriptedClient(std::vector<std::size_t>& script, std::vector<std::size_t>& widths)
      : script_(script), widths_(widths) {}
  std::string name() const override { return "exhaustive"; }
  ClientMove choose(const GameState&, const Offer& offer) override {
    if (round_ == script_.size()) {
      script_.push_back(0);
      widths_.push_back(offer.size());
    }
    return offer[script_[round_++]];
  }
  std::size_t used() const { return round_; }

 private:
  std::vector<std::size_t>& script_;
  std::vector<std::size_t>& widths_;
  std::size_t round_ = 0;
};

}  // namespace

VerifyResult verify_waiter_strategy_exhaustive(const WaiterFactory& make, const Board& board,
                                               std::uint64_t q, const Objective& objective,
                                               std::int64_t required, std::uint64_t leaf_budget) {
  VerifyResult res;
  res.worst = std::numeric_limits<std::int64_t>::max();
  std::vector<std::size_t> script, widths;
  while (true) {
    if (res.leaves >= leaf_budget) throw BudgetExceeded("exhaustive verification leaf budget exceeded");
    auto waiter = make();
    ScriptedClient client(script, widths);
    auto played = play_game(GameState(board, q), *waiter, client);
    ++res.leaves;
    // Games may end early on some branches; drop choices this game never made.
    script.resize(client.used());
    widths.resize(script.size());
    const bool forfeit = played.forfeited();
    const std::int64_t v = forfeit ? std::numeric_limits<std::int64_t>::min() : objective(played.state);
    res.worst = std::min(res.worst, v);
    if (forfeit || v < required) {
      res.holds = false;
      if (!res.counterexample) res.counterexample = std::move(played.transcript);
    }
    while (!script.empty() && script.back() + 1 == widths.back()) {
      script.pop_back();
      widths.pop_back();
    }
    if (script.empty()) break;
    ++script.back();
  }
  return res;
}

}  // namespace wc
