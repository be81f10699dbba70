#include "wc/set_family.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace wc {

SetFamily::SetFamily(std::vector<std::vector<Elem>> sets) {
  sets_.reserve(sets.size());
  for (auto& s : sets) add(std::move(s));
}

void SetFamily::add(std::vector<Elem> set) {
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
  const auto id = static_cast<std::uint32_t>(sets_.size());
  for (Elem x : set) {
    if (x >= index_.size()) index_.resize(x + 1);
    index_[x].push_back(id);
  }
  max_size_ = std::max(max_size_, set.size());
  sets_.push_back(std::move(set));
}

const std::vector<std::uint32_t>& SetFamily::containing(Elem x) const {
  static const std::vector<std::uint32_t> none;
  return x < index_.size() ? index_[x] : none;
}

SetStatus SetFamily::status(std::size_t i, const GameState& s) const {
  bool complete = true;
  for (Elem x : sets_[i]) {
    const Owner o = s.owner(x);
    if (o == Owner::Waiter) return SetStatus::Dead;
    if (o != Owner::Client) complete = false;
  }
  return complete ? SetStatus::Completed : SetStatus::Alive;
}

SetFamily read_family(std::istream& in) {
  SetFamily f;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '#') continue;
    std::istringstream ls(line);
    std::vector<Elem> set;
    long long x;
    while (ls >> x) {
      if (x < 0) throw std::runtime_error("negative element id in family");
      set.push_back(static_cast<Elem>(x));
    }
    if (!ls.eof()) throw std::runtime_error("bad family line: " + line);
    f.add(std::move(set));
  }
  return f;
}

void write_family(std::ostream& out, const SetFamily& f) {
  for (const auto& s : f.sets()) {
    for (std::size_t i = 0; i < s.size(); ++i) out << (i ? " " : "") << s[i];
    out << '\n';
  }
}

namespace {

bool exact_ok(std::size_t k, std::uint64_t q) {
  return static_cast<double>(k) * std::log2(static_cast<double>(q) + 1.0) <= kExactPhiBits;
}

std::vector<BigInt> big_powers(std::uint64_t base, std::size_t k) {
  std::vector<BigInt> p(k + 1);
  p[0] = 1;
  for (std::size_t i = 1; i <= k; ++i) p[i] = p[i - 1] * base;
  return p;
}

std::vector<long double> inv_powers(std::uint64_t base, std::size_t k) {
  std::vector<long double> p(k + 1);
  p[0] = 1;
  for (std::size_t i = 1; i <= k; ++i) p[i] = p[i - 1] / static_cast<long double>(base);
  return p;
}

PotentialReport phi_from_remaining(const SetFamily& f, std::uint64_t q,
                                   const std::vector<std::optional<std::size_t>>& rem) {
  // rem[i]: Client-missing count, nullopt when dead.
  PotentialReport r;
  const std::size_t k = f.max_set_size();
  const bool exact = exact_ok(k, q);
  const auto inv = inv_powers(q + 1, k);
  std::vector<BigInt> pw;
  BigInt num = 0;
  if (exact) pw = big_powers(q + 1, k);
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!rem[i]) {
      ++r.dead;
      continue;
    }
    if (*rem[i] == 0) ++r.completed;
    else ++r.alive;
    r.phi += inv[*rem[i]];
    if (exact) num += pw[k - *rem[i]];
  }
  if (exact) {
    r.phi_num = std::move(num);
    r.phi_base = q + 1;
    r.phi_exp = k;
  }
  return r;
}

}  // namespace

PotentialReport family_potential_phi(const SetFamily& f, std::uint64_t q, const GameState& s) {
  if (q == 0) throw std::invalid_argument("q must be positive");
  std::vector<std::optional<std::size_t>> rem(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    std::size_t missing = 0;
    bool dead = false;
    for (Elem x : f[i]) {
      const Owner o = s.owner(x);
      if (o == Owner::Waiter) dead = true;
      else if (o == Owner::Free) ++missing;
    }
    if (!dead) rem[i] = missing;
  }
  return phi_from_remaining(f, q, rem);
}

PotentialReport family_potential_phi(const SetFamily& f, std::uint64_t q) {
  if (q == 0) throw std::invalid_argument("q must be positive");
  std::vector<std::optional<std::size_t>> rem(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) rem[i] = f[i].size();
  return phi_from_remaining(f, q, rem);
}

PotentialReport family_potential_psi(const SetFamily& f, std::uint64_t q) {
  if (q == 0) throw std::invalid_argument("q must be positive");
  PotentialReport r = family_potential_phi(f, q);
  const long double denom = 2.0L * static_cast<long double>(q) - 1.0L;
  r.psi = 0;
  for (const auto& s : f.sets()) r.psi += std::exp2(-static_cast<long double>(s.size()) / denom);
  r.psi_criterion = r.psi < 0.5L;
  return r;
}

bool phi_leq(const PotentialReport& a, const PotentialReport& b) {
  if (a.phi_num && b.phi_num && a.phi_base == b.phi_base) {
    if (a.phi_exp == b.phi_exp) return *a.phi_num <= *b.phi_num;
    const auto pa = big_powers(a.phi_base, std::max(a.phi_exp, b.phi_exp));
    return *a.phi_num * pa[b.phi_exp] <= *b.phi_num * pa[a.phi_exp];
  }
  return a.phi <= b.phi + kPhiTolerance * std::max<long double>(1, std::fabs(b.phi));
}

namespace {

class PotentialClient final : public ClientStrategy {
 public:
  PotentialClient(std::shared_ptr<const SetFamily> f, std::uint64_t q)
      : f_(std::move(f)), q_(q), exact_(exact_ok(f_->max_set_size(), q)) {
    if (q == 0) throw std::invalid_argument("q must be positive");
    const std::size_t k = f_->max_set_size();
    inv_ = inv_powers(q + 1, k);
    if (exact_) pw_ = big_powers(q + 1, k);
    hits_.assign(f_->size(), 0);
    stamp_.assign(f_->size(), 0);
  }

  std::string name() const override { return "potential"; }

  ClientMove choose(const GameState& s, const Offer& offer) override {
    if (!synced_) sync(s);
    ++now_;
    for (Elem x : offer)
      for (auto i : f_->containing(x)) {
        if (stamp_[i] != now_) {
          stamp_[i] = now_;
          hits_[i] = 0;
        }
        ++hits_[i];
      }
    const std::size_t k = f_->max_set_size();
    std::optional<Elem> best;
    BigInt best_big;
    long double best_ld = 0;
    for (Elem x : offer) {
      // Weight the sets that keep living through x only, after rescaling.
      BigInt g_big = 0;
      long double g_ld = 0;
      for (auto i : f_->containing(x)) {
        if (dead_[i] || hits_[i] != 1) continue;
        const std::size_t after = rem_[i] - 1;
        g_ld += inv_[after];
        if (exact_) g_big += pw_[k - after];
      }
      bool better;
      if (!best) better = true;
      else if (exact_) better = g_big < best_big || (g_big == best_big && x < *best);
      else {
        const long double tol = kPhiTolerance * std::max<long double>(1, std::fabs(best_ld));
        better = g_ld < best_ld - tol || (std::fabs(g_ld - best_ld) <= tol && x < *best);
      }
      if (better) {
        best = x;
        best_big = std::move(g_big);
        best_ld = g_ld;
      }
    }
    return *best;
  }

  void observe(const GameState& s, const RoundRecord& r) override {
    if (!synced_) {
      sync(s);
      return;
    }
    for (Elem x : r.offer)
      for (auto i : f_->containing(x)) {
        if (r.choice && x == *r.choice) --rem_[i];
        else dead_[i] = 1;
      }
  }

 private:
  void sync(const GameState& s) {
    rem_.assign(f_->size(), 0);
    dead_.assign(f_->size(), 0);
    for (std::size_t i = 0; i < f_->size(); ++i)
      for (Elem x : (*f_)[i]) {
        const Owner o = s.owner(x);
        if (o == Owner::Waiter) dead_[i] = 1;
        else if (o == Owner::Free) ++rem_[i];
      }
    synced_ = true;
  }

  std::shared_ptr<const SetFamily> f_;
  std::uint64_t q_;
  bool exact_;
  bool synced_ = false;
  std::vector<long double> inv_;
  std::vector<BigInt> pw_;
  std::vector<std::size_t> rem_;
  std::vector<char> dead_;
  std::vector<std::uint32_t> hits_, stamp_;
  std::uint32_t now_ = 0;
};

}  // namespace

std::unique_ptr<ClientStrategy> client_minimize_potential(std::shared_ptr<const SetFamily> f,
                                                          std::uint64_t q) {
  return std::make_unique<PotentialClient>(std::move(f), q);
}

TransversalWaiter::TransversalWaiter(std::shared_ptr<const SetFamily> f, std::uint64_t q)
    : f_(std::move(f)), q_(q) {
  if (q == 0) throw std::invalid_argument("q must be positive");
}

std::optional<std::size_t> TransversalWaiter::uncovered(const GameState& s) const {
  for (std::size_t i = 0; i < f_->size(); ++i) {
    const auto& set = (*f_)[i];
    if (std::all_of(set.begin(), set.end(), [&](Elem x) { return s.owner(x) == Owner::Waiter; }))
      return i;
  }
  return std::nullopt;
}

WaiterMove TransversalWaiter::offer(const GameState& s) {
  if (stage_.first_round == 0) stage_.first_round = s.round() + 1;
  if (auto bad = uncovered(s)) {
    certificate_ = (*f_)[*bad];
    stage_.ok = false;
    stage_.detail = "set " + std::to_string(*bad) + " fully claimed by Waiter";
    return Forfeit{Side::Waiter, s.round() + 1, stage_.name, stage_.detail};
  }
  const Elem e = s.board().size();
  std::vector<long double> score(e, 0);
  const long double denom = 2.0L * static_cast<long double>(q_) - 1.0L;
  for (const auto& set : f_->sets()) {
    std::size_t free = 0;
    bool hit = false;
    for (Elem x : set) {
      const Owner o = s.owner(x);
      if (o == Owner::Client) hit = true;
      else if (o == Owner::Free) ++free;
    }
    if (hit || free == 0) continue;
    const long double share = std::exp2(-static_cast<long double>(free) / denom) / free;
    for (Elem x : set)
      if (s.is_free(x)) score[x] += share;
  }
  auto pool = s.elements_of(Owner::Free);
  const auto k = static_cast<std::ptrdiff_t>(s.offer_size());
  std::partial_sort(pool.begin(), pool.begin() + k, pool.end(), [&](Elem a, Elem b) {
    return score[a] != score[b] ? score[a] > score[b] : a < b;
  });
  pool.resize(static_cast<std::size_t>(k));
  std::sort(pool.begin(), pool.end());
  return pool;
}

void TransversalWaiter::finish(const GameState& s) {
  stage_.last_round = s.round();
  if (!transversal_hit(*f_, s)) {
    stage_.ok = false;
    for (const auto& set : f_->sets())
      if (std::none_of(set.begin(), set.end(), [&](Elem x) { return s.owner(x) == Owner::Client; })) {
        certificate_ = set;
        break;
      }
    if (stage_.detail.empty()) stage_.detail = "a set ended without a Client element";
  }
}

std::unique_ptr<TransversalWaiter> waiter_force_transversal(std::shared_ptr<const SetFamily> f,
                                                            std::uint64_t q) {
  return std::make_unique<TransversalWaiter>(std::move(f), q);
}

bool transversal_hit(const SetFamily& f, const GameState& s) {
  return std::all_of(f.sets().begin(), f.sets().end(), [&](const auto& set) {
    return std::any_of(set.begin(), set.end(), [&](Elem x) { return s.owner(x) == Owner::Client; });
  });
}

long double cycle_family_size(Vertex n, Vertex m) {
  long double total = 0;
  for (Vertex k = std::max<Vertex>(m, 3); k <= n; ++k) {
    // n!/(n-k)! / (2k)
    long double falling = 1;
    for (Vertex i = 0; i < k; ++i) falling *= static_cast<long double>(n - i);
    total += falling / (2.0L * k);
  }
  return total;
}

long double cycle_family_phi(Vertex n, Vertex m, std::uint64_t q) {
  long double total = 0;
  const long double b = static_cast<long double>(q) + 1;
  for (Vertex k = std::max<Vertex>(m, 3); k <= n; ++k) {
    long double term = 1.0L / (2.0L * k);
    for (Vertex i = 0; i < k; ++i) term *= static_cast<long double>(n - i) / b;
    total += term;
  }
  return total;
}

SetFamily build_cycle_family(Vertex n, Vertex m, std::uint64_t budget) {
  if (m < 3 || m > n) throw std::invalid_argument("cycle family needs 3 <= m <= n");
  if (cycle_family_size(n, m) > static_cast<long double>(budget))
    throw std::length_error("cycle family exceeds enumeration budget");
  SetFamily f;
  std::vector<Vertex> path;
  std::vector<char> used(n, 0);
  // Cycles rooted at their least vertex s, oriented so path[1] < path.back().
  auto extend = [&](auto&& self) -> void {
    const Vertex s = path.front(), last = path.back();
    if (path.size() >= m && path[1] < last) {
      std::vector<Elem> edges;
      for (std::size_t i = 0; i + 1 < path.size(); ++i) edges.push_back(Board::pair_id(path[i], path[i + 1]));
      edges.push_back(Board::pair_id(last, s));
      f.add(std::move(edges));
    }
    for (Vertex w = s + 1; w < n; ++w) {
      if (used[w]) continue;
      used[w] = 1;
      path.push_back(w);
      self(self);
      path.pop_back();
      used[w] = 0;
    }
  };
  for (Vertex s = 0; s < n; ++s) {
    path = {s};
    used[s] = 1;
    extend(extend);
    used[s] = 0;
  }
  return f;
}

namespace {

struct KnPath {
  std::vector<Elem> edges;  // sorted
  std::vector<Vertex> verts;
};

// Unordered non-trivial paths of K_n (first vertex < last vertex).
std::vector<KnPath> all_paths(Vertex n, std::uint64_t budget) {
  long double count = 0;
  for (Vertex k = 2; k <= n; ++k) {
    long double falling = 1;
    for (Vertex i = 0; i < k; ++i) falling *= static_cast<long double>(n - i);
    count += falling / 2;
  }
  if (count > static_cast<long double>(budget)) throw std::length_error("path family exceeds enumeration budget");
  std::vector<KnPath> out;
  std::vector<Vertex> seq;
  std::vector<char> used(n, 0);
  auto extend = [&](auto&& self) -> void {
    if (seq.size() >= 2 && seq.front() < seq.back()) {
      KnPath p;
      p.verts = seq;
      for (std::size_t i = 0; i + 1 < seq.size(); ++i) p.edges.push_back(Board::pair_id(seq[i], seq[i + 1]));
      std::sort(p.edges.begin(), p.edges.end());
      out.push_back(std::move(p));
    }
    for (Vertex w = 0; w < n; ++w) {
      if (used[w]) continue;
      used[w] = 1;
      seq.push_back(w);
      self(self);
      seq.pop_back();
      used[w] = 0;
    }
  };
  extend(extend);
  return out;
}

}  // namespace

SetFamily build_path_tuple_family(Vertex n, unsigned r, std::uint64_t budget) {
  if (r == 0) throw std::invalid_argument("r must be at least 1");
  const auto paths = all_paths(n, budget);
  if (std::pow(static_cast<long double>(paths.size()), r) > static_cast<long double>(budget))
    throw std::length_error("path-tuple family exceeds enumeration budget");
  SetFamily f;
  std::vector<std::size_t> pick(r, 0);
  std::vector<Vertex> parent(n);
  while (true) {
    std::vector<Elem> edges;
    for (auto i : pick) edges.insert(edges.end(), paths[i].edges.begin(), paths[i].edges.end());
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    // Tree test: the union is acyclic and connected.
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](Vertex x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    bool acyclic = true;
    std::vector<char> touched(n, 0);
    std::size_t verts = 0;
    for (Elem e : edges) {
      auto [u, v] = Board::pair_of(e);
      for (Vertex x : {u, v})
        if (!touched[x]) {
          touched[x] = 1;
          ++verts;
        }
      const Vertex a = find(u), b = find(v);
      if (a == b) acyclic = false;
      else parent[a] = b;
    }
    if (acyclic && verts == edges.size() + 1) f.add(std::move(edges));
    std::size_t i = 0;
    while (i < r && ++pick[i] == paths.size()) pick[i++] = 0;
    if (i == r) break;
  }
  return f;
}

SetFamily build_labeled_path_family(Vertex n, std::uint64_t budget) {
  const auto paths = all_paths(n, budget / 2);
  SetFamily f;
  for (const auto& p : paths) {
    f.add(p.edges);
    f.add(p.edges);
  }
  return f;
}

}  // namespace wc
