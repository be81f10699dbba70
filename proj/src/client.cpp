#include "wc/client.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <random>
#include <sstream>
#include <stdexcept>

#include "wc/analysis.hpp"
#include "wc/counting.hpp"

namespace wc {

namespace {

class ArbitraryClient final : public ClientStrategy {
 public:
  ArbitraryClient() = default;
  explicit ArbitraryClient(std::uint64_t seed) : rng_(seed), random_(true) {}
  std::string name() const override { return random_ ? "random" : "arbitrary"; }
  ClientMove choose(const GameState&, const Offer& offer) override {
    if (!random_) return *std::min_element(offer.begin(), offer.end());
    std::uniform_int_distribution<std::size_t> pick(0, offer.size() - 1);
    return offer[pick(rng_)];
  }

 private:
  std::mt19937_64 rng_;
  bool random_ = false;
};

class GreedyDegreeClient final : public ClientStrategy {
 public:
  std::string name() const override { return "greedy_min_degree"; }
  ClientMove choose(const GameState& s, const Offer& offer) override {
    if (!s.board().is_graph()) return *std::min_element(offer.begin(), offer.end());
    auto key = [&](Elem x) {
      const auto [u, v] = Board::pair_of(x);
      const auto du = s.client_degree(u), dv = s.client_degree(v);
      return std::tuple(std::max(du, dv), std::min(du, dv), x);
    };
    return *std::min_element(offer.begin(), offer.end(),
                             [&](Elem a, Elem b) { return key(a) < key(b); });
  }
};

class ComponentClient final : public ClientStrategy {
 public:
  std::string name() const override { return "potential"; }

  ClientMove choose(const GameState& s, const Offer& offer) override {
    if (!s.board().is_graph()) return *std::min_element(offer.begin(), offer.end());
    sync(s);
    Elem best = offer.front();
    std::uint64_t best_cost = ~0ull;
    for (Elem x : offer) {
      const auto [u, v] = Board::pair_of(x);
      const Vertex a = find(u), b = find(v);
      const std::uint64_t cost = a == b ? 0 : 2ull * size_[a] * size_[b];
      if (cost < best_cost || (cost == best_cost && x < best)) {
        best = x;
        best_cost = cost;
      }
    }
    return best;
  }

  void observe(const GameState& s, const RoundRecord& r) override {
    if (!s.board().is_graph() || !r.choice) return;
    if (seen_ + 1 != s.client_count() || parent_.empty()) {
      seen_ = ~0ull;
      return;
    }
    const auto [u, v] = Board::pair_of(*r.choice);
    unite(u, v);
    seen_ = s.client_count();
  }

 private:
  void sync(const GameState& s) {
    if (!parent_.empty() && seen_ == s.client_count()) return;
    const Vertex n = s.board().n();
    parent_.resize(n);
    std::iota(parent_.begin(), parent_.end(), Vertex{0});
    size_.assign(n, 1);
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v : s.client_adj()[u])
        if (u < v) unite(u, v);
    seen_ = s.client_count();
  }
  Vertex find(Vertex v) {
    while (parent_[v] != v) v = parent_[v] = parent_[parent_[v]];
    return v;
  }
  void unite(Vertex u, Vertex v) {
    u = find(u);
    v = find(v);
    if (u == v) return;
    if (size_[u] < size_[v]) std::swap(u, v);
    parent_[v] = u;
    size_[u] += size_[v];
  }

  std::vector<Vertex> parent_;
  std::vector<std::uint64_t> size_;
  std::uint64_t seen_ = 0;
};

class RenamedClient final : public ClientStrategy {
 public:
  RenamedClient(std::unique_ptr<ClientStrategy> inner, std::string name)
      : inner_(std::move(inner)), name_(std::move(name)) {}
  std::string name() const override { return name_; }
  ClientMove choose(const GameState& s, const Offer& o) override { return inner_->choose(s, o); }
  void observe(const GameState& s, const RoundRecord& r) override { inner_->observe(s, r); }

 private:
  std::unique_ptr<ClientStrategy> inner_;
  std::string name_;
};

}  // namespace

std::unique_ptr<ClientStrategy> client_arbitrary() { return std::make_unique<ArbitraryClient>(); }

std::unique_ptr<ClientStrategy> client_random(std::uint64_t seed) {
  return std::make_unique<ArbitraryClient>(seed);
}

std::unique_ptr<ClientStrategy> client_greedy_min_degree() {
  return std::make_unique<GreedyDegreeClient>();
}

std::unique_ptr<ClientStrategy> client_component_potential() {
  return std::make_unique<ComponentClient>();
}

std::unique_ptr<ClientStrategy> client_avoid_big_component(Vertex n, std::uint64_t q, unsigned r) {
  auto f = std::make_shared<const SetFamily>(build_path_tuple_family(n, r));
  return std::make_unique<RenamedClient>(client_minimize_potential(f, q), "avoid_big_component");
}

std::unique_ptr<ClientStrategy> client_avoid_big_component_paths(Vertex n, std::uint64_t q) {
  auto f = std::make_shared<const SetFamily>(build_labeled_path_family(n));
  return std::make_unique<RenamedClient>(client_minimize_potential(f, q), "avoid_big_component");
}

BigComponentAudit audit_big_component(const SetFamily& f, std::uint64_t q, unsigned r,
                                      const GameState& end) {
  BigComponentAudit a;
  a.phi0 = family_potential_phi(f, q).phi;
  a.completed = family_potential_phi(f, q, end).completed;
  a.completed_ok = static_cast<long double>(a.completed) <= a.phi0 * (1 + kPhiTolerance);

  const SimpleGraph g = SimpleGraph::client_graph(end);
  const auto label = component_labels(g);
  std::vector<std::size_t> count(g.n() + 1, 0);
  for (Vertex v = 0; v < g.n(); ++v) ++count[label[v]];
  const auto big = static_cast<Vertex>(std::max_element(count.begin(), count.end()) - count.begin());
  a.largest = count[big];

  // BFS spanning tree of the largest component.
  std::vector<Vertex> local(g.n(), g.n());
  std::vector<Vertex> order;
  std::vector<Edge> tree;
  Vertex root = 0;
  while (label[root] != big) ++root;
  local[root] = 0;
  order.push_back(root);
  for (std::size_t i = 0; i < order.size(); ++i)
    for (Vertex w : g.neighbors(order[i]))
      if (local[w] == g.n()) {
        local[w] = static_cast<Vertex>(order.size());
        order.push_back(w);
        tree.emplace_back(local[order[i]], local[w]);
      }
  const auto t = SimpleGraph::from_edges(static_cast<Vertex>(order.size()), tree);
  if (a.largest >= 3) a.tuples_in_largest = count_path_tuples(t, r).count;
  else if (a.largest == 2) a.tuples_in_largest = 1;
  // The floor is only claimed for trees on at least three vertices.
  a.tuple_floor = a.largest >= 3 ? std::pow(static_cast<long double>(a.largest) / 4, 2.0L * r) : 0;
  a.floor_ok = a.tuple_floor <= static_cast<long double>(a.tuples_in_largest) &&
               a.tuples_in_largest <= a.completed;
  return a;
}

MinDegreeClient::MinDegreeClient(Vertex n, std::uint64_t q, std::optional<std::uint64_t> seed)
    : n_(n), q_(q), guaranteed_(100 * q >= 49ull * n), touched_(n, 0) {
  if (seed) {
    picker_ = ArbitraryPicker(*seed);
    random_ = true;
  }
}

std::optional<Vertex> MinDegreeClient::x() const {
  if (!boundary_) return std::nullopt;
  return boundary_->x;
}

ClientMove MinDegreeClient::choose(const GameState&, const Offer& offer) {
  Offer pool;
  if (boundary_) {
    const Vertex x = boundary_->x;
    for (Elem e : offer) {
      const auto [u, v] = Board::pair_of(e);
      if (u != x && v != x) pool.push_back(e);
    }
  }
  if (pool.empty()) pool = offer;
  if (!random_) return *std::min_element(pool.begin(), pool.end());
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  return pool[pick(picker_.rng())];
}

void MinDegreeClient::observe(const GameState& s, const RoundRecord& r) {
  if (!r.choice) return;
  const auto [u, v] = Board::pair_of(*r.choice);
  for (Vertex w : {u, v})
    if (!touched_[w]) {
      touched_[w] = 1;
      ++u_size_;
    }
  maybe_enter_stage_two(s);
}

void MinDegreeClient::maybe_enter_stage_two(const GameState& s) {
  if (boundary_ || 4ull * u_size_ < n_) return;
  Boundary b;
  b.round = s.client_count();
  b.k = u_size_;
  const Vertex c = (n_ + 3) / 4;
  b.k_ok = b.k == c || b.k == c + 1;
  long double sum = 0;
  bool have = false;
  for (Vertex w = 0; w < n_; ++w) {
    if (touched_[w]) continue;
    sum += s.waiter_degree(w);
    if (!have || s.waiter_degree(w) > s.waiter_degree(b.x)) {
      b.x = w;
      have = true;
    }
  }
  const long double k = b.k, n = n_, q = static_cast<long double>(q_);
  b.average = sum / (n - k);
  b.bound = k * (q - k + 2) / (2 * (n - k));
  b.average_ok = b.average >= b.bound - 1e-12L;
  b.x_waiter_degree = s.waiter_degree(b.x);
  boundary_ = b;
}

bool MinDegreeClient::check(const GameState& s, std::string* why) const {
  std::ostringstream os;
  bool ok = true;
  std::uint32_t mind = ~0u;
  for (Vertex w = 0; w < n_; ++w) mind = std::min(mind, s.client_degree(w));
  if (boundary_) {
    const auto dx = s.client_degree(boundary_->x);
    os << "k=" << boundary_->k << " x=" << boundary_->x << " dW(x)=" << boundary_->x_waiter_degree
       << " avg=" << static_cast<double>(boundary_->average)
       << " bound=" << static_cast<double>(boundary_->bound) << " dC(x)=" << dx;
    ok = boundary_->k_ok && boundary_->average_ok;
    if (guaranteed_) ok = ok && dx <= 1;
  } else {
    os << "stage I never ended, |U|=" << u_size_;
  }
  os << " min_degree=" << mind;
  if (guaranteed_) ok = ok && mind <= 1;
  if (why) *why = os.str();
  return ok;
}

std::unique_ptr<MinDegreeClient> client_min_degree(Vertex n, std::uint64_t q,
                                                   std::optional<std::uint64_t> seed) {
  return std::make_unique<MinDegreeClient>(n, q, seed);
}

}  // namespace wc
