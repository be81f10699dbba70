#include "wc/cycle_potential.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "wc/set_family.hpp"

namespace wc {

namespace {

using Mask = std::uint32_t;

struct Weighted {
  std::vector<Mask> adj;               // usable edges
  std::vector<std::vector<double>> w;  // edge weights
};

// Edges not owned by Waiter and not in `skip`; Client edges weigh 1,
// free ones 1/(q+1).
Weighted usable(const GameState& s, std::uint64_t q, const Offer& skip) {
  const Vertex n = s.board().n();
  Weighted g;
  g.adj.assign(n, 0);
  g.w.assign(n, std::vector<double>(n, 0.0));
  std::vector<char> skipped(s.board().size(), 0);
  for (Elem x : skip) skipped[x] = 1;
  const double f = 1.0 / static_cast<double>(q + 1);
  for (Vertex v = 1; v < n; ++v)
    for (Vertex u = 0; u < v; ++u) {
      const Elem id = Board::pair_id(u, v);
      const Owner o = s.owner(id);
      if (o == Owner::Waiter || skipped[id]) continue;
      g.adj[u] |= Mask{1} << v;
      g.adj[v] |= Mask{1} << u;
      g.w[u][v] = g.w[v][u] = o == Owner::Client ? 1.0 : f;
    }
  return g;
}

// Sums of path weights from `start` over `allowed` vertices, by end vertex,
// counting paths on at least min_verts vertices.
std::vector<double> path_sums(const Weighted& g, Vertex start, Mask allowed, Vertex min_verts,
                              std::vector<double>& buf) {
  const auto n = static_cast<Vertex>(g.adj.size());
  std::vector<double> total(n, 0.0);
  // Masks are over allowed-vertex positions; start is implicit.
  std::vector<Vertex> pos;
  for (Vertex v = 0; v < n; ++v)
    if ((allowed >> v) & 1u && v != start) pos.push_back(v);
  const auto k = static_cast<Vertex>(pos.size());
  std::vector<Mask> local_adj(k, 0);
  std::vector<double> from_start(k, 0.0);
  for (Vertex i = 0; i < k; ++i) {
    for (Vertex j = 0; j < k; ++j)
      if ((g.adj[pos[i]] >> pos[j]) & 1u) local_adj[i] |= Mask{1} << j;
    if ((g.adj[start] >> pos[i]) & 1u) from_start[i] = g.w[start][pos[i]];
  }
  const std::size_t masks = std::size_t{1} << k;
  buf.assign(masks * k, 0.0);
  for (Vertex i = 0; i < k; ++i)
    if (from_start[i] != 0.0) buf[(std::size_t{1} << i) * k + i] = from_start[i];
  for (std::size_t mask = 1; mask < masks; ++mask) {
    const double* row = &buf[mask * k];
    const int verts = std::popcount(static_cast<Mask>(mask)) + 1;
    Mask ends = static_cast<Mask>(mask);
    while (ends) {
      const int v = std::countr_zero(ends);
      ends &= ends - 1;
      const double val = row[v];
      if (val == 0.0) continue;
      if (verts >= static_cast<int>(min_verts)) total[pos[v]] += val;
      Mask next = local_adj[v] & ~static_cast<Mask>(mask);
      const auto& wv = g.w[pos[v]];
      while (next) {
        const int w = std::countr_zero(next);
        next &= next - 1;
        buf[(mask | (std::size_t{1} << w)) * k + w] += val * wv[pos[w]];
      }
    }
  }
  return total;
}

}  // namespace

CyclePotential::CyclePotential(Vertex n, Vertex m, std::uint64_t q) : n_(n), m_(m), q_(q) {
  if (n > 24) throw std::length_error("implicit cycle potential supports n <= 24");
  if (m < 3 || m > n) throw std::invalid_argument("cycle potential needs 3 <= m <= n");
  if (q == 0) throw std::invalid_argument("q must be positive");
}

long double CyclePotential::phi(const GameState& s) const {
  const Weighted g = usable(s, q_, {});
  std::vector<double> buf;
  long double total = 0;
  for (Vertex start = 0; start + 2 < n_; ++start) {
    // Cycles through start whose other vertices are all larger.
    const Mask above = static_cast<Mask>(((std::uint64_t{1} << n_) - 1) & ~((std::uint64_t{2} << start) - 1));
    const auto sums = path_sums(g, start, above, m_, buf);
    for (Vertex v = start + 1; v < n_; ++v)
      if ((g.adj[v] >> start) & 1u) total += static_cast<long double>(sums[v]) * g.w[v][start];
  }
  return total / 2;  // each cycle is traversed in both directions
}

std::vector<long double> CyclePotential::choice_weights(const GameState& s,
                                                        const Offer& offer) const {
  const Weighted g = usable(s, q_, offer);
  std::vector<long double> out(offer.size(), -1);
  std::vector<std::pair<Vertex, Vertex>> ends(offer.size());
  for (std::size_t i = 0; i < offer.size(); ++i) ends[i] = Board::pair_of(offer[i]);
  const Mask all = static_cast<Mask>((std::uint64_t{1} << n_) - 1);
  std::vector<double> buf;
  // Greedy vertex cover of the offered edges picks the DP roots.
  while (std::any_of(out.begin(), out.end(), [](long double x) { return x < 0; })) {
    std::vector<int> load(n_, 0);
    for (std::size_t i = 0; i < offer.size(); ++i)
      if (out[i] < 0) ++load[ends[i].first], ++load[ends[i].second];
    const auto root = static_cast<Vertex>(std::max_element(load.begin(), load.end()) - load.begin());
    const auto sums = path_sums(g, root, all, m_, buf);
    for (std::size_t i = 0; i < offer.size(); ++i) {
      if (out[i] >= 0) continue;
      if (ends[i].first == root) out[i] = sums[ends[i].second];
      else if (ends[i].second == root) out[i] = sums[ends[i].first];
    }
  }
  return out;
}

namespace {

class ImplicitCycleClient final : public ClientStrategy {
 public:
  ImplicitCycleClient(Vertex n, std::uint64_t q, Vertex m) : pot_(n, m, q) {}
  std::string name() const override { return "avoid_cycles"; }
  ClientMove choose(const GameState& s, const Offer& offer) override {
    const auto w = pot_.choice_weights(s, offer);
    std::size_t best = 0;
    for (std::size_t i = 1; i < offer.size(); ++i) {
      const long double tol = kPhiTolerance * std::max<long double>(1, std::fabs(w[best]));
      if (w[i] < w[best] - tol || (std::fabs(w[i] - w[best]) <= tol && offer[i] < offer[best])) best = i;
    }
    return offer[best];
  }

 private:
  CyclePotential pot_;
};

class NamedClient final : public ClientStrategy {
 public:
  NamedClient(std::unique_ptr<ClientStrategy> inner, std::string name)
      : inner_(std::move(inner)), name_(std::move(name)) {}
  std::string name() const override { return name_; }
  ClientMove choose(const GameState& s, const Offer& o) override { return inner_->choose(s, o); }
  void observe(const GameState& s, const RoundRecord& r) override { inner_->observe(s, r); }

 private:
  std::unique_ptr<ClientStrategy> inner_;
  std::string name_;
};

}  // namespace

std::unique_ptr<ClientStrategy> client_avoid_cycles(Vertex n, std::uint64_t q, Vertex m,
                                                    bool force_implicit) {
  if (m < 3 || m > n) throw std::invalid_argument("avoid_cycles needs 3 <= m <= n");
  if (!force_implicit && cycle_family_size(n, m) <= static_cast<long double>(kFamilyBudget) / 5) {
    auto f = std::make_shared<const SetFamily>(build_cycle_family(n, m));
    return std::make_unique<NamedClient>(client_minimize_potential(f, q), "avoid_cycles");
  }
  return std::make_unique<ImplicitCycleClient>(n, q, m);
}

}  // namespace wc
