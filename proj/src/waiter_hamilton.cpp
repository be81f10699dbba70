#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

#include "wc/analysis.hpp"
#include "wc/waiters.hpp"

namespace wc {

namespace {

constexpr std::size_t kRotationCap = 600;

std::vector<Vertex> rotated(const std::vector<Vertex>& p, std::size_t i) {
  std::vector<Vertex> q(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(i + 1));
  q.insert(q.end(), p.rbegin(), p.rend() - static_cast<std::ptrdiff_t>(i + 1));
  return q;
}

// Breadth-first Posa rotations of base with the front fixed. Calls visit on
// every path reached (base first) until it returns true or cap endpoints
// have been seen; returns that path or empty.
template <class Visit>
std::vector<Vertex> rotate_until(const SimpleGraph& g, const std::vector<Vertex>& base,
                                 std::size_t cap, Visit&& visit) {
  if (visit(base)) return base;
  std::vector<char> seen(g.n(), 0);
  std::vector<std::uint32_t> pos(g.n(), 0);
  std::deque<std::vector<Vertex>> queue{base};
  seen[base.back()] = 1;
  std::size_t count = 1;
  while (!queue.empty() && count < cap) {
    const std::vector<Vertex> p = std::move(queue.front());
    queue.pop_front();
    for (std::uint32_t i = 0; i < p.size(); ++i) pos[p[i]] = i + 1;
    const Vertex end = p.back();
    for (Vertex w : g.neighbors(end)) {
      if (!pos[w]) continue;
      const std::size_t i = pos[w] - 1;
      if (i + 2 >= p.size()) continue;
      const Vertex z = p[i + 1];
      if (seen[z]) continue;
      seen[z] = 1;
      auto r = rotated(p, i);
      if (visit(r)) return r;
      queue.push_back(std::move(r));
      if (++count >= cap) break;
    }
    for (Vertex v : p) pos[v] = 0;
  }
  return {};
}

}  // namespace

HamiltonianExpanderWaiter::HamiltonianExpanderWaiter(std::vector<Vertex> vs, std::uint64_t q,
                                                     std::string name, ExpanderOptions verify)
    : StagedWaiter(std::move(name), q), vs_(std::move(vs)), q_(q) {
  const Preflight p = preflight(static_cast<Vertex>(vs_.size()), q);
  if (!p.feasible) throw std::invalid_argument(p.summary());
  inner_ = std::make_unique<ExpanderCyclesWaiter>(vs_, 6, q, "expander_cycles", verify);
  adopt(inner_.get(), "expander");
}

Preflight HamiltonianExpanderWaiter::preflight(Vertex n, std::uint64_t q) {
  Preflight p = ExpanderCyclesWaiter::preflight(n, 6, q);
  p.expect(static_cast<double>(q) < kBiasConstant * n, "q < n/30000");
  return p;
}

SimpleGraph HamiltonianExpanderWaiter::local_graph(const GameState& s) const {
  return SimpleGraph::client_graph(s, vs_);
}

// Extends path_ by greedy steps and rotations until it closes to a Hamilton
// cycle or no rotation within the cap helps. True on a Hamilton cycle.
bool HamiltonianExpanderWaiter::improve(const GameState& s) {
  const SimpleGraph g = local_graph(s);
  const Vertex n = g.n();
  if (path_.empty()) path_.push_back(0);
  std::vector<char> on(n, 0);
  for (Vertex v : path_) on[v] = 1;

  auto off_path_neighbour = [&](Vertex v) -> Vertex {
    for (Vertex w : g.neighbors(v))
      if (!on[w]) return w;
    return n;
  };
  auto extend = [&] {
    for (int side = 0; side < 2; ++side) {
      for (Vertex w = off_path_neighbour(path_.back()); w < n; w = off_path_neighbour(path_.back())) {
        on[w] = 1;
        path_.push_back(w);
      }
      std::reverse(path_.begin(), path_.end());
    }
  };
  // Opens a cycle on the path's vertex set at a vertex with an outside
  // neighbour; the graph is connected by then.
  auto open_cycle = [&](const std::vector<Vertex>& c) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      const Vertex w = off_path_neighbour(c[i]);
      if (w == n) continue;
      std::vector<Vertex> p;
      for (std::size_t k = 1; k <= c.size(); ++k) p.push_back(c[(i + k) % c.size()]);
      p.push_back(w);
      on[w] = 1;
      path_ = std::move(p);
      return true;
    }
    return false;
  };

  while (true) {
    extend();
    const Vertex front = path_.front();
    if (path_.size() == n) {
      auto c = rotate_until(g, path_, kRotationCap, [&](const std::vector<Vertex>& p) {
        return g.has_edge(p.back(), front);
      });
      if (c.empty()) return false;
      cycle_.clear();
      for (Vertex v : c) cycle_.push_back(vs_[v]);
      path_ = std::move(c);
      return true;
    }
    auto p = rotate_until(g, path_, kRotationCap, [&](const std::vector<Vertex>& r) {
      return off_path_neighbour(r.back()) < n || (r.size() >= 3 && g.has_edge(r.back(), front));
    });
    if (p.empty()) return false;
    const Vertex w = off_path_neighbour(p.back());
    if (w < n) {
      path_ = std::move(p);
      path_.push_back(w);
      on[w] = 1;
    } else if (!open_cycle(p)) {
      return false;
    }
  }
}

WaiterMove HamiltonianExpanderWaiter::plan(const GameState& s) {
  if (stage_ == 0) {
    if (!inner_->goal_reached()) return delegate(*inner_, s);
    stage_ = 1;
    begin_stage("boosters", s);
    if (improve(s)) {
      end_stage(s, true, "Hamilton cycle after 0 booster rounds");
      stage_ = 2;
      reach_goal(s);
      return Offer{};
    }
    progress_ = {path_.size(), false};
  }
  if (stage_ != 1) return Offer{};

  // Rotation-derived boosters: a path from z to x plus the pair zx closes a
  // cycle on the current path's vertex set.
  const SimpleGraph g = local_graph(s);
  const std::size_t need = q_plan() + 1;
  Offer a;
  witnesses_.clear();
  rotate_until(g, path_, kRotationCap, [&](const std::vector<Vertex>& pz) {
    std::vector<Vertex> rev(pz.rbegin(), pz.rend());
    const Vertex z = rev.front();
    rotate_until(g, rev, kRotationCap, [&](const std::vector<Vertex>& px) {
      const Vertex x = px.back();
      if (x == z || g.has_edge(x, z)) return false;
      const Elem e = Board::pair_id(vs_[x], vs_[z]);
      if (!avail(s, e) || std::find(a.begin(), a.end(), e) != a.end()) return false;
      a.push_back(e);
      witnesses_.push_back(px);
      return a.size() >= need;
    });
    return a.size() >= need;
  });
  if (g.n() <= kExactBudget) {
    const auto exact = boosters_exact(g);
    for (Elem e : a) {
      auto [u, v] = Board::pair_of(e);
      Vertex lu = 0, lv = 0;
      for (Vertex i = 0; i < vs_.size(); ++i) {
        if (vs_[i] == u) lu = i;
        if (vs_[i] == v) lv = i;
      }
      if (std::find(exact.begin(), exact.end(), Edge{std::min(lu, lv), std::max(lu, lv)}) == exact.end())
        boosters_verified_ = false;
    }
  }
  if (a.size() < need)
    return forfeit(s, "only " + std::to_string(a.size()) + " free rotation boosters");
  return a;
}

void HamiltonianExpanderWaiter::absorb(const GameState& s, const Offer&, Elem choice) {
  if (stage_ != 1) return;
  ++booster_rounds_;
  const auto [u, v] = Board::pair_of(choice);
  for (const auto& w : witnesses_) {
    const Vertex a = vs_[w.front()], b = vs_[w.back()];
    if ((a == u && b == v) || (a == v && b == u)) {
      path_ = w;
      break;
    }
  }
  const bool ham = improve(s);
  const std::pair<std::size_t, bool> now{path_.size(), ham};
  if (!(progress_ < now)) monotone_ = false;
  progress_ = now;
  if (ham) {
    end_stage(s, monotone_, "Hamilton cycle after " + std::to_string(booster_rounds_) + " booster rounds");
    stage_ = 2;
    reach_goal(s);
  }
}

void HamiltonianExpanderWaiter::on_finish(const GameState& s) {
  check(goal_reached(), "no Hamilton cycle");
  if (!cycle_.empty()) {
    const SimpleGraph g = SimpleGraph::client_graph(s);
    check(cycle_.size() == vs_.size() && is_cycle(g, cycle_), "Hamilton cycle certificate failed");
  }
  check(monotone_, "a booster round did not improve the path");
  check(boosters_verified_, "an offered pair is not a booster");
}

// ---------------------------------------------------------------------------

Preflight PancyclicWaiter::preflight(Vertex n, std::uint64_t q) {
  Preflight p;
  p.require(q >= 1, "q >= 1");
  p.require(10 * q < 11ull * n, "q < 1.1n (above it Client keeps his graph acyclic)");
  p.require(n >= 14, "n >= 14");
  if (!p.feasible) return p;
  const Vertex n2 = n / 7 - 1, n1 = n - n2;
  const auto a = HamiltonianExpanderWaiter::preflight(n1, q);
  const auto b = HamiltonianExpanderWaiter::preflight(n2, q);
  p.require(a.feasible, "V1 pipeline: " + a.summary());
  p.require(b.feasible, "V2 pipeline: " + b.summary());
  p.require((n1 + 5) / 6 >= n2 + 1, "ceil(n1/6) >= n2 + 1");
  for (const auto& u : a.unproven) p.expect(false, "V1: " + u);
  for (const auto& u : b.unproven) p.expect(false, "V2: " + u);
  p.expect(static_cast<double>(q) + 1 <= n2 / 120.0, "q+1 <= n2/120");
  return p;
}

PancyclicWaiter::PancyclicWaiter(Vertex n, std::uint64_t q, ExpanderOptions verify)
    : StagedWaiter("pancyclic", q), n_(n), q_(q) {
  const Preflight p = preflight(n, q);
  if (!p.feasible) throw std::invalid_argument(p.summary());
  const Vertex n2 = n / 7 - 1, n1 = n - n2;
  for (Vertex v = 0; v < n; ++v) (v < n1 ? v1_ : v2_).push_back(v);
  g1_ = std::make_unique<HamiltonianExpanderWaiter>(v1_, q, "hamiltonian_expander", verify);
  g2_ = std::make_unique<HamiltonianExpanderWaiter>(v2_, q, "hamiltonian_expander", verify);
  adopt(g1_.get(), "G1");
  adopt(g2_.get(), "G2");
}

bool PancyclicWaiter::prepare_long(const GameState& s) {
  // Hamilton path of G2 from w1, then the endpoints of its rotations.
  const auto& c = g2_->hamilton_cycle();
  const auto at = std::find(c.begin(), c.end(), w1_);
  if (at == c.end()) return false;
  std::vector<Vertex> local_of(s.board().n(), 0);
  for (Vertex i = 0; i < v2_.size(); ++i) local_of[v2_[i]] = i;
  std::vector<Vertex> path;
  for (std::size_t k = 0; k < c.size(); ++k)
    path.push_back(local_of[c[(static_cast<std::size_t>(at - c.begin()) + k) % c.size()]]);
  closure_ = std::make_unique<RotationClosure>(SimpleGraph::client_graph(s, v2_), path);
  s_.clear();
  for (Vertex z : closure_->endpoints()) s_.push_back(v2_[z]);
  return s_.size() >= q_plan() + 1;
}

WaiterMove PancyclicWaiter::plan(const GameState& s) {
  const std::size_t need = q_plan() + 1;
  if (stage_ == 0) {
    stage_ = 1;
    begin_stage("G1", s);
  }
  if (stage_ == 1) {
    if (!g1_->goal_reached()) return delegate(*g1_, s);
    end_stage(s, true);
    stage_ = 2;
    begin_stage("G2", s);
  }
  if (stage_ == 2) {
    if (!g2_->goal_reached()) return delegate(*g2_, s);
    end_stage(s, true);
    h1_ = g1_->hamilton_cycle();
    stage_ = 3;
    begin_stage("join", s);
  }
  if (stage_ == 3) {
    Offer a;
    for (Vertex w : v2_) {
      const Elem e = Board::pair_id(h1_.back(), w);
      if (avail(s, e)) a.push_back(e);
      if (a.size() == need) break;
    }
    if (a.size() < need) return forfeit(s, "too few free edges from v_{n1} to V2");
    return a;
  }
  if (stage_ == 4) {
    if (j_ + 1 < h1_.size()) {
      Offer a;
      for (Vertex z : s_) {
        const Elem e = Board::pair_id(h1_[j_], z);
        if (avail(s, e)) a.push_back(e);
        if (a.size() == need) break;
      }
      if (a.size() < need) return forfeit(s, "too few free edges from v_j to S");
      return a;
    }
    end_stage(s, true, std::to_string(joins_.size()) + " long cycles");
    stage_ = 5;
    reach_goal(s);
  }
  return Offer{};
}

void PancyclicWaiter::absorb(const GameState& s, const Offer&, Elem choice) {
  const auto [u, v] = Board::pair_of(choice);
  if (stage_ == 3) {
    w1_ = u == h1_.back() ? v : u;
    const bool ok = prepare_long(s);
    end_stage(s, ok, "|S| = " + std::to_string(s_.size()));
    if (!ok) check(false, "|S| < q+1");
    stage_ = 4;
    j_ = 0;
    begin_stage("long cycles", s);
  } else if (stage_ == 4) {
    joins_.emplace_back(j_, u == h1_[j_] ? v : u);
    ++j_;
  }
}

void PancyclicWaiter::on_finish(const GameState& s) {
  check(goal_reached(), "pancyclic stages not completed");
  if (!goal_reached()) return;
  certs_.clear();
  std::vector<char> have(n_ + 1, 0);
  for (const auto& c : g1_->short_cycles())
    if (!have[c.cycle.size()]) {
      have[c.cycle.size()] = 1;
      certs_.push_back(c);
    }
  std::vector<Vertex> local_of(s.board().n(), 0);
  for (Vertex i = 0; i < v2_.size(); ++i) local_of[v2_[i]] = i;
  for (auto [j, w] : joins_) {
    CycleCertificate c;
    c.stage = "long cycles";
    c.cycle.assign(h1_.begin() + static_cast<std::ptrdiff_t>(j), h1_.end());
    for (Vertex z : closure_->path_to(local_of[w])) c.cycle.push_back(v2_[z]);
    if (!have[c.cycle.size()]) {
      have[c.cycle.size()] = 1;
      certs_.push_back(std::move(c));
    }
  }
  std::sort(certs_.begin(), certs_.end(),
            [](const auto& a, const auto& b) { return a.cycle.size() < b.cycle.size(); });
  std::string why;
  const bool ok = certificates_hold(SimpleGraph::client_graph(s), certs_, &why);
  bool all = ok;
  for (Vertex k = 3; k <= n_; ++k) all = all && have[k];
  certified_ = all;
  check(ok, "certificate failed: " + why);
  check(all, "some cycle length in 3..n has no certificate");
}

}  // namespace wc
