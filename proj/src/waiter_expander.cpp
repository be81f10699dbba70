#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "wc/analysis.hpp"
#include "wc/waiters.hpp"

namespace wc {

namespace {

std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

}  // namespace

HalfExpanderWaiter::HalfExpanderWaiter(std::vector<Vertex> v1, std::vector<Vertex> v2, unsigned d,
                                       std::uint64_t q, ExpanderOptions verify)
    : StagedWaiter("half_expander", q), v1_(std::move(v1)), v2_(std::move(v2)), d_(d), q_(q),
      verify_(verify) {
  const Preflight p = preflight(v1_.size(), v2_.size(), d, q);
  if (!p.feasible) throw std::invalid_argument(p.summary());
  const std::size_t wn = 5 * v1_.size() / 6;
  w_.assign(v2_.begin(), v2_.begin() + static_cast<std::ptrdiff_t>(wn));
  rest_.assign(v2_.begin() + static_cast<std::ptrdiff_t>(wn), v2_.end());
  deg1_.assign(v1_.size(), 0);
  degw_.assign(w_.size(), 0);
  cursor_.assign(v1_.size(), 0);
  rest_used_.assign(rest_.size(), 0);
}

Preflight HalfExpanderWaiter::preflight(std::size_t n1, std::size_t n2, unsigned d, std::uint64_t q) {
  Preflight p;
  p.require(d >= 1, "d >= 1");
  p.require(q >= 1, "q >= 1");
  p.require(n1 >= 6, "|V1| >= 6");
  p.require(n2 + 1 >= n1, "|V2| >= |V1| - 1");
  if (!p.feasible) return p;
  const std::size_t rest = n2 - 5 * n1 / 6;
  p.require(rest >= q + 1, "|V2 \\ W| >= q+1");
  p.expect(static_cast<double>(q) <= static_cast<double>(n1) / (150.0 * d), "q <= n/(150d)");
  p.expect(static_cast<double>(rest) - static_cast<double>(n1) / 7.0 > static_cast<double>((q + 1) * d),
           "|V2 \\ W| - n/7 > (q+1)d");
  return p;
}

SimpleGraph HalfExpanderWaiter::bipartite(const GameState& s) const {
  std::vector<Vertex> all = v1_;
  all.insert(all.end(), v2_.begin(), v2_.end());
  std::vector<Vertex> index(s.board().n(), static_cast<Vertex>(-1));
  for (Vertex i = 0; i < all.size(); ++i) index[all[i]] = i;
  SimpleGraph g(static_cast<Vertex>(all.size()));
  const auto n1 = static_cast<Vertex>(v1_.size());
  for (Vertex i = 0; i < n1; ++i)
    for (Vertex w : s.client_adj()[v1_[i]])
      if (index[w] != static_cast<Vertex>(-1) && index[w] >= n1) g.add_edge(i, index[w]);
  std::vector<Vertex> left(n1);
  std::iota(left.begin(), left.end(), 0);
  g.set_bipartition(left);
  return g;
}

WaiterMove HalfExpanderWaiter::plan(const GameState& s) {
  if (stage_ == 0) {
    stage_ = 1;
    begin_stage("balance", s);
  }
  if (stage_ == 1) {
    WaiterMove m = stage_one(s);
    if (stage_ == 1) return m;
  }
  if (stage_ == 2) {
    const std::size_t need = q_plan() + 1;
    while (ui_ < u_.size()) {
      if (uj_ == d_) {
        ++ui_, uj_ = 0;
        continue;
      }
      const Vertex x = u_[ui_];
      Offer a;
      for (std::size_t i = 0; i < rest_.size() && a.size() < need; ++i) {
        if (rest_used_[i]) continue;
        const Elem e = Board::pair_id(x, rest_[i]);
        if (avail(s, e)) a.push_back(e);
      }
      if (a.size() < need) return forfeit(s, "fewer than q+1 free edges into Y");
      return a;
    }
    report_.verdict = check_half_expander(bipartite(s), d_, 2.0 / (3.0 * d_), verify_);
    end_stage(s, report_.verdict.holds && report_.disjoint_fresh,
              std::to_string(u_.size()) + " exceptional vertices; " + to_string(report_.verdict.mode));
    stage_ = 3;
    reach_goal(s);
  }
  return Offer{};
}

WaiterMove HalfExpanderWaiter::stage_one(const GameState& s) {
  const std::size_t need = q_plan() + 1;
  // Left vertex of least Client degree, offered towards the W-vertices of
  // least degree; more left vertices only when one runs short.
  Offer a;
  std::vector<std::size_t> ys;
  std::vector<char> used(v1_.size(), 0);
  while (a.size() < need) {
    std::size_t xi = v1_.size();
    for (std::size_t i = 0; i < v1_.size(); ++i)
      if (!used[i] && cursor_[i] < w_.size() && (xi == v1_.size() || deg1_[i] < deg1_[xi])) xi = i;
    if (xi == v1_.size()) break;
    used[xi] = 1;
    ys.clear();
    for (std::size_t j = 0; j < w_.size(); ++j)
      if (avail(s, Board::pair_id(v1_[xi], w_[j]))) ys.push_back(j);
    if (ys.empty()) {
      cursor_[xi] = w_.size();  // exhausted
      continue;
    }
    const std::size_t take = std::min(ys.size(), need - a.size());
    std::partial_sort(ys.begin(), ys.begin() + static_cast<std::ptrdiff_t>(take), ys.end(),
                      [&](std::size_t p, std::size_t q) {
                        return degw_[p] != degw_[q] ? degw_[p] < degw_[q] : p < q;
                      });
    for (std::size_t k = 0; k < take; ++k) a.push_back(Board::pair_id(v1_[xi], w_[ys[k]]));
  }
  if (a.size() == need) {
    ++report_.stage_one_rounds;
    return a;
  }
  // Fewer than q+1 edges of G' remain.
  start_stage_two(s);
  return Offer{};
}

void HalfExpanderWaiter::absorb(const GameState&, const Offer&, Elem choice) {
  if (stage_ != 1 && stage_ != 2) return;
  const auto [u, v] = Board::pair_of(choice);
  if (stage_ == 1) {
    for (std::size_t i = 0; i < v1_.size(); ++i)
      if (v1_[i] == u || v1_[i] == v) ++deg1_[i];
    for (std::size_t j = 0; j < w_.size(); ++j)
      if (w_[j] == u || w_[j] == v) ++degw_[j];
    return;
  }
  const Vertex y = u == u_[ui_] ? v : u;
  for (std::size_t i = 0; i < rest_.size(); ++i)
    if (rest_[i] == y) rest_used_[i] = 1;
  for (std::size_t k = 0; k < fresh_.size(); ++k)
    if (k != ui_ && std::find(fresh_[k].begin(), fresh_[k].end(), y) != fresh_[k].end())
      report_.disjoint_fresh = false;
  fresh_[ui_].push_back(y);
  ++uj_;
}

void HalfExpanderWaiter::start_stage_two(const GameState& s) {
  const SimpleGraph h = bipartite(s);
  const std::size_t n = v1_.size();
  std::vector<Vertex> left(n);
  std::iota(left.begin(), left.end(), 0);

  // Sets between n/(7d) and 2n/(3d) should already expand; sampled.
  {
    const std::size_t lo = std::max<std::size_t>(1, ceil_div(n, 7 * d_));
    const std::size_t hi = std::min(n, 2 * n / (3 * d_));
    std::mt19937_64 rng(verify_.seed ^ 0x5bd1e995u);
    std::vector<Vertex> pool = left;
    for (std::size_t r = 0; r < 200 && lo <= hi; ++r) {
      const std::size_t k = std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
      for (std::size_t i = 0; i < k; ++i)
        std::swap(pool[i], pool[std::uniform_int_distribution<std::size_t>(i, n - 1)(rng)]);
      std::vector<Vertex> a(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k));
      if (violates_expansion(h, a, d_)) {
        report_.mid_sets_expand = false;
        break;
      }
    }
  }

  const std::size_t smax = std::min<std::size_t>(n / (7 * d_), verify_.subset_budget);
  const auto sets = minimal_non_expanding(h, left, d_, smax, verify_.parallel);
  std::vector<char> in_u(n, 0);
  for (const auto& a : sets)
    for (Vertex x : a) in_u[x] = 1;
  for (std::size_t i = 0; i < n; ++i)
    if (in_u[i]) u_.push_back(v1_[i]);
  report_.exceptional = u_.size();
  fresh_.assign(u_.size(), {});
  end_stage(s, report_.mid_sets_expand && 7 * d_ * u_.size() < n,
            "G' exhausted; " + std::to_string(u_.size()) + " exceptional vertices" +
                (report_.mid_sets_expand ? "" : "; a sampled mid-size set failed to expand"));
  stage_ = 2;
  begin_stage("exceptional", s);
}

void HalfExpanderWaiter::on_finish(const GameState& s) {
  check(goal_reached(), "half-expander stages not completed");
  if (goal_reached()) {
    const auto v = check_half_expander(bipartite(s), d_, 2.0 / (3.0 * d_), verify_);
    check(v.holds, "final half-expansion check failed");
  }
}

// ---------------------------------------------------------------------------

std::uint64_t ExpanderCyclesWaiter::raised_bias(Vertex n, unsigned d, std::uint64_t q) {
  return std::max<std::uint64_t>(q, ceil_div(n, 1000 * static_cast<std::size_t>(d)));
}

std::size_t ExpanderCyclesWaiter::short_limit() const { return ceil_div(vs_.size(), 6); }

Preflight ExpanderCyclesWaiter::preflight(Vertex n, unsigned d, std::uint64_t q) {
  Preflight p;
  p.require(d >= 4, "d >= 4");
  p.require(q >= 1, "q >= 1");
  p.require(n >= 60, "n >= 60");
  if (!p.feasible) return p;
  const std::uint64_t qp = raised_bias(n, d, q);
  const std::size_t m = ceil_div(n, 5), L = ceil_div(n, 6), part = n / 6;
  p.require(4 * qp + L < m, "4q + ceil(n/6) < ceil(n/5)");
  p.require(qp + 1 <= part / 2, "q <= floor(|V_i|/2) - 1");
  p.require(HalfExpanderWaiter::preflight(part + 1, part, d, qp).feasible,
            "half-expander parts: " + HalfExpanderWaiter::preflight(part + 1, part, d, qp).summary());
  p.expect(static_cast<double>(q) <= static_cast<double>(n) / (1000.0 * d), "q <= n/(1000d)");
  p.expect(static_cast<double>(qp) <= static_cast<double>(part) / (150.0 * d), "q' <= |V_i|/(150d)");
  return p;
}

ExpanderCyclesWaiter::ExpanderCyclesWaiter(std::vector<Vertex> vs, unsigned d, std::uint64_t q,
                                           std::string name, ExpanderOptions verify)
    : StagedWaiter(std::move(name), raised_bias(static_cast<Vertex>(vs.size()), d, q)),
      vs_(std::move(vs)), d_(d), q_(q), verify_(verify) {
  const Preflight p = preflight(static_cast<Vertex>(vs_.size()), d, q);
  if (!p.feasible) throw std::invalid_argument(p.summary());
  const std::uint64_t qp = q_plan();
  parts_ = equipartition(vs_, 6);
  const int pairs[7][2] = {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 4}, {4, 5}, {5, 1}};
  for (int i = 0; i < 7; ++i) {
    halves_.push_back(std::make_unique<HalfExpanderWaiter>(parts_[pairs[i][0]], parts_[pairs[i][1]], d,
                                                           qp, verify));
    adopt(halves_.back().get(), "G" + std::to_string(i + 1));
  }
  for (int i = 1; i < 6; ++i) {
    connect_.push_back(make_connectivity(parts_[i], qp));
    adopt(connect_.back().get(), "V" + std::to_string(i + 1));
  }
  report_.round_bound = 200ull * vs_.size() * d;
}

bool ExpanderCyclesWaiter::prepare_cycles(const GameState& s) {
  const SimpleGraph g = SimpleGraph::client_graph(s, vs_);
  std::vector<int> part(vs_.size(), -1);
  std::vector<Vertex> local(s.board().n(), static_cast<Vertex>(-1));
  for (Vertex i = 0; i < vs_.size(); ++i) local[vs_[i]] = i;
  for (int p = 0; p < 4; ++p)
    for (Vertex v : parts_[p]) part[local[v]] = p;
  const std::size_t m = ceil_div(vs_.size(), 5);
  const auto lp = dfs_fourpartite_long_path(g, part, m);
  report_.path_length = lp.found ? m : lp.longest_stack;
  if (!lp.found) return false;
  path_.assign(lp.path.begin(), lp.path.begin() + static_cast<std::ptrdiff_t>(m));

  const std::uint64_t qp = q_plan();
  std::vector<Vertex> t, v5, v6;
  for (std::uint64_t i = 0; i <= qp; ++i) t.push_back(path_[4 * i]);
  for (Vertex v : parts_[4]) v5.push_back(local[v]);
  for (Vertex v : parts_[5]) v6.push_back(local[v]);
  const auto m5 = hall_cover_matching(g, t, v5);
  if (!m5.saturated) return false;
  x_.assign(t.size(), 0);
  for (auto [a, b] : m5.matching) x_[std::find(t.begin(), t.end(), a) - t.begin()] = b;
  const auto m6 = hall_cover_matching(g, x_, v6);
  if (!m6.saturated) return false;
  y_.assign(t.size(), 0);
  for (auto [a, b] : m6.matching) y_[std::find(x_.begin(), x_.end(), a) - x_.begin()] = b;
  return true;
}

bool ExpanderCyclesWaiter::residue_active(int stage, std::size_t j) const {
  const std::size_t L = short_limit();
  switch (stage) {
    case 2: return 4 * j + 1 <= L;
    case 3: return 4 * j - 1 <= L;
    case 4: return 4 * j <= L;
    case 5: return 4 * j + 2 <= L;
  }
  return false;
}

// Local labels, 0-based path: v_{4i+1} is path_[4i].
Offer ExpanderCyclesWaiter::residue_offer(int stage, std::size_t j) const {
  Offer a;
  for (std::uint64_t i = 0; i <= q_plan(); ++i) {
    Vertex u = 0, v = 0;
    switch (stage) {
      case 2: u = path_[4 * i], v = path_[4 * i + 4 * j]; break;
      case 3: u = path_[4 * i], v = path_[4 * i + 4 * j - 2]; break;
      case 4: u = x_[i], v = path_[4 * i + 4 * j - 2]; break;
      case 5: u = y_[i], v = path_[4 * i + 4 * j - 1]; break;
    }
    a.push_back(Board::pair_id(vs_[u], vs_[v]));
  }
  return a;
}

WaiterMove ExpanderCyclesWaiter::plan(const GameState& s) {
  static const char* names[] = {"", "half-expanders", "cycles 1 mod 4", "cycles 3 mod 4",
                                "cycles 0 mod 4", "cycles 2 mod 4", "connect"};
  if (stage_ == 0) {
    stage_ = 1;
    first_round_ = s.round();
    begin_stage(names[1], s);
  }
  if (stage_ == 1) {
    while (child_ < halves_.size()) {
      if (!halves_[child_]->goal_reached()) return delegate(*halves_[child_], s);
      ++child_;
    }
    bool ok = true;
    for (const auto& h : halves_) ok = ok && h->report().verdict.holds;
    end_stage(s, ok);
    if (!prepare_cycles(s)) return forfeit(s, "no long DFS path or matching (path reached " +
                                                  std::to_string(report_.path_length) + ")");
    stage_ = 2;
    j_ = 1;
    begin_stage(names[2], s);
  }
  while (stage_ >= 2 && stage_ <= 5) {
    if (residue_active(stage_, j_)) return residue_offer(stage_, j_);
    end_stage(s, true);
    ++stage_;
    j_ = 1;
    begin_stage(names[stage_], s);
    if (stage_ == 6) child_ = 0;
  }
  if (stage_ == 6) {
    while (child_ < connect_.size()) {
      if (!connect_[child_]->goal_reached()) return delegate(*connect_[child_], s);
      ++child_;
    }
    end_stage(s, true);
    stage_ = 7;
    report_.rounds = s.round() - first_round_;
    reach_goal(s);
  }
  return Offer{};
}

void ExpanderCyclesWaiter::absorb(const GameState&, const Offer&, Elem choice) {
  if (stage_ < 2 || stage_ > 5) return;
  const Offer all = residue_offer(stage_, j_);
  const auto hit = static_cast<std::size_t>(std::find(all.begin(), all.end(), choice) - all.begin());
  if (hit == all.size()) {
    check(false, "Client edge outside the residue offer");
    ++j_;
    return;
  }
  const std::size_t i = hit, j = j_;
  std::vector<Vertex> c;
  auto seg = [&](std::size_t from, std::size_t to) {
    for (std::size_t k = from; k <= to; ++k) c.push_back(path_[k]);
  };
  switch (stage_) {
    case 2: seg(4 * i, 4 * i + 4 * j); break;
    case 3: seg(4 * i, 4 * i + 4 * j - 2); break;
    case 4: c.push_back(x_[i]); seg(4 * i, 4 * i + 4 * j - 2); break;
    case 5: c.push_back(y_[i]); c.push_back(x_[i]); seg(4 * i, 4 * i + 4 * j - 1); break;
  }
  CycleCertificate cert;
  cert.stage = "cycles";
  for (Vertex v : c) cert.cycle.push_back(vs_[v]);
  certs_.push_back(std::move(cert));
  ++j_;
}

void ExpanderCyclesWaiter::on_finish(const GameState& s) {
  check(goal_reached(), "expander pipeline not completed");
  const SimpleGraph g = SimpleGraph::client_graph(s, vs_);
  report_.verdict = check_expander(g, d_ / 2.0 - 1.0, 1.0 / (20.0 * d_), verify_);
  check(report_.verdict.holds, "expansion check failed (" + to_string(report_.verdict.mode) + ")");

  std::string why;
  const SimpleGraph full = SimpleGraph::client_graph(s);
  const bool certs_ok = certificates_hold(full, certs_, &why);
  std::vector<char> seen(short_limit() + 1, 0);
  for (const auto& c : certs_)
    if (c.cycle.size() < seen.size()) seen[c.cycle.size()] = 1;
  bool all = certs_ok;
  for (std::size_t k = 3; k <= short_limit(); ++k) all = all && seen[k];
  report_.spectrum = all;
  check(certs_ok, "certificate failed: " + why);
  check(all, "some length in 3..ceil(n/6) has no certificate");

  report_.connected = component_profile(g).connected;
  check(report_.connected, "Client graph on the vertex set is disconnected");
  check(!goal_reached() || report_.rounds <= report_.round_bound, "more than 200nd rounds");
}

}  // namespace wc
