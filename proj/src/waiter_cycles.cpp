#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "wc/analysis.hpp"
#include "wc/waiters.hpp"

namespace wc {

namespace {

constexpr std::uint64_t kDirectPairLimit = 400'000'000;
constexpr std::uint64_t kSampledPairs = 2'000'000;

std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return (a + b - 1) / b; }

}  // namespace

// ---------------------------------------------------------------------------

PathDoublingWaiter::PathDoublingWaiter(Vertex n, std::uint64_t q)
    : StagedWaiter("path_doubling", q), n_(n), q_(q), t_star_(t_star(n, q)) {
  const Preflight p = preflight(n, q);
  if (!p.feasible) throw std::invalid_argument(p.summary());
  paths_.reserve(n);
  for (Vertex v = 0; v < n; ++v) paths_.push_back({v});
}

Preflight PathDoublingWaiter::preflight(Vertex n, std::uint64_t q) {
  Preflight p;
  p.require(n >= 2, "n >= 2");
  p.require(q >= n, "q >= n (smaller biases go through reduce_bias with q' = n)");
  if (q >= n && n >= 2) p.expect(t_star(n, q) >= 1, "t* >= 1");
  return p;
}

int PathDoublingWaiter::t_star(Vertex n, std::uint64_t q) {
  if (n == 0 || q == 0) return -1;
  const long double floor_ = std::pow(static_cast<long double>(q), 2.0L / 3);
  const long double base = static_cast<long double>(n) / (10.0L * q);
  int best = -1;
  // Past t = 64 the power underflows for base < 1; base >= 1 never stops.
  for (int t = 0; t < 64; ++t) {
    if (paths_bound(n, q, t) >= floor_) best = t;
    else if (base < 1) break;
  }
  return best;
}

long double PathDoublingWaiter::paths_bound(Vertex n, std::uint64_t q, int t) {
  const long double base = static_cast<long double>(n) / (10.0L * q);
  return std::pow(base, std::ldexp(1.0L, t)) * 10.0L * q;
}

long double PathDoublingWaiter::matching_bound(std::uint64_t m, std::uint64_t q) {
  const long double h = static_cast<long double>(m / 2);
  return (h * h - static_cast<long double>(q + 1)) / static_cast<long double>(q + 1 + m);
}

WaiterMove PathDoublingWaiter::plan(const GameState& s) {
  if (levels_.empty()) {
    begin_stage("level 0", s);
    record_level(s, 0, 0);
    if (t_star_ < 1) {
      reach_goal(s);
      return Offer{};
    }
    start_matching(s);
  }
  if (goal_reached()) return Offer{};

  // Keep matching while i <= bound; the paper's count leaves q+1 free
  // cross edges in that range.
  if (static_cast<long double>(pairs_.size()) > mbound_) {
    finish_matching(s);
    if (t_ >= t_star_) {
      reach_goal(s);
      return Offer{};
    }
    start_matching(s);
  }

  Offer a;
  const std::size_t need = q_plan() + 1;
  while (cx_ < xs_.size() && a.size() < need) {
    const Vertex x = xs_[cx_];
    if (matched_[x]) {
      ++cx_, cy_ = 0;
      continue;
    }
    while (cy_ < ys_.size() && a.size() < need) {
      const Vertex y = ys_[cy_];
      const Elem e = Board::pair_id(x, y);
      if (!matched_[y] && avail(s, e)) a.push_back(e);
      ++cy_;
    }
    if (cy_ == ys_.size()) ++cx_, cy_ = 0;
  }
  if (a.size() < need)
    return forfeit(s, "only " + std::to_string(a.size()) + " free cross edges avoid the matching");
  return a;
}

void PathDoublingWaiter::absorb(const GameState&, const Offer&, Elem choice) {
  auto [u, v] = Board::pair_of(choice);
  if (path_of_[u] >= xs_.size() + ys_.size() || path_of_[v] >= xs_.size() + ys_.size()) {
    check(false, "Client took an edge outside the cross pairs");
    return;
  }
  matched_[u] = matched_[v] = 1;
  std::uint32_t a = path_of_[u], b = path_of_[v];
  // a indexes a path whose back lies in X.
  if (a >= xs_.size()) std::swap(a, b);
  pairs_.emplace_back(a, b);
}

void PathDoublingWaiter::start_matching(const GameState& s) {
  const std::size_t m = paths_.size();
  begin_stage("double " + std::to_string(t_) + "->" + std::to_string(t_ + 1), s);
  xs_.clear();
  ys_.clear();
  // X_t holds the back endpoints of the first floor(m/2) paths.
  path_of_.assign(n_, static_cast<std::uint32_t>(-1));
  for (std::size_t i = 0; i < m; ++i) {
    const Vertex u = paths_[i].back();
    (i < m / 2 ? xs_ : ys_).push_back(u);
    path_of_[u] = static_cast<std::uint32_t>(i);
  }
  matched_.assign(n_, 0);
  pairs_.clear();
  cx_ = cy_ = 0;
  mbound_ = matching_bound(m, q_);
}

void PathDoublingWaiter::finish_matching(const GameState& s) {
  std::vector<std::vector<Vertex>> next;
  next.reserve(pairs_.size());
  for (auto [a, b] : pairs_) {
    std::vector<Vertex> p = paths_[a];
    p.insert(p.end(), paths_[b].rbegin(), paths_[b].rend());
    next.push_back(std::move(p));
  }
  paths_ = std::move(next);
  ++t_;
  record_level(s, pairs_.size(), mbound_);
}

void PathDoublingWaiter::record_level(const GameState& s, std::uint64_t matching,
                                      long double mbound) {
  Level L;
  L.t = t_;
  L.paths = paths_.size();
  L.bound = paths_bound(n_, q_, t_);
  L.matching = matching;
  L.matching_bound = mbound;
  L.round = s.round();
  L.a = static_cast<long double>(L.paths) >= L.bound;

  // (b): disjoint Client paths on 2^t vertices.
  const std::size_t len = std::size_t{1} << t_;
  std::vector<char> seen(n_, 0);
  bool b = true;
  for (const auto& p : paths_) {
    b = b && p.size() == len;
    for (std::size_t i = 0; b && i < p.size(); ++i) {
      b = !seen[p[i]];
      seen[p[i]] = 1;
      if (b && i) b = s.pair_owner(p[i - 1], p[i]) == Owner::Client;
    }
    if (!b) break;
  }
  L.b = b;

  // (c): endpoint pairs from distinct paths. Paths of one vertex have a
  // single endpoint.
  std::vector<std::pair<Vertex, std::uint32_t>> ends;  // (vertex, path)
  std::vector<Vertex> backs;
  for (std::uint32_t i = 0; i < paths_.size(); ++i) {
    ends.emplace_back(paths_[i].front(), i);
    if (paths_[i].size() > 1) ends.emplace_back(paths_[i].back(), i);
    backs.push_back(paths_[i].back());
  }
  const std::uint64_t k = ends.size();
  const std::uint64_t pairs = k * (k - 1) / 2;
  if (s.free_count() == s.board().size()) {
    L.c = L.c_continuing = true;
  } else if (pairs <= kDirectPairLimit) {
    std::uint64_t bad = 0;
    for (std::size_t i = 0; i < ends.size(); ++i)
      for (std::size_t j = i + 1; j < ends.size(); ++j)
        if (ends[i].second != ends[j].second && !s.free_pair(ends[i].first, ends[j].first)) ++bad;
    L.c = bad == 0;
    L.c_violations = bad;
    bool cont = true;
    for (std::size_t i = 0; i < backs.size() && cont; ++i)
      for (std::size_t j = i + 1; j < backs.size(); ++j)
        if (!s.free_pair(backs[i], backs[j])) {
          cont = false;
          break;
        }
    L.c_continuing = cont;
  } else {
    L.c_exact = false;
    std::mt19937_64 rng(0x9e3779b97f4a7c15ull ^ t_);
    std::uniform_int_distribution<std::size_t> pick(0, ends.size() - 1), pickb(0, backs.size() - 1);
    std::uint64_t bad = 0;
    bool cont = true;
    for (std::uint64_t r = 0; r < kSampledPairs; ++r) {
      const auto& x = ends[pick(rng)];
      const auto& y = ends[pick(rng)];
      if (x.second != y.second && !s.free_pair(x.first, y.first)) ++bad;
      const Vertex bx = backs[pickb(rng)], by = backs[pickb(rng)];
      if (bx != by && !s.free_pair(bx, by)) cont = false;
    }
    L.c = bad == 0;
    L.c_violations = bad;
    L.c_continuing = cont;
  }

  const bool match_ok = t_ == 0 || static_cast<long double>(matching) >= mbound;
  const bool ok = L.a && L.b && L.c_continuing && match_ok;
  std::string detail = "t=" + std::to_string(t_) + " paths=" + std::to_string(L.paths) +
                       " (a)=" + (L.a ? "yes" : "no") + " (b)=" + (L.b ? "yes" : "no") +
                       " (c)=" + (L.c ? "yes" : "no") + (L.c_exact ? "" : "~") +
                       " kept-ends-free=" + (L.c_continuing ? "yes" : "no");
  if (L.c_violations) detail += " claimed-endpoint-pairs=" + std::to_string(L.c_violations);
  if (t_ > 0) detail += " matching=" + std::to_string(matching);
  levels_.push_back(L);
  end_stage(s, ok, detail);
}

void PathDoublingWaiter::on_finish(const GameState&) {
  check(static_cast<int>(levels_.size()) == std::max(t_star_, 0) + 1,
        "stopped at level " + std::to_string(levels_.empty() ? -1 : levels_.back().t) +
            " of " + std::to_string(t_star_));
}

// ---------------------------------------------------------------------------

LongCycleWaiter::LongCycleWaiter(Vertex n, std::uint64_t q, std::uint64_t eta)
    : StagedWaiter("long_cycle", q), n_(n), q_(q), eta_(eta) {
  const Preflight p = preflight(n, q, eta);
  if (!p.feasible) throw std::invalid_argument(p.summary());
  const auto side = static_cast<Vertex>(std::ceil(std::pow(static_cast<long double>(n), 0.75L) - 1e-12L));
  for (Vertex v = 0; v < n; ++v) (v < side ? v1_ : v < 2 * side ? v2_ : v3_).push_back(v);
  path_target_ = ceil_div(eta, 2);
  r_ = static_cast<std::size_t>(std::floor(std::sqrt(static_cast<long double>(n)) + 1e-12L));
  block_ = static_cast<std::size_t>(std::floor(std::pow(static_cast<long double>(n), 0.25L) + 1e-12L));
  pos_.assign(n, -1);
}

std::size_t LongCycleWaiter::required_length() const { return ceil_div(eta_, 6); }

Preflight LongCycleWaiter::preflight(Vertex n, std::uint64_t q, std::uint64_t eta) {
  Preflight p;
  p.require(q >= 1, "q >= 1");
  p.require(eta >= 6 && eta + 1 <= n, "6 <= eta <= n-1");
  if (!p.feasible) return p;
  const auto side = static_cast<std::uint64_t>(std::ceil(std::pow(static_cast<long double>(n), 0.75L) - 1e-12L));
  const std::uint64_t v3 = n > 2 * side ? n - 2 * side : 0;
  const auto r = static_cast<std::uint64_t>(std::floor(std::sqrt(static_cast<long double>(n)) + 1e-12L));
  const auto blk = static_cast<std::uint64_t>(std::floor(std::pow(static_cast<long double>(n), 0.25L) + 1e-12L));
  p.require(r * blk <= side, "r blocks of floor(n^{1/4}) fit in V1 and V2");
  p.require(blk * (eta / 6) >= q + 1, "|X_i| * floor(eta/6) >= q+1");
  p.require(r * r >= q + 1, "e(W1, W2) = r^2 >= q+1");
  p.expect(v3 >= ceil_div(eta, 2) + q, "|V3| >= ceil(eta/2) + q");
  p.expect(q + eta <= n, "q <= n - eta");
  p.expect(static_cast<long double>(eta) >= 10 * std::pow(static_cast<long double>(n), 0.75L),
           "eta >= 10 n^{3/4}");
  return p;
}

Offer LongCycleWaiter::star_offer(const GameState& s, const std::vector<Vertex>& from,
                                  std::size_t lo, std::size_t hi) {
  Offer a;
  const std::size_t need = q_plan() + 1;
  for (std::size_t i = lo; i <= hi && i < path_.size() && a.size() < need; ++i)
    for (Vertex x : from) {
      const Elem e = Board::pair_id(x, path_[i]);
      if (avail(s, e)) {
        a.push_back(e);
        if (a.size() == need) break;
      }
    }
  return a;
}

WaiterMove LongCycleWaiter::plan(const GameState& s) {
  const std::size_t need = q_plan() + 1;
  if (stage_ == 0) {
    stage_ = 1;
    begin_stage("path", s);
    path_.push_back(v3_.front());
    pos_[v3_.front()] = 0;
    v3_cursor_ = 1;
  }
  if (stage_ == 1) {
    if (path_.size() < path_target_) {
      // q+1 pendant edges from the path end to untouched V3 vertices;
      // v3_[v3_cursor_..] are off the path.
      Offer a;
      const Vertex u = path_.back();
      for (std::size_t i = v3_cursor_; i < v3_.size() && a.size() < need; ++i)
        a.push_back(Board::pair_id(u, v3_[i]));
      if (a.size() < need) return forfeit(s, "V3 ran out of untouched vertices");
      return a;
    }
    bool ok = path_.size() == path_target_ && is_path(SimpleGraph::client_graph(s), path_);
    end_stage(s, ok, "path on " + std::to_string(path_.size()) + " vertices");
    stage_ = 2;
    block_i_ = 0;
    begin_stage("V1 pendants", s);
  }
  if (stage_ == 2) {
    if (block_i_ < r_) {
      std::vector<Vertex> x(v1_.begin() + block_i_ * block_, v1_.begin() + (block_i_ + 1) * block_);
      Offer a = star_offer(s, x, 0, eta_ / 6 - 1);
      if (a.size() < need) return forfeit(s, "X_" + std::to_string(block_i_ + 1) + " has too few free edges");
      return a;
    }
    end_stage(s, w1_.size() == r_, std::to_string(w1_.size()) + " vertices in W1");
    stage_ = 3;
    block_i_ = 0;
    begin_stage("V2 pendants", s);
  }
  if (stage_ == 3) {
    if (block_i_ < r_) {
      std::vector<Vertex> y(v2_.begin() + block_i_ * block_, v2_.begin() + (block_i_ + 1) * block_);
      Offer a = star_offer(s, y, ceil_div(eta_, 3) - 1, path_target_ - 1);
      if (a.size() < need) return forfeit(s, "Y_" + std::to_string(block_i_ + 1) + " has too few free edges");
      return a;
    }
    end_stage(s, w2_.size() == r_, std::to_string(w2_.size()) + " vertices in W2");
    stage_ = 4;
    begin_stage("close", s);
  }
  if (stage_ == 4) {
    Offer a;
    std::size_t cross = 0;
    for (auto [w1, i1] : w1_)
      for (auto [w2, i2] : w2_)
        if (avail(s, Board::pair_id(w1, w2))) {
          ++cross;
          if (a.size() < need) a.push_back(Board::pair_id(w1, w2));
        }
    check(cross >= q_ + 1, "e(W1, W2) = " + std::to_string(cross) + " below q+1");
    if (a.size() < need) return forfeit(s, "too few free W1-W2 edges");
    return a;
  }
  return Offer{};
}

void LongCycleWaiter::absorb(const GameState& s, const Offer&, Elem choice) {
  const auto [u, v] = Board::pair_of(choice);
  if (stage_ == 1) {
    const Vertex x = pos_[u] >= 0 ? v : u;
    check(pos_[x] < 0 && (pos_[u] >= 0 || pos_[v] >= 0), "Client edge does not extend the path");
    pos_[x] = static_cast<std::int64_t>(path_.size());
    path_.push_back(x);
    // Move x out of the untouched block.
    auto it = std::find(v3_.begin() + static_cast<std::ptrdiff_t>(v3_cursor_), v3_.end(), x);
    if (it != v3_.end()) std::iter_swap(it, v3_.begin() + static_cast<std::ptrdiff_t>(v3_cursor_));
    ++v3_cursor_;
  } else if (stage_ == 2 || stage_ == 3) {
    const Vertex w = pos_[u] >= 0 ? v : u;
    const Vertex p = w == u ? v : u;
    (stage_ == 2 ? w1_ : w2_).emplace_back(w, static_cast<std::size_t>(pos_[p]));
    ++block_i_;
  } else if (stage_ == 4) {
    auto find = [&](const std::vector<std::pair<Vertex, std::size_t>>& ws, Vertex w) {
      return std::find_if(ws.begin(), ws.end(), [&](const auto& e) { return e.first == w; });
    };
    auto i1 = find(w1_, u), i2 = find(w2_, v);
    if (i1 == w1_.end()) i1 = find(w1_, v), i2 = find(w2_, u);
    if (i1 == w1_.end() || i2 == w2_.end()) {
      check(false, "closing edge not between W1 and W2");
      return;
    }
    CycleCertificate c;
    c.stage = "close";
    c.cycle.push_back(i1->first);
    for (std::size_t i = i1->second; i <= i2->second; ++i) c.cycle.push_back(path_[i]);
    c.cycle.push_back(i2->first);
    certs_.push_back(std::move(c));
    const std::size_t len = certs_.back().cycle.size();
    end_stage(s, len >= required_length(), "cycle of length " + std::to_string(len));
    stage_ = 5;
    reach_goal(s);
  }
}

void LongCycleWaiter::on_finish(const GameState& s) {
  check(goal_reached(), "closing round never played");
  if (certs_.empty()) return;
  std::string why;
  const bool holds = certificates_hold(SimpleGraph::client_graph(s), certs_, &why);
  check(holds, "certificate failed: " + why);
  check(certs_.front().cycle.size() >= required_length(), "cycle shorter than ceil(eta/6)");
}

}  // namespace wc
