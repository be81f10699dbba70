#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "wc/analysis.hpp"
#include "wc/waiters.hpp"

namespace wc {

void Preflight::require(bool ok, const std::string& what) {
  if (ok) return;
  feasible = false;
  violated.push_back(what);
}

void Preflight::expect(bool ok, const std::string& what) {
  if (!ok) unproven.push_back(what);
}

std::string Preflight::summary() const {
  std::ostringstream out;
  out << (feasible ? "feasible" : "infeasible");
  for (const auto& v : violated) out << "; violated: " << v;
  for (const auto& v : unproven) out << "; unproven: " << v;
  return out.str();
}

bool certificates_hold(const SimpleGraph& client, const std::vector<CycleCertificate>& certs,
                       std::string* why) {
  for (const auto& c : certs)
    if (!is_cycle(client, c.cycle)) {
      if (why) *why = "cycle of length " + std::to_string(c.cycle.size()) + " from " + c.stage;
      return false;
    }
  return true;
}

// ---------------------------------------------------------------------------

namespace {

std::uint64_t ceil_half(std::int64_t x) { return x <= 0 ? 0 : static_cast<std::uint64_t>((x + 1) / 2); }

}  // namespace

BigComponentWaiter::BigComponentWaiter(std::vector<Vertex> vs, std::uint64_t q, std::string name,
                                       bool check_invariants)
    : StagedWaiter(std::move(name),
                   (vs.size() >= 4 && q + 2 < vs.size())
                       ? std::max<std::uint64_t>(q, ceil_half(static_cast<std::int64_t>(vs.size()) - 3))
                       : q),
      vs_(std::move(vs)),
      n_(static_cast<Vertex>(vs_.size())),
      q_(q),
      trivial_(n_ < 4 || q + 2 >= n_),
      check_invariants_(check_invariants && n_ <= 128) {
  if (q == 0) throw std::invalid_argument("q must be positive");
  const std::int64_t two = 2 * (static_cast<std::int64_t>(n_) - static_cast<std::int64_t>(q) - 1);
  target_ = static_cast<std::size_t>(std::clamp<std::int64_t>(two, 0, n_));
  if (trivial_) {
    expected_ = target_ >= 2 ? 1 : 0;
  } else {
    const std::uint64_t qp = q_plan();
    const std::uint64_t t = (2 * qp + 3 == n_) ? 0 : 1;
    expected_ = 2 * (n_ - qp - 2) + t;
    target_ = std::min<std::size_t>(n_, 2 * (n_ - qp - 1));
  }
  in_tree_.assign(n_, 0);
}

Preflight BigComponentWaiter::preflight(Vertex n, std::uint64_t q) {
  Preflight p;
  p.require(q >= 1, "q >= 1");
  p.require(n >= 2, "n >= 2");
  return p;
}

Vertex BigComponentWaiter::local(Vertex g) const {
  return g < local_.size() ? local_[g] : 0;
}

std::vector<Vertex> BigComponentWaiter::tree() const {
  std::vector<Vertex> out;
  for (Vertex a : tree_) out.push_back(vs_[a]);
  return out;
}

bool BigComponentWaiter::waiterish(const GameState& s, Vertex a, Vertex b) const {
  const Elem x = pair(a, b);
  return !avail(s, x) && s.owner(x) != Owner::Client;
}

std::size_t BigComponentWaiter::waiter_degree_to_tree(const GameState& s, Vertex a) const {
  std::size_t d = 0;
  for (Vertex b : tree_) d += waiterish(s, a, b);
  return d;
}

void BigComponentWaiter::add_to_tree(Vertex a) {
  in_tree_[a] = 1;
  tree_.push_back(a);
}

WaiterMove BigComponentWaiter::plan(const GameState& s) {
  if (phase_ == 0) {
    local_.assign(s.board().n(), 0);
    for (Vertex i = 0; i < n_; ++i) local_[vs_[i]] = i + 1;
    first_round_ = s.round();
    if (target_ <= 1) {
      begin_stage("trivial", s);
      reach_goal(s);
      end_stage(s, true, "target " + std::to_string(target_));
      phase_ = 3;
      return Offer{};
    }
    bool untouched = true;
    for (Vertex b = 1; b < n_ && untouched; ++b)
      for (Vertex a = 0; a < b; ++a)
        if (!avail(s, pair(a, b))) {
          untouched = false;
          break;
        }
    phase_ = 1;
    begin_stage(trivial_ ? "trivial" : "tree", s);
    check(untouched, "vertex set was not untouched at the start");
  }

  if (trivial_) {
    Offer a;
    for (Vertex b = 1; b < n_ && a.size() < q_plan() + 1; ++b)
      for (Vertex c = 0; c < b && a.size() < q_plan() + 1; ++c)
        if (avail(s, pair(c, b))) a.push_back(pair(c, b));
    return a;
  }

  const std::uint64_t qp = q_plan();
  Offer a;
  if (phase_ == 1) {
    if (tree_.empty()) {
      for (Vertex y = 1; y <= qp + 1; ++y) a.push_back(pair(0, y));
      return a;
    }
    std::vector<Vertex> from(tail_.begin(), tail_.end());
    from.push_back(z_.front());
    for (Vertex v : from)
      for (Vertex t : tree_)
        if (avail(s, pair(v, t))) a.push_back(pair(v, t));
    check(a.size() == qp + 1, "tree round offers " + std::to_string(a.size()) + " edges, expected " +
                                  std::to_string(qp + 1));
    return a;
  }

  // Stage II, round i = stage_two_round_ + 1.
  const std::size_t i = stage_two_round_;
  const Vertex u = order_[i];
  for (Vertex t : tree_)
    if (avail(s, pair(u, t))) a.push_back(pair(u, t));
  const std::size_t lo = n_ - qp - 1;
  for (std::size_t j = lo; j < order_.size(); ++j) {
    Elem best = 0;
    bool found = false;
    for (Vertex t : tree_) {
      const Elem x = pair(order_[j], t);
      if (avail(s, x) && (!found || x < best)) best = x, found = true;
    }
    if (found) a.push_back(best);
  }
  check(a.size() >= qp + 1, "absorbing round offers " + std::to_string(a.size()) + " edges");
  return a;
}

void BigComponentWaiter::absorb(const GameState& s, const Offer& instruction, Elem choice) {
  (void)instruction;
  ++done_rounds_;
  const auto [gu, gv] = Board::pair_of(choice);
  const Vertex a = local(gu) - 1, b = local(gv) - 1;

  if (trivial_) {
    if (phase_ == 1) {
      reach_goal(s);
      end_stage(s, true);
      phase_ = 3;
    }
    return;
  }

  const std::uint64_t qp = q_plan();
  if (phase_ == 1 && tree_.empty()) {
    const Vertex y1 = a == 0 ? b : a;
    add_to_tree(0);
    add_to_tree(y1);
    std::vector<Vertex> ys;
    for (Vertex y = 1; y <= qp + 1; ++y)
      if (y != y1) ys.push_back(y);
    for (Vertex z = static_cast<Vertex>(qp + 2); z < n_; ++z) z_.push_back(z);
    p_ = {z_.front(), ys[0]};
    z_.pop_front();
    tail_.assign(ys.begin() + 1, ys.end());
  } else if (phase_ == 1) {
    const Vertex w = in_tree_[a] ? b : a;
    check(!in_tree_[w], "chosen edge lies inside the tree");
    if (w == z_.front()) {
      z_.pop_front();
      if (!tail_.empty()) {
        p_.push_back(tail_.front());
        tail_.pop_front();
      }
    } else {
      auto it = std::find(tail_.begin(), tail_.end(), w);
      check(it != tail_.end(), "chosen vertex outside the offered set");
      if (it != tail_.end()) tail_.erase(it);
      p_.push_back(z_.front());
      z_.pop_front();
    }
    add_to_tree(w);
  } else if (phase_ == 2) {
    const Vertex w = in_tree_[a] ? b : a;
    check(!in_tree_[w], "chosen edge lies inside the tree");
    const std::size_t i = stage_two_round_;
    auto it = std::find(order_.begin(), order_.end(), w);
    check(it != order_.end(), "absorbed vertex not in the ordering");
    if (it != order_.end()) {
      const auto pos = static_cast<std::size_t>(it - order_.begin());
      check(pos == i || pos >= n_ - qp - 1, "absorbed vertex neither current nor a tail vertex");
      std::swap(order_[pos], order_[i]);
    }
    add_to_tree(w);
    ++stage_two_round_;
    if (stage_two_round_ == stage_two_rounds_) {
      const bool ok = tree_.size() >= target_ && done_rounds_ == expected_;
      reach_goal(s);
      end_stage(s, ok,
                "component " + std::to_string(tree_.size()) + " after " +
                    std::to_string(done_rounds_) + " rounds");
      phase_ = 3;
    }
    return;
  }

  const std::uint64_t i = tree_.size() - 1;
  if (check_invariants_) check_stage_one(s, i);
  if (tree_.size() == n_ - qp - 1) start_stage_two(s);
}

void BigComponentWaiter::check_stage_one(const GameState& s, std::uint64_t i) {
  const std::uint64_t qp = q_plan();
  // (a') Client's edges inside vs form exactly the tree.
  std::size_t client_edges = 0;
  bool inside = true;
  for (Vertex b = 1; b < n_; ++b)
    for (Vertex a = 0; a < b; ++a)
      if (s.owner(pair(a, b)) == Owner::Client) {
        ++client_edges;
        inside = inside && in_tree_[a] && in_tree_[b];
      }
  check(client_edges == i && inside && tree_.size() == i + 1, "(a') tree with i edges");
  // (b') pairs outside the tree are free.
  bool outside_free = true;
  for (Vertex b = 1; b < n_ && outside_free; ++b)
    for (Vertex a = 0; a < b; ++a)
      if (!in_tree_[a] && !in_tree_[b] && !avail(s, pair(a, b))) {
        outside_free = false;
        break;
      }
  check(outside_free, "(b') pairs outside the tree are free");
  // (c') degrees along u = P, Z, Tail.
  const std::size_t pn = std::min<std::uint64_t>(i + 1, qp + 1);
  bool ok = p_.size() == pn && p_.size() + z_.size() + tail_.size() == n_ - i - 1;
  for (std::size_t j = 0; ok && j < p_.size(); ++j) ok = waiter_degree_to_tree(s, p_[j]) == j;
  for (Vertex z : z_) ok = ok && waiter_degree_to_tree(s, z) == 0;
  for (Vertex t : tail_) ok = ok && waiter_degree_to_tree(s, t) == i;
  check(ok, "(c') Waiter degrees to the tree after round " + std::to_string(i));
}

void BigComponentWaiter::start_stage_two(const GameState& s) {
  const std::uint64_t qp = q_plan();
  check(z_.empty(), "middle block left over after the tree stage");
  order_.assign(p_.begin(), p_.end());
  order_.insert(order_.end(), tail_.begin(), tail_.end());
  check(order_.size() == qp + 1, "ordering covers the remaining vertices");
  if (check_invariants_) {
    const std::size_t lim = std::min<std::uint64_t>(n_ - qp - 1, qp + 1);
    bool ok = true;
    for (std::size_t j = 0; j < order_.size(); ++j) {
      const std::size_t d = waiter_degree_to_tree(s, order_[j]);
      ok = ok && (j < lim ? d <= j : d <= n_ - qp - 2);
    }
    check(ok, "(c) ordering degrees at the end of the tree stage");
  }
  end_stage(s, true, "tree on " + std::to_string(tree_.size()) + " vertices");
  begin_stage("absorb", s);
  phase_ = 2;
  stage_two_rounds_ = std::min<std::uint64_t>(n_ - qp - 1, qp + 1);
}

void BigComponentWaiter::on_finish(const GameState& s) {
  if (!s.board().is_graph()) return;
  // Largest Client component inside vs, recomputed from scratch.
  std::vector<Vertex> parent(n_);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](Vertex x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (Vertex a = 0; a < n_; ++a)
    for (Vertex g : s.client_adj()[vs_[a]]) {
      const Vertex b = local(g);
      if (b) parent[find(a)] = find(b - 1);
    }
  std::vector<std::size_t> size(n_, 0);
  std::size_t best = 0;
  for (Vertex a = 0; a < n_; ++a) best = std::max(best, ++size[find(a)]);
  check(!goal_reached() || best >= target_,
        "largest component " + std::to_string(best) + " below " + std::to_string(target_));
  check(goal_reached(), "goal not reached by the end of the game");
}

std::unique_ptr<BigComponentWaiter> make_connectivity(std::vector<Vertex> vs, std::uint64_t q,
                                                      bool check_invariants) {
  const auto n = vs.size();
  if (n < 2 || q + 1 > n / 2)
    throw std::invalid_argument("connectivity needs q <= floor(n/2) - 1; Client ends with fewer than n-1 edges otherwise");
  return std::make_unique<BigComponentWaiter>(std::move(vs), q, "connectivity", check_invariants);
}

// ---------------------------------------------------------------------------

KConnectedWaiter::KConnectedWaiter(Vertex n, std::uint64_t q, unsigned k)
    : StagedWaiter("k_connected", q), n_(n), q_(q), k_(k) {
  const Preflight p = preflight(n, q, k);
  if (!p.feasible) throw std::invalid_argument(p.summary());
  parts_ = equipartition(iota_vertices(n), k);
  for (const auto& part : parts_) children_.push_back(make_connectivity(part, q));
  for (std::size_t i = 0; i < children_.size(); ++i)
    adopt(children_[i].get(), "part" + std::to_string(i + 1));

  // Stars of two edge-disjoint families between every pair of parts. With
  // |A| >= |B| = t, a_p -> b_{(p+c) mod t} for c in [0, q] and
  // b_r -> a_{(r-c) mod t} for c in [q+1, 2q+1].
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      const auto& A = parts_[i];
      const auto& B = parts_[j];
      const std::size_t t = B.size();
      for (std::size_t p = 0; p < A.size(); ++p) {
        std::vector<Edge> star;
        for (std::size_t c = 0; c <= q; ++c) star.emplace_back(A[p], B[(p + c) % t]);
        stars_.push_back(std::move(star));
      }
      for (std::size_t r = 0; r < t; ++r) {
        std::vector<Edge> star;
        for (std::size_t c = q + 1; c <= 2 * q + 1; ++c) star.emplace_back(B[r], A[(r + t - c % t) % t]);
        stars_.push_back(std::move(star));
      }
    }
}

Preflight KConnectedWaiter::preflight(Vertex n, std::uint64_t q, unsigned k) {
  Preflight p;
  p.require(k >= 1, "k >= 1");
  p.require(q >= 1, "q >= 1");
  if (k == 0) return p;
  const std::size_t smallest = n / k;
  p.require(q + 1 <= smallest / 2, "q <= floor(|V_i|/2) - 1 for every part");
  if (k > 1) p.require(2 * q + 2 <= smallest, "2q+2 <= |V_i| for edge-disjoint stars");
  p.expect(static_cast<double>(q) <= static_cast<double>(n) / (2.0 * k) - 3, "q <= n/(2k) - 3");
  return p;
}

WaiterMove KConnectedWaiter::plan(const GameState& s) {
  if (!begun_) {
    begun_ = true;
    begin_stage("connect-parts", s);
  }
  while (child_ < children_.size()) {
    if (children_[child_]->goal_reached()) {
      ++child_;
      continue;
    }
    return delegate(*children_[child_], s);
  }
  if (!stars_started_) {
    stars_started_ = true;
    begin_stage("stars", s);
  }
  if (star_ >= stars_.size()) {
    end_stage(s, true, std::to_string(stars_.size()) + " stars");
    reach_goal(s);
    return Offer{};
  }
  Offer a;
  for (auto [u, v] : stars_[star_]) a.push_back(Board::pair_id(u, v));
  ++star_;
  return a;
}

void KConnectedWaiter::on_finish(const GameState& s) {
  const SimpleGraph g = SimpleGraph::client_graph(s);
  const auto vc = vertex_connectivity_check(g, k_);
  report_.k_connected = vc.holds;
  report_.exact = vc.exact;
  std::size_t md = g.n() ? g.degree(0) : 0;
  for (Vertex v = 0; v < g.n(); ++v) md = std::min(md, g.degree(v));
  report_.min_degree = md;
  check(goal_reached(), "stars not completed");
  check(vc.holds, std::to_string(k_) + "-connectivity check failed");
  check(md >= k_, "minimum Client degree below k");
}

}  // namespace wc
