#include "wc/analysis.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <queue>
#include <random>
#include <set>

namespace wc {

namespace {

using Mask = std::uint32_t;

std::vector<Mask> adjacency_masks(const SimpleGraph& g, Vertex budget) {
  if (g.n() > budget || g.n() > 30)
    throw BudgetExceeded("graph order " + std::to_string(g.n()) + " exceeds exact budget " +
                         std::to_string(budget));
  std::vector<Mask> adj(g.n(), 0);
  for (Vertex v = 0; v < g.n(); ++v)
    for (Vertex w : g.neighbors(v)) adj[v] |= Mask{1} << w;
  return adj;
}

// dp[mask] = set of end vertices of Hamilton paths of G[mask].
std::vector<Mask> path_table(const std::vector<Mask>& adj) {
  const std::size_t n = adj.size();
  std::vector<Mask> dp(std::size_t{1} << n, 0);
  for (std::size_t v = 0; v < n; ++v) dp[Mask{1} << v] = Mask{1} << v;
  for (Mask mask = 1; mask < dp.size(); ++mask) {
    Mask ends = dp[mask];
    while (ends) {
      const int v = std::countr_zero(ends);
      ends &= ends - 1;
      Mask next = adj[v] & ~mask;
      while (next) {
        const int w = std::countr_zero(next);
        next &= next - 1;
        dp[mask | (Mask{1} << w)] |= Mask{1} << w;
      }
    }
  }
  return dp;
}

std::vector<Vertex> rebuild_path(const std::vector<Mask>& dp, const std::vector<Mask>& adj,
                                 Mask mask) {
  std::vector<Vertex> path;
  int v = std::countr_zero(dp[mask]);
  while (true) {
    path.push_back(static_cast<Vertex>(v));
    const Mask prev = mask & ~(Mask{1} << v);
    if (!prev) break;
    const Mask cand = dp[prev] & adj[v];
    v = std::countr_zero(cand);
    mask = prev;
  }
  return path;
}

}  // namespace

std::vector<std::size_t> CycleSpectrum::lengths() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < has.size(); ++k)
    if (has[k]) out.push_back(k);
  return out;
}

std::vector<Vertex> component_labels(const SimpleGraph& g) {
  std::vector<Vertex> label(g.n(), static_cast<Vertex>(-1));
  Vertex next = 0;
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < g.n(); ++s) {
    if (label[s] != static_cast<Vertex>(-1)) continue;
    label[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      const Vertex v = stack.back();
      stack.pop_back();
      for (Vertex w : g.neighbors(v))
        if (label[w] == static_cast<Vertex>(-1)) {
          label[w] = next;
          stack.push_back(w);
        }
    }
    ++next;
  }
  return label;
}

ComponentProfile component_profile(const SimpleGraph& g) {
  ComponentProfile p;
  const auto label = component_labels(g);
  const Vertex k = g.n() ? *std::max_element(label.begin(), label.end()) + 1 : 0;
  p.sizes.assign(k, 0);
  for (Vertex l : label) ++p.sizes[l];
  std::sort(p.sizes.rbegin(), p.sizes.rend());
  p.connected = k == 1;
  return p;
}

CycleSpectrum cycle_spectrum_exact(const SimpleGraph& g, Vertex budget) {
  const auto adj = adjacency_masks(g, budget);
  const std::size_t n = adj.size();
  CycleSpectrum sp;
  sp.has.assign(n + 1, false);
  sp.max_checked = n;
  std::vector<Mask> dp(std::size_t{1} << n);
  for (std::size_t s = 0; s < n; ++s) {
    // Paths from s through vertices above s; a cycle is counted at its least vertex.
    std::fill(dp.begin(), dp.end(), 0);
    const Mask start = Mask{1} << s;
    const Mask above = ~((start << 1) - 1);
    dp[start] = start;
    const std::size_t count = std::size_t{1} << (n - s - 1);
    for (std::size_t k = 0; k < count; ++k) {
      const Mask mask = start | static_cast<Mask>(k << (s + 1));
      Mask ends = dp[mask];
      if (!ends) continue;
      const int size = std::popcount(mask);
      if (size >= 3 && (ends & adj[s])) sp.has[size] = true;
      while (ends) {
        const int v = std::countr_zero(ends);
        ends &= ends - 1;
        Mask next = adj[v] & ~mask & above;
        while (next) {
          const int w = std::countr_zero(next);
          next &= next - 1;
          dp[mask | (Mask{1} << w)] |= Mask{1} << w;
        }
      }
    }
  }
  for (std::size_t k = 3; k <= n; ++k)
    if (sp.has[k]) sp.circumference = k;
  sp.hamiltonian = n >= 3 && sp.has[n];
  sp.pancyclic = n >= 3;
  for (std::size_t k = 3; k <= n; ++k) sp.pancyclic = sp.pancyclic && sp.has[k];
  return sp;
}

CycleSpectrum cycle_spectrum_bounded(const SimpleGraph& g, std::size_t k_max,
                                     std::size_t repetitions, std::uint64_t seed) {
  const std::size_t n = g.n();
  k_max = std::min<std::size_t>(k_max, std::min<std::size_t>(n, 20));
  CycleSpectrum sp;
  sp.exact = false;
  sp.has.assign(n + 1, false);
  sp.max_checked = k_max;
  std::mt19937_64 rng(seed);
  std::vector<int> colour(n);
  for (std::size_t k = 3; k <= k_max; ++k) {
    const std::size_t full = (std::size_t{1} << k) - 1;
    for (std::size_t rep = 0; rep < repetitions && !sp.has[k]; ++rep) {
      std::uniform_int_distribution<int> pick(0, static_cast<int>(k) - 1);
      for (auto& c : colour) c = pick(rng);
      // reach[mask * n + v]: colourful path from s to v using colours mask.
      std::vector<char> reach((full + 1) * n);
      for (Vertex s = 0; s < n && !sp.has[k]; ++s) {
        if (colour[s] != 0) continue;
        std::fill(reach.begin(), reach.end(), 0);
        reach[1 * n + s] = 1;
        for (std::size_t mask = 1; mask <= full; mask += 2) {
          for (Vertex v = 0; v < n; ++v) {
            if (!reach[mask * n + v]) continue;
            if (mask == full && v != s && g.has_edge(v, s)) {
              sp.has[k] = true;
              break;
            }
            for (Vertex w : g.neighbors(v)) {
              const std::size_t bit = std::size_t{1} << colour[w];
              if (mask & bit) continue;
              reach[(mask | bit) * n + w] = 1;
            }
          }
          if (sp.has[k]) break;
        }
      }
    }
  }
  for (std::size_t k = 3; k <= k_max; ++k)
    if (sp.has[k]) sp.circumference = k;
  return sp;
}

std::vector<Vertex> longest_path_exact(const SimpleGraph& g, Vertex budget) {
  const auto adj = adjacency_masks(g, budget);
  if (adj.empty()) return {};
  const auto dp = path_table(adj);
  Mask best = 1;
  for (Mask mask = 1; mask < dp.size(); ++mask)
    if (dp[mask] && std::popcount(mask) > std::popcount(best)) best = mask;
  return rebuild_path(dp, adj, best);
}

std::optional<std::vector<Vertex>> hamilton_cycle_exact(const SimpleGraph& g, Vertex budget) {
  const auto adj = adjacency_masks(g, budget);
  const std::size_t n = adj.size();
  if (n < 3) return std::nullopt;
  // Paths starting at vertex 0 only.
  std::vector<Mask> dp(std::size_t{1} << n, 0);
  dp[1] = 1;
  for (Mask mask = 1; mask < dp.size(); mask += 2) {
    Mask ends = dp[mask];
    while (ends) {
      const int v = std::countr_zero(ends);
      ends &= ends - 1;
      Mask next = adj[v] & ~mask;
      while (next) {
        const int w = std::countr_zero(next);
        next &= next - 1;
        dp[mask | (Mask{1} << w)] |= Mask{1} << w;
      }
    }
  }
  const Mask full = static_cast<Mask>((std::size_t{1} << n) - 1);
  Mask ends = dp[full] & adj[0];
  if (!ends) return std::nullopt;
  std::vector<Vertex> cycle;
  int v = std::countr_zero(ends);
  Mask mask = full;
  while (true) {
    cycle.push_back(static_cast<Vertex>(v));
    const Mask prev = mask & ~(Mask{1} << v);
    if (!prev) break;
    v = std::countr_zero(dp[prev] & adj[v]);
    mask = prev;
  }
  return cycle;
}

std::vector<Edge> boosters_exact(const SimpleGraph& g, Vertex budget) {
  adjacency_masks(g, budget);
  const std::size_t base = longest_path_exact(g, budget).size();
  std::vector<Edge> out;
  for (Vertex v = 1; v < g.n(); ++v)
    for (Vertex u = 0; u < v; ++u) {
      if (g.has_edge(u, v)) continue;
      SimpleGraph h = g;
      h.add_edge(u, v);
      if (hamilton_cycle_exact(h, budget) || longest_path_exact(h, budget).size() > base)
        out.emplace_back(u, v);
    }
  return out;
}

namespace {

// Rotating path q at its last vertex around neighbour pivot position i
// keeps q[0..i] and reverses the tail.
std::vector<Vertex> rotate(const std::vector<Vertex>& q, std::size_t i) {
  std::vector<Vertex> r(q.begin(), q.begin() + static_cast<std::ptrdiff_t>(i) + 1);
  r.insert(r.end(), q.rbegin(), q.rend() - static_cast<std::ptrdiff_t>(i) - 1);
  return r;
}

}  // namespace

RotationClosure::RotationClosure(const SimpleGraph& g, std::vector<Vertex> path,
                                 std::size_t max_endpoints)
    : base_(std::move(path)), parent_(g.n(), kNone), pivot_(g.n(), kNone) {
  if (!is_path(g, base_)) throw std::invalid_argument("rotation base is not a path of the graph");
  const Vertex first = base_.back();
  parent_[first] = first;
  order_.push_back(first);
  std::vector<std::vector<Vertex>> paths{base_};
  std::vector<std::size_t> pos(g.n());
  for (std::size_t head = 0; head < order_.size(); ++head) {
    const auto q = paths[head];
    for (std::size_t i = 0; i < q.size(); ++i) pos[q[i]] = i;
    std::vector<char> on(g.n(), 0);
    for (Vertex v : q) on[v] = 1;
    const Vertex end = q.back();
    for (Vertex p : g.neighbors(end)) {
      if (!on[p]) continue;
      const std::size_t i = pos[p];
      if (i + 1 >= q.size() - 1) continue;
      const Vertex z = q[i + 1];
      if (parent_[z] != kNone) continue;
      if (max_endpoints && order_.size() >= max_endpoints) {
        truncated_ = true;
        return;
      }
      parent_[z] = end;
      pivot_[z] = p;
      order_.push_back(z);
      paths.push_back(rotate(q, i));
    }
  }
}

std::vector<Vertex> RotationClosure::path_to(Vertex z) const {
  if (!reached(z)) return {};
  std::vector<Vertex> chain;
  for (Vertex x = z; parent_[x] != x; x = parent_[x]) chain.push_back(x);
  std::vector<Vertex> q = base_;
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    const auto i = static_cast<std::size_t>(std::find(q.begin(), q.end(), pivot_[*it]) - q.begin());
    q = rotate(q, i);
  }
  return q;
}

RotationReport posa_rotation_endpoints(const SimpleGraph& g, const std::vector<Vertex>& path,
                                       std::size_t max_pairs) {
  RotationReport rep;
  RotationClosure from_front(g, path);
  rep.endpoints = from_front.endpoints();
  const bool spanning = path.size() == g.n();
  if (!spanning && !component_profile(g).connected) return rep;
  std::set<Edge> pairs;
  for (Vertex a : rep.endpoints) {
    auto pa = from_front.path_to(a);
    std::reverse(pa.begin(), pa.end());
    RotationClosure other(g, pa);
    for (Vertex b : other.endpoints()) {
      if (b == a || g.has_edge(a, b)) continue;
      pairs.insert({std::min(a, b), std::max(a, b)});
      if (max_pairs && pairs.size() >= max_pairs) break;
    }
    if (max_pairs && pairs.size() >= max_pairs) break;
  }
  rep.booster_pairs.assign(pairs.begin(), pairs.end());
  if (g.n() <= kExactBudget) {
    const auto exact = boosters_exact(g);
    const std::set<Edge> ex(exact.begin(), exact.end());
    rep.pairs_verified = std::all_of(rep.booster_pairs.begin(), rep.booster_pairs.end(),
                                     [&](const Edge& e) { return ex.count(e) > 0; });
  }
  return rep;
}

}  // namespace wc

namespace wc {

namespace {

// Unit-capacity flow on the split graph: v_in = 2v, v_out = 2v + 1, plus an
// optional virtual source joined to a prefix of the vertex order.
class SplitFlow {
 public:
  SplitFlow(const SimpleGraph& g, std::size_t extra) : n_(g.n()), head_(2 * g.n() + 2 * extra, -1) {
    for (Vertex v = 0; v < n_; ++v) {
      arc(2 * v, 2 * v + 1);
      for (Vertex w : g.neighbors(v)) arc(2 * v + 1, 2 * w);
    }
  }
  void arc(std::size_t a, std::size_t b) {
    to_.push_back(b), cap_.push_back(1), next_.push_back(head_[a]), head_[a] = static_cast<int>(to_.size() - 1);
    to_.push_back(a), cap_.push_back(0), next_.push_back(head_[b]), head_[b] = static_cast<int>(to_.size() - 1);
  }
  std::size_t flow(std::size_t src, std::size_t sink, std::size_t cap) {
    std::size_t f = 0;
    std::vector<int> via(head_.size());
    while (f < cap) {
      std::fill(via.begin(), via.end(), -2);
      std::queue<std::size_t> bfs;
      bfs.push(src);
      via[src] = -1;
      while (!bfs.empty() && via[sink] == -2) {
        const std::size_t x = bfs.front();
        bfs.pop();
        for (int e = head_[x]; e != -1; e = next_[e])
          if (cap_[e] > 0 && via[to_[e]] == -2) {
            via[to_[e]] = e;
            bfs.push(to_[e]);
          }
      }
      if (via[sink] == -2) break;
      for (std::size_t x = sink; x != src;) {
        const int e = via[x];
        --cap_[e];
        ++cap_[e ^ 1];
        x = to_[e ^ 1];
      }
      ++f;
    }
    return f;
  }

 private:
  Vertex n_;
  std::vector<int> head_;
  std::vector<std::size_t> to_;
  std::vector<int> cap_;
  std::vector<int> next_;
};

}  // namespace

std::size_t disjoint_paths(const SimpleGraph& g, Vertex s, Vertex t, std::size_t cap) {
  if (s == t) return cap;
  SplitFlow f(g, 0);
  // Leaving from s_out and arriving at t_in lets s and t carry many paths.
  return f.flow(2 * s + 1, 2 * t, cap);
}

ConnectivityCheck vertex_connectivity_check(const SimpleGraph& g, std::size_t k,
                                            Vertex all_pairs_limit) {
  ConnectivityCheck r;
  const Vertex n = g.n();
  if (k == 0) {
    r.holds = true;
    return r;
  }
  if (n <= k) return r;
  if (n <= all_pairs_limit) {
    for (Vertex b = 1; b < n; ++b)
      for (Vertex a = 0; a < b; ++a)
        if (disjoint_paths(g, a, b, k) < k) {
          r.witness = Edge{a, b};
          return r;
        }
    r.holds = true;
    return r;
  }
  for (Vertex b = 1; b < k; ++b)
    for (Vertex a = 0; a < b; ++a)
      if (disjoint_paths(g, a, b, k) < k) {
        r.witness = Edge{a, b};
        return r;
      }
  // Virtual source x joined to 0..j-1, checked against j.
  for (Vertex j = static_cast<Vertex>(k); j < n; ++j) {
    SplitFlow f(g, 1);
    const std::size_t x = 2 * static_cast<std::size_t>(n);
    for (Vertex v = 0; v < j; ++v) f.arc(x, 2 * v);
    if (f.flow(x, 2 * j, k) < k) {
      r.witness = Edge{0, j};
      return r;
    }
  }
  r.holds = true;
  return r;
}

}  // namespace wc
