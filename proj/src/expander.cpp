#include "wc/expander.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <queue>
#include <random>
#include <stdexcept>

namespace wc {

std::string to_string(CheckMode m) {
  switch (m) {
    case CheckMode::Exhaustive: return "exhaustive";
    case CheckMode::ExactUpTo: return "exact-up-to";
    case CheckMode::Sampled: return "sampled";
  }
  return "?";
}

namespace {

// Neighbourhood counter with a reusable stamp array.
struct NbrCounter {
  std::vector<std::uint32_t> stamp;
  std::uint32_t now = 0;
  explicit NbrCounter(Vertex n) : stamp(n, 0) {}

  std::size_t count(const SimpleGraph& g, const Vertex* s, std::size_t k) {
    if (++now == 0) {
      std::fill(stamp.begin(), stamp.end(), 0);
      now = 1;
    }
    const std::uint32_t in_set = now;
    if (++now == 0) {
      std::fill(stamp.begin(), stamp.end(), 0);
      now = 2;
    }
    for (std::size_t i = 0; i < k; ++i) stamp[s[i]] = in_set;
    std::size_t c = 0;
    for (std::size_t i = 0; i < k; ++i)
      for (Vertex w : g.neighbors(s[i]))
        if (stamp[w] != in_set && stamp[w] != now) {
          stamp[w] = now;
          ++c;
        }
    // Leave set members distinguishable from next round's stamps.
    for (std::size_t i = 0; i < k; ++i) stamp[s[i]] = 0;
    return c;
  }
};

bool too_small(std::size_t nbrs, std::size_t k, double d) {
  return static_cast<double>(nbrs) < d * static_cast<double>(k);
}

// Candidates for a violator of size <= s: vertices with degree below (d+1)s,
// joined when adjacent or sharing a neighbour. A minimal violator is
// connected in this conflict graph.
struct ConflictGraph {
  std::vector<Vertex> ids;                 // local -> global
  std::vector<std::vector<Vertex>> adj;    // local adjacency, sorted
};

ConflictGraph build_conflicts(const SimpleGraph& g, const std::vector<Vertex>& universe, double d,
                              std::size_t s) {
  ConflictGraph cg;
  const double cap = (d + 1.0) * static_cast<double>(s);
  std::vector<Vertex> local(g.n(), static_cast<Vertex>(-1));
  for (Vertex v : universe)
    if (static_cast<double>(g.degree(v)) < cap) {
      local[v] = static_cast<Vertex>(cg.ids.size());
      cg.ids.push_back(v);
    }
  cg.adj.resize(cg.ids.size());
  std::vector<std::vector<Vertex>> by_nbr(g.n());
  for (Vertex i = 0; i < cg.ids.size(); ++i)
    for (Vertex w : g.neighbors(cg.ids[i])) {
      by_nbr[w].push_back(i);
      if (local[w] != static_cast<Vertex>(-1)) cg.adj[i].push_back(local[w]);
    }
  for (const auto& l : by_nbr)
    for (std::size_t a = 0; a < l.size(); ++a)
      for (std::size_t b = a + 1; b < l.size(); ++b) {
        cg.adj[l[a]].push_back(l[b]);
        cg.adj[l[b]].push_back(l[a]);
      }
  for (auto& a : cg.adj) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
  return cg;
}

// ESU enumeration of connected subsets containing `root` as least member.
// visit(sub) returns true to stop.
template <class Visit>
bool esu(const ConflictGraph& cg, Vertex root, std::size_t max_size, Visit&& visit) {
  std::vector<Vertex> sub{root};
  std::vector<char> in_sub(cg.ids.size(), 0), near(cg.ids.size(), 0);
  in_sub[root] = 1;
  std::vector<Vertex> ext;
  for (Vertex u : cg.adj[root])
    if (u > root) ext.push_back(u);
  // near[x] counts how many sub members are adjacent to x.
  for (Vertex u : cg.adj[root]) ++near[u];
  struct Rec {
    static bool go(const ConflictGraph& cg, Vertex root, std::size_t max_size,
                   std::vector<Vertex>& sub, std::vector<char>& in_sub, std::vector<char>& near,
                   std::vector<Vertex> ext, Visit& visit) {
      if (visit(sub)) return true;
      if (sub.size() == max_size) return false;
      while (!ext.empty()) {
        const Vertex w = ext.back();
        ext.pop_back();
        std::vector<Vertex> next = ext;
        for (Vertex u : cg.adj[w])
          if (u > root && !in_sub[u] && !near[u]) next.push_back(u);
        sub.push_back(w);
        in_sub[w] = 1;
        for (Vertex u : cg.adj[w]) ++near[u];
        const bool stop = go(cg, root, max_size, sub, in_sub, near, std::move(next), visit);
        for (Vertex u : cg.adj[w]) --near[u];
        in_sub[w] = 0;
        sub.pop_back();
        if (stop) return true;
      }
      return false;
    }
  };
  return Rec::go(cg, root, max_size, sub, in_sub, near, std::move(ext), visit);
}

std::vector<Vertex> globalize(const ConflictGraph& cg, const std::vector<Vertex>& sub) {
  std::vector<Vertex> out;
  out.reserve(sub.size());
  for (Vertex i : sub) out.push_back(cg.ids[i]);
  std::sort(out.begin(), out.end());
  return out;
}

// First violator of size <= s in ESU order of the least root, or empty.
std::vector<Vertex> exact_search(const SimpleGraph& g, const std::vector<Vertex>& universe,
                                 double d, std::size_t s, bool parallel) {
  if (s == 0 || universe.empty()) return {};
  const ConflictGraph cg = build_conflicts(g, universe, d, s);
  const auto roots = static_cast<long>(cg.ids.size());
  std::vector<std::vector<Vertex>> found(cg.ids.size());
  auto run = [&](Vertex root, NbrCounter& nc) {
    std::vector<Vertex> scratch;
    esu(cg, root, s, [&](const std::vector<Vertex>& sub) {
      scratch.clear();
      for (Vertex i : sub) scratch.push_back(cg.ids[i]);
      if (too_small(nc.count(g, scratch.data(), scratch.size()), sub.size(), d)) {
        found[root] = globalize(cg, sub);
        return true;
      }
      return false;
    });
  };
  if (parallel) {
    std::atomic<long> best{roots};
#ifdef WC_HAVE_OPENMP
#pragma omp parallel
#endif
    {
      NbrCounter nc(g.n());
#ifdef WC_HAVE_OPENMP
#pragma omp for schedule(dynamic, 1)
#endif
      for (long r = 0; r < roots; ++r) {
        if (r > best.load(std::memory_order_relaxed)) continue;
        run(static_cast<Vertex>(r), nc);
        if (!found[r].empty()) {
          long cur = best.load();
          while (r < cur && !best.compare_exchange_weak(cur, r)) {
          }
        }
      }
    }
    if (best.load() < roots) return found[best.load()];
    return {};
  }
  NbrCounter nc(g.n());
  for (long r = 0; r < roots; ++r) {
    run(static_cast<Vertex>(r), nc);
    if (!found[r].empty()) return found[r];
  }
  return {};
}

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Sample i: a set of random size in (lo, hi]; odd samples grow a cluster
// through shared neighbours, even samples are uniform.
std::vector<Vertex> sample_set(const SimpleGraph& g, const std::vector<Vertex>& universe,
                               const std::vector<char>& in_universe, std::size_t lo,
                               std::size_t hi, std::uint64_t seed, std::size_t i) {
  std::mt19937_64 rng(mix(seed ^ mix(i)));
  const std::size_t k = lo + 1 + rng() % (hi - lo);
  std::vector<Vertex> s;
  std::vector<char> taken(g.n(), 0);
  if (i % 2 == 1) {
    s.push_back(universe[rng() % universe.size()]);
    taken[s[0]] = 1;
    for (std::size_t tries = 0; s.size() < k && tries < 50 * k; ++tries) {
      const Vertex a = s[rng() % s.size()];
      if (g.degree(a) == 0) continue;
      const Vertex w = g.neighbors(a)[rng() % g.degree(a)];
      Vertex b = w;
      if (!in_universe[b]) {
        if (g.degree(w) == 0) continue;
        b = g.neighbors(w)[rng() % g.degree(w)];
      }
      if (!in_universe[b] || taken[b]) continue;
      taken[b] = 1;
      s.push_back(b);
    }
  }
  while (s.size() < k) {
    const Vertex v = universe[rng() % universe.size()];
    if (taken[v]) continue;
    taken[v] = 1;
    s.push_back(v);
  }
  std::sort(s.begin(), s.end());
  return s;
}

ExpanderVerdict check_over(const SimpleGraph& g, const std::vector<Vertex>& universe, double d,
                           std::size_t s_max, const ExpanderOptions& opt) {
  ExpanderVerdict v;
  s_max = std::min(s_max, universe.size());
  const bool exhaustive = s_max <= opt.subset_budget;
  const std::size_t exact = exhaustive ? s_max : opt.subset_budget;
  v.exact_up_to = exact;
  v.mode = exhaustive ? CheckMode::Exhaustive : (opt.samples ? CheckMode::Sampled : CheckMode::ExactUpTo);
  v.witness = exact_search(g, universe, d, exact, opt.parallel);
  if (!v.witness.empty() || exhaustive || !opt.samples) {
    v.holds = v.witness.empty();
    return v;
  }
  std::vector<char> in_universe(g.n(), 0);
  for (Vertex u : universe) in_universe[u] = 1;
  const auto n = static_cast<long>(opt.samples);
  long first_bad = n;
  auto probe = [&](long i, NbrCounter& nc) {
    const auto s = sample_set(g, universe, in_universe, exact, s_max, opt.seed, static_cast<std::size_t>(i));
    return too_small(nc.count(g, s.data(), s.size()), s.size(), d);
  };
  if (opt.parallel) {
#ifdef WC_HAVE_OPENMP
#pragma omp parallel
#endif
    {
      NbrCounter nc(g.n());
#ifdef WC_HAVE_OPENMP
#pragma omp for reduction(min : first_bad) schedule(static)
#endif
      for (long i = 0; i < n; ++i)
        if (i < first_bad && probe(i, nc)) first_bad = std::min(first_bad, i);
    }
  } else {
    NbrCounter nc(g.n());
    for (long i = 0; i < n && first_bad == n; ++i)
      if (probe(i, nc)) first_bad = i;
  }
  v.sampled = static_cast<std::size_t>(n);
  if (first_bad < n)
    v.witness = sample_set(g, universe, in_universe, exact, s_max, opt.seed,
                           static_cast<std::size_t>(first_bad));
  v.holds = v.witness.empty();
  return v;
}

std::size_t floor_eps(double eps, std::size_t n) {
  return static_cast<std::size_t>(std::floor(eps * static_cast<double>(n) + 1e-9));
}

}  // namespace

std::size_t neighbourhood_size(const SimpleGraph& g, const std::vector<Vertex>& s) {
  std::vector<char> in_s(g.n(), 0), seen(g.n(), 0);
  for (Vertex v : s) in_s[v] = 1;
  std::size_t c = 0;
  for (Vertex v : s)
    for (Vertex w : g.neighbors(v))
      if (!in_s[w] && !seen[w]) {
        seen[w] = 1;
        ++c;
      }
  return c;
}

bool violates_expansion(const SimpleGraph& g, const std::vector<Vertex>& s, double d) {
  return !s.empty() && too_small(neighbourhood_size(g, s), s.size(), d);
}

ExpanderVerdict check_expander(const SimpleGraph& g, double d, double eps,
                               const ExpanderOptions& opt) {
  std::vector<Vertex> all(g.n());
  for (Vertex v = 0; v < g.n(); ++v) all[v] = v;
  return check_over(g, all, d, floor_eps(eps, g.n()), opt);
}

ExpanderVerdict check_half_expander(const SimpleGraph& g, double d, double eps,
                                    const ExpanderOptions& opt) {
  if (!g.has_bipartition()) throw std::invalid_argument("half-expander check needs a bipartition");
  const auto left = g.left();
  return check_over(g, left, d, floor_eps(eps, left.size()), opt);
}

std::vector<std::vector<Vertex>> minimal_non_expanding(const SimpleGraph& g,
                                                       const std::vector<Vertex>& side, double d,
                                                       std::size_t max_size, bool parallel) {
  if (max_size == 0 || side.empty()) return {};
  const ConflictGraph cg = build_conflicts(g, side, d, max_size);
  const auto roots = static_cast<long>(cg.ids.size());
  std::vector<std::vector<std::vector<Vertex>>> per_root(cg.ids.size());
  auto run = [&](Vertex root, NbrCounter& nc) {
    std::vector<Vertex> scratch;
    esu(cg, root, max_size, [&](const std::vector<Vertex>& sub) {
      scratch.clear();
      for (Vertex i : sub) scratch.push_back(cg.ids[i]);
      if (too_small(nc.count(g, scratch.data(), scratch.size()), sub.size(), d))
        per_root[root].push_back(globalize(cg, sub));
      return false;
    });
  };
#ifdef WC_HAVE_OPENMP
#pragma omp parallel if (parallel)
#endif
  {
    NbrCounter nc(g.n());
#ifdef WC_HAVE_OPENMP
#pragma omp for schedule(dynamic, 1)
#endif
    for (long r = 0; r < roots; ++r) run(static_cast<Vertex>(r), nc);
  }
  (void)parallel;
  std::vector<std::vector<Vertex>> all;
  for (auto& l : per_root)
    for (auto& s : l) all.push_back(std::move(s));
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  std::vector<std::vector<Vertex>> minimal;
  for (const auto& s : all) {
    const bool has_sub = std::any_of(minimal.begin(), minimal.end(), [&](const auto& m) {
      return m.size() < s.size() && std::includes(s.begin(), s.end(), m.begin(), m.end());
    });
    if (!has_sub) minimal.push_back(s);
  }
  return minimal;
}

HallResult hall_cover_matching(const SimpleGraph& g, const std::vector<Vertex>& t,
                               const std::vector<Vertex>& y) {
  HallResult res;
  const std::size_t L = t.size();
  std::vector<Vertex> right_index(g.n(), static_cast<Vertex>(-1));
  for (Vertex i = 0; i < y.size(); ++i) right_index[y[i]] = i;
  std::vector<std::vector<Vertex>> adj(L);
  for (std::size_t i = 0; i < L; ++i)
    for (Vertex w : g.neighbors(t[i]))
      if (right_index[w] != static_cast<Vertex>(-1)) adj[i].push_back(right_index[w]);
  constexpr std::size_t kFree = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> match_l(L, kFree), match_r(y.size(), kFree), dist(L);

  // Hopcroft-Karp phases.
  auto bfs = [&] {
    std::queue<std::size_t> q;
    bool reach = false;
    for (std::size_t i = 0; i < L; ++i) {
      dist[i] = match_l[i] == kFree ? 0 : kFree;
      if (!dist[i]) q.push(i);
    }
    while (!q.empty()) {
      const std::size_t i = q.front();
      q.pop();
      for (Vertex r : adj[i]) {
        const std::size_t j = match_r[r];
        if (j == kFree) reach = true;
        else if (dist[j] == kFree) {
          dist[j] = dist[i] + 1;
          q.push(j);
        }
      }
    }
    return reach;
  };
  std::vector<std::size_t> it(L);
  auto dfs = [&](auto&& self, std::size_t i) -> bool {
    for (; it[i] < adj[i].size(); ++it[i]) {
      const Vertex r = adj[i][it[i]];
      const std::size_t j = match_r[r];
      if (j == kFree || (dist[j] == dist[i] + 1 && self(self, j))) {
        match_l[i] = r;
        match_r[r] = i;
        ++it[i];
        return true;
      }
    }
    dist[i] = kFree;
    return false;
  };
  while (bfs()) {
    std::fill(it.begin(), it.end(), 0);
    for (std::size_t i = 0; i < L; ++i)
      if (match_l[i] == kFree) dfs(dfs, i);
  }

  const auto unmatched = std::find(match_l.begin(), match_l.end(), kFree);
  if (unmatched == match_l.end()) {
    res.saturated = true;
    for (std::size_t i = 0; i < L; ++i) res.matching.emplace_back(t[i], y[match_l[i]]);
    return res;
  }
  for (std::size_t i = 0; i < L; ++i)
    if (match_l[i] != kFree) res.matching.emplace_back(t[i], y[match_l[i]]);
  // Alternating reach from an unmatched vertex gives |N(S)| = |S| - 1.
  std::vector<char> seen_l(L, 0), seen_r(y.size(), 0);
  std::queue<std::size_t> q;
  const auto root = static_cast<std::size_t>(unmatched - match_l.begin());
  q.push(root);
  seen_l[root] = 1;
  while (!q.empty()) {
    const std::size_t i = q.front();
    q.pop();
    res.violator.push_back(t[i]);
    for (Vertex r : adj[i]) {
      if (seen_r[r]) continue;
      seen_r[r] = 1;
      const std::size_t j = match_r[r];
      if (j != kFree && !seen_l[j]) {
        seen_l[j] = 1;
        q.push(j);
      }
    }
  }
  std::sort(res.violator.begin(), res.violator.end());
  return res;
}

LongPathResult dfs_fourpartite_long_path(const SimpleGraph& h, const std::vector<int>& part,
                                         std::size_t m, bool check_invariant) {
  LongPathResult res;
  enum : char { Unvisited, Active, Done };
  std::vector<char> state(h.n(), Unvisited);
  std::vector<std::size_t> cursor(h.n(), 0);
  std::vector<Vertex> stack, best;
  auto is_arc = [&](Vertex a, Vertex b) {
    return part[a] >= 0 && part[b] == (part[a] + 1) % 4;
  };
  auto stack_is_path = [&] {
    for (std::size_t i = 1; i < stack.size(); ++i)
      if (!h.has_edge(stack[i - 1], stack[i]) || !is_arc(stack[i - 1], stack[i])) return false;
    return true;
  };
  for (Vertex root = 0; root < h.n() && !res.found; ++root) {
    if (part[root] < 0 || state[root] != Unvisited) continue;
    state[root] = Active;
    stack.push_back(root);
    while (!stack.empty()) {
      if (stack.size() > best.size()) best = stack;
      if (stack.size() >= m + 4) {
        res.found = true;
        break;
      }
      const Vertex v = stack.back();
      const auto& nb = h.neighbors(v);
      while (cursor[v] < nb.size() &&
             !(state[nb[cursor[v]]] == Unvisited && is_arc(v, nb[cursor[v]])))
        ++cursor[v];
      if (cursor[v] < nb.size()) {
        const Vertex w = nb[cursor[v]++];
        state[w] = Active;
        stack.push_back(w);
      } else {
        state[v] = Done;
        stack.pop_back();
        if (check_invariant)
          for (Vertex w : nb)
            if (is_arc(v, w) && state[w] == Unvisited) res.invariant_held = false;
      }
      if (check_invariant && !stack_is_path()) res.invariant_held = false;
    }
  }
  res.longest_stack = best.size();
  if (!res.found) {
    res.path = best;
    return res;
  }
  std::size_t start = 0;
  while (part[stack[start]] != 0) ++start;
  res.path.assign(stack.begin() + static_cast<std::ptrdiff_t>(start),
                  stack.begin() + static_cast<std::ptrdiff_t>(start + m + 1));
  return res;
}

}  // namespace wc
