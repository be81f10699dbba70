#include "wc/counting.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "wc/analysis.hpp"

namespace wc {

std::vector<Edge> prufer_decode(const std::vector<Vertex>& seq) {
  const auto k = static_cast<Vertex>(seq.size() + 2);
  std::vector<Vertex> degree(k, 1);
  for (Vertex x : seq) ++degree.at(x);
  std::vector<Edge> edges;
  edges.reserve(k - 1);
  // Linear-time decode with a moving leaf pointer.
  Vertex ptr = 0;
  while (degree[ptr] != 1) ++ptr;
  Vertex leaf = ptr;
  for (Vertex x : seq) {
    edges.emplace_back(std::min(leaf, x), std::max(leaf, x));
    if (--degree[x] == 1 && x < ptr) {
      leaf = x;
    } else {
      ++ptr;
      while (degree[ptr] != 1) ++ptr;
      leaf = ptr;
    }
  }
  edges.emplace_back(std::min(leaf, k - 1), std::max(leaf, k - 1));
  return edges;
}

void for_each_labeled_tree(Vertex k, const std::function<void(const std::vector<Edge>&)>& fn) {
  if (k > kPruferBudget) throw std::length_error("tree enumeration above k=" + std::to_string(kPruferBudget));
  if (k < 2) {
    fn({});
    return;
  }
  std::vector<Vertex> seq(k - 2, 0);
  while (true) {
    fn(prufer_decode(seq));
    std::size_t i = 0;
    while (i < seq.size() && ++seq[i] == k) seq[i++] = 0;
    if (i == seq.size()) break;
  }
}

namespace {

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

// Leaves of the tree coded by seq are the labels absent from seq.
std::uint64_t count_range(Vertex k, Vertex l, std::uint64_t lo, std::uint64_t hi) {
  const std::size_t len = k - 2;
  std::vector<Vertex> seq(len);
  std::uint64_t c = 0;
  for (std::uint64_t code = lo; code < hi; ++code) {
    std::uint64_t x = code;
    std::uint32_t used = 0;
    for (std::size_t i = 0; i < len; ++i) {
      used |= std::uint32_t{1} << (x % k);
      x /= k;
    }
    if (k - static_cast<Vertex>(std::popcount(used)) <= l) ++c;
  }
  return c;
}

}  // namespace

std::uint64_t count_low_leaf_trees(Vertex k, Vertex l, bool parallel) {
  if (k > kPruferBudget) throw std::length_error("tree enumeration above k=" + std::to_string(kPruferBudget));
  if (k < 2) return 1;
  if (k == 2) return l >= 2 ? 1 : 0;
  const std::uint64_t total = ipow(k, k - 2);
  if (!parallel) return count_range(k, l, 0, total);
  const long chunks = 64;
  std::uint64_t sum = 0;
#ifdef WC_HAVE_OPENMP
#pragma omp parallel for reduction(+ : sum) schedule(dynamic, 1)
#endif
  for (long c = 0; c < chunks; ++c)
    sum += count_range(k, l, total * static_cast<std::uint64_t>(c) / chunks,
                       total * static_cast<std::uint64_t>(c + 1) / chunks);
  return sum;
}

std::uint64_t count_low_leaf_trees_by_decoding(Vertex k, Vertex l) {
  std::uint64_t c = 0;
  for_each_labeled_tree(k, [&](const std::vector<Edge>& edges) {
    std::vector<Vertex> deg(k, 0);
    for (auto [u, v] : edges) ++deg[u], ++deg[v];
    if (static_cast<Vertex>(std::count(deg.begin(), deg.end(), 1u)) <= l) ++c;
  });
  return c;
}

long double low_leaf_bound(Vertex k, Vertex l) {
  const long double e = std::exp(1.0L);
  return std::pow(e * k, 2.0L * l) * std::tgamma(static_cast<long double>(k) + 1) /
         std::tgamma(2.0L * l + 1);
}

PathTupleCount count_path_tuples(const SimpleGraph& tree, unsigned r, std::uint64_t budget) {
  const Vertex m = tree.n();
  if (r == 0) throw std::invalid_argument("r must be at least 1");
  if (m < 3 || tree.edge_count() != m - 1 || !component_profile(tree).connected)
    throw std::invalid_argument("count_path_tuples needs a tree on at least 3 vertices");
  PathTupleCount out;

  // Centroid: least r_w, the largest branch order at w.
  std::size_t best = m + 1;
  std::vector<std::vector<Vertex>> best_branches;
  for (Vertex w = 0; w < m; ++w) {
    std::vector<std::vector<Vertex>> branches;
    std::vector<char> seen(m, 0);
    seen[w] = 1;
    for (Vertex s : tree.neighbors(w)) {
      std::vector<Vertex> comp{s}, stack{s};
      seen[s] = 1;
      while (!stack.empty()) {
        const Vertex v = stack.back();
        stack.pop_back();
        for (Vertex x : tree.neighbors(v))
          if (!seen[x]) {
            seen[x] = 1;
            comp.push_back(x);
            stack.push_back(x);
          }
      }
      branches.push_back(std::move(comp));
    }
    std::size_t rw = 0;
    for (const auto& b : branches) rw = std::max(rw, b.size());
    if (rw < best) {
      best = rw;
      out.centroid = w;
      best_branches = std::move(branches);
    }
  }
  std::stable_sort(best_branches.begin(), best_branches.end(),
                   [](const auto& x, const auto& y) { return x.size() < y.size(); });
  for (const auto& b : best_branches) {
    auto& side = 4 * out.a.size() < m ? out.a : out.b;
    side.insert(side.end(), b.begin(), b.end());
  }
  std::sort(out.a.begin(), out.a.end());
  std::sort(out.b.begin(), out.b.end());
  out.certified = ipow(out.a.size(), r) * ipow(out.b.size(), r);

  // Every unordered vertex pair spans one path; store its vertex and edge
  // masks (edges indexed by child under a root at 0).
  if (m > 64) {
    out.exact = false;
    return out;
  }
  std::vector<Vertex> parent(m, 0), depth(m, 0);
  {
    std::vector<char> seen(m, 0);
    std::vector<Vertex> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
      const Vertex v = stack.back();
      stack.pop_back();
      for (Vertex x : tree.neighbors(v))
        if (!seen[x]) {
          seen[x] = 1;
          parent[x] = v;
          depth[x] = depth[v] + 1;
          stack.push_back(x);
        }
    }
  }
  struct PathMask {
    std::uint64_t verts, edges;
  };
  std::vector<PathMask> paths;
  for (Vertex a = 0; a < m; ++a)
    for (Vertex b = a + 1; b < m; ++b) {
      PathMask p{0, 0};
      Vertex x = a, y = b;
      while (x != y) {
        if (depth[x] < depth[y]) std::swap(x, y);
        p.verts |= std::uint64_t{1} << x;
        p.edges |= std::uint64_t{1} << x;
        x = parent[x];
      }
      p.verts |= (std::uint64_t{1} << x) | (std::uint64_t{1} << a) | (std::uint64_t{1} << b);
      paths.push_back(p);
    }
  long double space = std::pow(static_cast<long double>(paths.size()), r);
  if (space > static_cast<long double>(budget)) return out;

  std::uint64_t count = 0;
  auto rec = [&](auto&& self, unsigned depth_left, std::uint64_t verts, std::uint64_t edges) -> void {
    if (depth_left == 0) {
      if (std::popcount(verts) == std::popcount(edges) + 1) ++count;
      return;
    }
    for (const auto& p : paths) self(self, depth_left - 1, verts | p.verts, edges | p.edges);
  };
  rec(rec, r, 0, 0);
  out.count = count;
  out.exact = true;
  return out;
}

}  // namespace wc
