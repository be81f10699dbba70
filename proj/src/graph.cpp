#include "wc/graph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "wc/game.hpp"

namespace wc {

SimpleGraph::SimpleGraph(Vertex n) : adj_(n) {
  if (n <= kDenseLimit) {
    words_ = (static_cast<std::size_t>(n) + 63) / 64;
    matrix_.assign(words_ * n, 0);
  }
}

SimpleGraph SimpleGraph::from_edges(Vertex n, const std::vector<Edge>& edges) {
  SimpleGraph g(n);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

SimpleGraph SimpleGraph::complete(Vertex n) {
  SimpleGraph g(n);
  for (Vertex v = 1; v < n; ++v)
    for (Vertex u = 0; u < v; ++u) g.add_edge(u, v);
  return g;
}

SimpleGraph SimpleGraph::client_graph(const GameState& s) {
  if (!s.board().is_graph()) throw std::invalid_argument("client_graph needs a K_n board");
  SimpleGraph g(s.board().n());
  const auto& adj = s.client_adj();
  for (Vertex u = 0; u < g.n(); ++u)
    for (Vertex v : adj[u])
      if (u < v) g.add_edge(u, v);
  return g;
}

SimpleGraph SimpleGraph::client_graph(const GameState& s, const std::vector<Vertex>& vs) {
  if (!s.board().is_graph()) throw std::invalid_argument("client_graph needs a K_n board");
  std::vector<Vertex> index(s.board().n(), static_cast<Vertex>(-1));
  for (Vertex i = 0; i < vs.size(); ++i) index[vs[i]] = i;
  SimpleGraph g(static_cast<Vertex>(vs.size()));
  const auto& adj = s.client_adj();
  for (Vertex i = 0; i < vs.size(); ++i)
    for (Vertex w : adj[vs[i]])
      if (index[w] != static_cast<Vertex>(-1) && i < index[w]) g.add_edge(i, index[w]);
  return g;
}

bool SimpleGraph::add_edge(Vertex u, Vertex v) {
  if (u == v || u >= n() || v >= n()) return false;
  if (has_edge(u, v)) return false;
  if (dense()) {
    matrix_[u * words_ + (v >> 6)] |= std::uint64_t{1} << (v & 63);
    matrix_[v * words_ + (u >> 6)] |= std::uint64_t{1} << (u & 63);
  } else {
    sparse_.insert(Board::pair_id(u, v));
  }
  adj_[u].push_back(v);
  adj_[v].push_back(u);
  ++m_;
  return true;
}

bool SimpleGraph::has_edge(Vertex u, Vertex v) const {
  if (u == v || u >= n() || v >= n()) return false;
  if (dense()) return (matrix_[u * words_ + (v >> 6)] >> (v & 63)) & 1u;
  return sparse_.count(Board::pair_id(u, v)) > 0;
}

std::vector<Edge> SimpleGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(m_);
  for (Vertex u = 0; u < n(); ++u)
    for (Vertex v : adj_[u])
      if (u < v) out.emplace_back(u, v);
  std::sort(out.begin(), out.end());
  return out;
}

SimpleGraph SimpleGraph::induced(const std::vector<Vertex>& vs) const {
  std::vector<Vertex> index(n(), static_cast<Vertex>(-1));
  for (Vertex i = 0; i < vs.size(); ++i) index[vs[i]] = i;
  SimpleGraph g(static_cast<Vertex>(vs.size()));
  for (Vertex i = 0; i < vs.size(); ++i)
    for (Vertex w : adj_[vs[i]])
      if (index[w] != static_cast<Vertex>(-1) && i < index[w]) g.add_edge(i, index[w]);
  return g;
}

void SimpleGraph::set_bipartition(const std::vector<Vertex>& left) {
  side_.assign(n(), 2);
  for (Vertex v : left) side_.at(v) = 1;
}

std::vector<Vertex> SimpleGraph::left() const {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < n(); ++v)
    if (side_[v] == 1) out.push_back(v);
  return out;
}

std::vector<Vertex> SimpleGraph::right() const {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < n(); ++v)
    if (side_[v] != 1) out.push_back(v);
  return out;
}

bool SimpleGraph::bipartition_respected() const {
  if (!has_bipartition()) return false;
  for (Vertex u = 0; u < n(); ++u)
    for (Vertex v : adj_[u])
      if (side_[u] == side_[v]) return false;
  return true;
}

SimpleGraph read_edge_list(std::istream& in, Vertex n) {
  std::vector<Edge> edges;
  std::string line;
  Vertex top = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    long long u, v;
    if (!(ls >> u >> v) || u < 0 || v < 0) throw std::runtime_error("bad edge line: " + line);
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    top = std::max<Vertex>(top, static_cast<Vertex>(std::max(u, v)) + 1);
  }
  return SimpleGraph::from_edges(std::max(n, top), edges);
}

void write_edge_list(std::ostream& out, const SimpleGraph& g) {
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

bool is_path(const SimpleGraph& g, const std::vector<Vertex>& p) {
  if (p.empty()) return false;
  std::vector<char> seen(g.n(), 0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] >= g.n() || seen[p[i]]) return false;
    seen[p[i]] = 1;
    if (i > 0 && !g.has_edge(p[i - 1], p[i])) return false;
  }
  return true;
}

bool is_cycle(const SimpleGraph& g, const std::vector<Vertex>& c) {
  return c.size() >= 3 && is_path(g, c) && g.has_edge(c.back(), c.front());
}

}  // namespace wc
