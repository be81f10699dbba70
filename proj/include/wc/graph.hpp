#pragma once

#include <cstdint>
#include <iosfwd>
#include <unordered_set>
#include <utility>
#include <vector>

#include "wc/board.hpp"

namespace wc {

class GameState;

using Edge = std::pair<Vertex, Vertex>;

class SimpleGraph {
 public:
  // Graphs up to this order keep a bit matrix for O(1) edge queries.
  static constexpr Vertex kDenseLimit = 16384;

  SimpleGraph() = default;
  explicit SimpleGraph(Vertex n);

  static SimpleGraph from_edges(Vertex n, const std::vector<Edge>& edges);
  static SimpleGraph complete(Vertex n);
  // Client's graph of a K_n game.
  static SimpleGraph client_graph(const GameState& s);
  // Client's graph induced on vs, relabeled 0..|vs|-1 in the given order.
  static SimpleGraph client_graph(const GameState& s, const std::vector<Vertex>& vs);

  Vertex n() const { return static_cast<Vertex>(adj_.size()); }
  std::size_t edge_count() const { return m_; }

  bool add_edge(Vertex u, Vertex v);
  bool has_edge(Vertex u, Vertex v) const;
  const std::vector<Vertex>& neighbors(Vertex v) const { return adj_[v]; }
  std::size_t degree(Vertex v) const { return adj_[v].size(); }
  std::vector<Edge> edges() const;

  // Subgraph induced on vs, relabeled 0..|vs|-1 in the given order.
  SimpleGraph induced(const std::vector<Vertex>& vs) const;

  // Optional bipartition; left holds the V1 side.
  void set_bipartition(const std::vector<Vertex>& left);
  bool has_bipartition() const { return !side_.empty(); }
  bool on_left(Vertex v) const { return side_[v] == 1; }
  std::vector<Vertex> left() const;
  std::vector<Vertex> right() const;
  bool bipartition_respected() const;

  // Row of the bit matrix (only when n <= kDenseLimit).
  bool dense() const { return !matrix_.empty(); }

 private:
  std::vector<std::vector<Vertex>> adj_;
  std::vector<std::uint64_t> matrix_;
  std::size_t words_ = 0;
  std::unordered_set<std::uint64_t> sparse_;
  std::size_t m_ = 0;
  std::vector<std::int8_t> side_;
};

// Edge lists: one "u v" pair per line, 0-indexed. The vertex count is the
// largest label plus one unless given.
SimpleGraph read_edge_list(std::istream& in, Vertex n = 0);
void write_edge_list(std::ostream& out, const SimpleGraph& g);

// True iff consecutive vertices of the sequence are adjacent and the
// sequence has no repeats. Closed additionally requires last-first adjacency.
bool is_path(const SimpleGraph& g, const std::vector<Vertex>& p);
bool is_cycle(const SimpleGraph& g, const std::vector<Vertex>& c);

}  // namespace wc
