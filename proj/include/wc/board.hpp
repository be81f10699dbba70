#pragma once

#include <cstdint>
#include <string>
#include <utility>

namespace wc {

using Elem = std::uint64_t;
using Vertex = std::uint32_t;

enum class BoardKind { Complete, Abstract };

// Element set of a game. For K_n the ids follow colex pair order:
// id(u, v) = v(v-1)/2 + u for u < v.
class Board {
 public:
  static Board complete(Vertex n);
  static Board abstract(Elem e);

  BoardKind kind() const { return kind_; }
  bool is_graph() const { return kind_ == BoardKind::Complete; }
  Vertex n() const { return n_; }
  Elem size() const { return e_; }

  static Elem pair_id(Vertex u, Vertex v);
  static std::pair<Vertex, Vertex> pair_of(Elem id);

  std::string describe() const;

  friend bool operator==(const Board&, const Board&) = default;

 private:
  BoardKind kind_ = BoardKind::Abstract;
  Vertex n_ = 0;
  Elem e_ = 0;
};

inline Elem Board::pair_id(Vertex u, Vertex v) {
  if (u > v) std::swap(u, v);
  return static_cast<Elem>(v) * (v - 1) / 2 + u;
}

}  // namespace wc
