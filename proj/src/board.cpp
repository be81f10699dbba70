#include "wc/board.hpp"

#include <cmath>
#include <stdexcept>

namespace wc {

Board Board::complete(Vertex n) {
  if (n < 2) throw std::invalid_argument("K_n needs n >= 2");
  Board b;
  b.kind_ = BoardKind::Complete;
  b.n_ = n;
  b.e_ = static_cast<Elem>(n) * (n - 1) / 2;
  return b;
}

Board Board::abstract(Elem e) {
  if (e == 0) throw std::invalid_argument("empty board");
  Board b;
  b.kind_ = BoardKind::Abstract;
  b.e_ = e;
  return b;
}

std::pair<Vertex, Vertex> Board::pair_of(Elem id) {
  auto v = static_cast<Elem>((1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(id))) / 2.0);
  while (v * (v - 1) / 2 > id) --v;
  while ((v + 1) * v / 2 <= id) ++v;
  return {static_cast<Vertex>(id - v * (v - 1) / 2), static_cast<Vertex>(v)};
}

std::string Board::describe() const {
  if (is_graph()) return "K_" + std::to_string(n_);
  return "X_" + std::to_string(e_);
}

}  // namespace wc
