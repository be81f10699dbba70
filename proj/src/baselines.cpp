#include "wc/baselines.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

#include "wc/analysis.hpp"
#include "wc/graph.hpp"

namespace wc {

namespace {

class PickerWaiter final : public WaiterStrategy {
 public:
  PickerWaiter() = default;
  explicit PickerWaiter(std::uint64_t seed) : picker_(seed) {}
  std::string name() const override { return picker_.random() ? "random" : "arbitrary"; }
  WaiterMove offer(const GameState& s) override { return picker_.take(s, s.offer_size()); }

 private:
  ArbitraryPicker picker_;
};

class CycleHunter final : public WaiterStrategy {
 public:
  std::string name() const override { return "cycle_hunter"; }
  WaiterMove offer(const GameState& s) override {
    if (!s.board().is_graph()) return fallback_.take(s, s.offer_size());
    const auto g = SimpleGraph::client_graph(s);
    const auto label = component_labels(g);
    std::vector<std::uint64_t> size(g.n() + 1, 0);
    for (Vertex v = 0; v < g.n(); ++v) ++size[label[v]];
    using Key = std::tuple<int, std::int64_t, Elem>;
    std::vector<Key> keys;
    for (Vertex v = 1; v < g.n(); ++v)
      for (Vertex u = 0; u < v; ++u) {
        if (!s.free_pair(u, v)) continue;
        const Elem id = Board::pair_id(u, v);
        if (label[u] == label[v]) keys.emplace_back(0, -static_cast<std::int64_t>(size[label[u]]), id);
        else keys.emplace_back(1, -static_cast<std::int64_t>(size[label[u]] * size[label[v]]), id);
      }
    const std::size_t k = s.offer_size();
    std::partial_sort(keys.begin(), keys.begin() + k, keys.end());
    Offer out;
    for (std::size_t i = 0; i < k; ++i) out.push_back(std::get<2>(keys[i]));
    return out;
  }

 private:
  ArbitraryPicker fallback_;
};

class StarWaiter final : public WaiterStrategy {
 public:
  std::string name() const override { return "star"; }
  WaiterMove offer(const GameState& s) override {
    if (!s.board().is_graph()) return fallback_.take(s, s.offer_size());
    const Vertex n = s.board().n();
    std::vector<Vertex> order(n);
    std::iota(order.begin(), order.end(), Vertex{0});
    std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
      return s.client_degree(a) < s.client_degree(b);
    });
    const std::size_t k = s.offer_size();
    Offer out;
    std::vector<char> used(s.board().size(), 0);
    for (Vertex c : order) {
      for (Vertex w : order) {
        if (out.size() == k) return out;
        if (w == c || !s.free_pair(c, w)) continue;
        const Elem id = Board::pair_id(c, w);
        if (used[id]) continue;
        used[id] = 1;
        out.push_back(id);
      }
      if (out.size() == k) return out;
    }
    return out;
  }

 private:
  ArbitraryPicker fallback_;
};

}  // namespace

std::unique_ptr<WaiterStrategy> waiter_arbitrary() { return std::make_unique<PickerWaiter>(); }

std::unique_ptr<WaiterStrategy> waiter_random(std::uint64_t seed) {
  return std::make_unique<PickerWaiter>(seed);
}

std::unique_ptr<WaiterStrategy> waiter_cycle_hunter() { return std::make_unique<CycleHunter>(); }

std::unique_ptr<WaiterStrategy> waiter_star() { return std::make_unique<StarWaiter>(); }

}  // namespace wc
