#include "wc/staged.hpp"

#include <algorithm>

namespace wc {

StagedWaiter::StagedWaiter(std::string name, std::uint64_t q_plan)
    : name_(std::move(name)), q_plan_(q_plan) {}

bool StagedWaiter::avail(const GameState& s, Elem x) const {
  if (!s.is_free(x)) return false;
  const std::size_t w = x >> 6;
  return w >= virt_.size() || !((virt_[w] >> (x & 63)) & 1u);
}

void StagedWaiter::claim_virtually(Elem x) {
  const std::size_t w = x >> 6;
  if (w >= virt_.size()) virt_.resize(w + 1, 0);
  virt_[w] |= std::uint64_t{1} << (x & 63);
}

WaiterMove StagedWaiter::offer(const GameState& s) {
  active_child_ = nullptr;
  pending_.clear();
  handed_back_ = false;
  if (goal_) return picker_.take(s, s.offer_size());
  WaiterMove m = plan(s);
  if (active_child_ || std::holds_alternative<Forfeit>(m)) return m;
  Offer a = std::move(std::get<Offer>(m));
  if (a.empty()) {
    handed_back_ = goal_;
    return picker_.take(s, s.offer_size());
  }
  std::sort(a.begin(), a.end());
  if (std::adjacent_find(a.begin(), a.end()) != a.end())
    return forfeit(s, "instruction repeats an element");
  for (Elem x : a)
    if (x >= s.board().size() || !avail(s, x)) {
      std::string what = "instruction has a claimed element " + std::to_string(x);
      if (x < s.board().size() && s.board().is_graph()) {
        const auto [u, v] = Board::pair_of(x);
        what = "instruction has a claimed edge " + std::to_string(u) + "-" + std::to_string(v);
      }
      return forfeit(s, what);
    }
  if (a.size() < s.offer_size())
    return forfeit(s, "instruction has " + std::to_string(a.size()) + " available elements, needs " +
                          std::to_string(s.offer_size()));
  for (std::size_t i = s.offer_size(); i < a.size(); ++i) claim_virtually(a[i]);
  pending_ = a;
  a.resize(s.offer_size());
  return a;
}

void StagedWaiter::observe(const GameState& s, const RoundRecord& r) {
  if (active_child_) {
    StagedWaiter* c = active_child_;
    active_child_ = nullptr;
    c->observe(s, r);
  } else if (!pending_.empty() && r.choice) {
    absorb(s, pending_, *r.choice);
  }
  pending_.clear();
}

void StagedWaiter::finish(const GameState& s) {
  if (finished_) return;
  finished_ = true;
  for (auto& [c, prefix] : children_) c->finish(s);
  on_finish(s);
  if (stage_open_) end_stage(s);
}

std::vector<StageRecord> StagedWaiter::stages() const {
  std::vector<StageRecord> out = stages_;
  for (const auto& [c, prefix] : children_)
    for (auto r : c->stages()) {
      r.name = prefix + "/" + r.name;
      out.push_back(std::move(r));
    }
  return out;
}

bool StagedWaiter::all_stages_ok() const {
  const auto all = stages();
  return std::all_of(all.begin(), all.end(), [](const StageRecord& r) { return r.ok; });
}

void StagedWaiter::begin_stage(const std::string& name, const GameState& s) {
  if (stage_open_) end_stage(s);
  stages_.push_back({name, s.round() + 1, s.round(), true, ""});
  stage_open_ = true;
}

void StagedWaiter::end_stage(const GameState& s, bool ok, const std::string& detail) {
  if (!stage_open_) return;
  auto& r = stages_.back();
  r.last_round = s.round();
  r.ok = r.ok && ok;
  if (!detail.empty()) r.detail += (r.detail.empty() ? "" : "; ") + detail;
  stage_open_ = false;
}

void StagedWaiter::check(bool ok, const std::string& what) {
  if (ok) return;
  if (!stage_open_ && !stages_.empty()) {
    stages_.back().ok = false;
    stages_.back().detail += (stages_.back().detail.empty() ? "" : "; ") + what;
    return;
  }
  if (stages_.empty()) {
    stages_.push_back({"setup", 0, 0, false, what});
    return;
  }
  auto& r = stages_.back();
  r.ok = false;
  r.detail += (r.detail.empty() ? "" : "; ") + what;
}

void StagedWaiter::reach_goal(const GameState& s) {
  if (goal_) return;
  goal_ = true;
  goal_round_ = s.round();
}

Forfeit StagedWaiter::forfeit(const GameState& s, const std::string& reason) {
  check(false, "forfeit: " + reason);
  const std::string stage = stages_.empty() ? name_ : stages_.back().name;
  return Forfeit{Side::Waiter, s.round() + 1, name_ + "/" + stage, reason};
}

void StagedWaiter::adopt(StagedWaiter* child, const std::string& prefix) {
  children_.emplace_back(child, prefix);
}

WaiterMove StagedWaiter::delegate(StagedWaiter& child, const GameState& s) {
  WaiterMove m = child.offer(s);
  if (child.handed_back_) {
    // The child finished while planning; the round goes back to this strategy.
    child.handed_back_ = false;
    return plan(s);
  }
  active_child_ = &child;
  return m;
}

std::vector<Vertex> iota_vertices(Vertex n) {
  std::vector<Vertex> v(n);
  for (Vertex i = 0; i < n; ++i) v[i] = i;
  return v;
}

std::vector<std::vector<Vertex>> equipartition(const std::vector<Vertex>& vs, std::size_t parts) {
  std::vector<std::vector<Vertex>> out(parts);
  const std::size_t base = vs.size() / parts, extra = vs.size() % parts;
  std::size_t at = 0;
  for (std::size_t i = 0; i < parts; ++i) {
    const std::size_t len = base + (i < extra ? 1 : 0);
    out[i].assign(vs.begin() + static_cast<std::ptrdiff_t>(at),
                  vs.begin() + static_cast<std::ptrdiff_t>(at + len));
    at += len;
  }
  return out;
}

}  // namespace wc
