#pragma once

#include <memory>
#include <string>
#include <vector>

#include "wc/game.hpp"

namespace wc {

// Base for the constructive Waiter strategies. A subclass plans an
// instruction each round; instructions larger than the real offer size are
// cut to their q+1 least ids and the rest counts as claimed by Waiter from
// then on (avail() turns false), which plays a larger-bias strategy at the
// real bias. Stages are logged with their postcondition verdicts.
class StagedWaiter : public WaiterStrategy {
 public:
  std::string name() const override { return name_; }
  WaiterMove offer(const GameState& s) final;
  void observe(const GameState& s, const RoundRecord& r) final;
  void finish(const GameState& s) final;
  std::vector<StageRecord> stages() const override;
  bool goal_reached() const override { return goal_; }
  std::uint64_t goal_round() const { return goal_round_; }
  bool all_stages_ok() const;

 protected:
  StagedWaiter(std::string name, std::uint64_t q_plan);

  // Next instruction (at least real q+1 available elements), a Forfeit, or
  // an empty offer to hand the round to arbitrary play.
  virtual WaiterMove plan(const GameState& s) = 0;
  // After a real round; `instruction` is the full planned set.
  virtual void absorb(const GameState&, const Offer& /*instruction*/, Elem /*choice*/) {}
  // End-of-game postconditions.
  virtual void on_finish(const GameState&) {}

  std::uint64_t q_plan() const { return q_plan_; }
  bool avail(const GameState& s, Elem x) const;
  bool avail_pair(const GameState& s, Vertex u, Vertex v) const {
    return avail(s, Board::pair_id(u, v));
  }
  void claim_virtually(Elem x);

  void begin_stage(const std::string& name, const GameState& s);
  void end_stage(const GameState& s, bool ok = true, const std::string& detail = "");
  // Marks the current stage (or a new record) failed without closing it.
  void check(bool ok, const std::string& what);
  void reach_goal(const GameState& s);
  Forfeit forfeit(const GameState& s, const std::string& reason);

  // Lets a child strategy play this round. Children are owned elsewhere and
  // registered once with adopt(); their stages are reported under prefix.
  void adopt(StagedWaiter* child, const std::string& prefix);
  WaiterMove delegate(StagedWaiter& child, const GameState& s);

 private:
  std::string name_;
  std::uint64_t q_plan_;
  std::vector<std::uint64_t> virt_;
  Offer pending_;
  StagedWaiter* active_child_ = nullptr;
  std::vector<std::pair<StagedWaiter*, std::string>> children_;
  std::vector<StageRecord> stages_;
  bool stage_open_ = false;
  bool goal_ = false;
  std::uint64_t goal_round_ = 0;
  bool finished_ = false;
  bool handed_back_ = false;
  ArbitraryPicker picker_;
};

// Vertices 0..n-1.
std::vector<Vertex> iota_vertices(Vertex n);
// Near-equal consecutive blocks of vs (sizes differ by at most one,
// larger blocks first).
std::vector<std::vector<Vertex>> equipartition(const std::vector<Vertex>& vs, std::size_t parts);

}  // namespace wc
