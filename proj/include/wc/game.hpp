#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "wc/board.hpp"

namespace wc {

enum class Owner : std::uint8_t { Free, Waiter, Client };
enum class Side : std::uint8_t { Waiter, Client };

using Offer = std::vector<Elem>;

// One round of play. A terminal sweep has no choice and lists the swept
// elements as its offer.
struct RoundRecord {
  Offer offer;
  std::optional<Elem> choice;
};

enum class ProtocolError {
  OfferSize,
  NonFreeElement,
  DuplicateElement,
  ChoiceNotInOffer,
  WrongTurn,
  GameOver,
};

const char* error_code(ProtocolError e);

class GameState {
 public:
  GameState(Board board, std::uint64_t q, bool record_history = true);

  const Board& board() const { return board_; }
  std::uint64_t q() const { return q_; }

  Owner owner(Elem x) const {
    if (bit(client_, x)) return Owner::Client;
    if (bit(waiter_, x)) return Owner::Waiter;
    return Owner::Free;
  }
  bool is_free(Elem x) const { return !bit(client_, x) && !bit(waiter_, x); }

  Elem free_count() const { return free_; }
  Elem client_count() const { return client_n_; }
  Elem waiter_count() const { return board_.size() - free_ - client_n_; }
  std::uint64_t round() const { return round_; }
  bool terminal() const { return free_ == 0; }
  Elem offer_size() const { return std::min<Elem>(q_ + 1, free_); }

  // Smallest free id >= from, or board().size() if none.
  Elem next_free(Elem from) const;

  bool recording() const { return record_; }
  const std::vector<RoundRecord>& history() const { return history_; }

  // Client graph and Waiter degrees, maintained for K_n boards only.
  const std::vector<std::vector<Vertex>>& client_adj() const { return client_adj_; }
  std::uint32_t client_degree(Vertex v) const {
    return static_cast<std::uint32_t>(client_adj_[v].size());
  }
  std::uint32_t waiter_degree(Vertex v) const { return waiter_deg_[v]; }
  bool free_pair(Vertex u, Vertex v) const { return is_free(Board::pair_id(u, v)); }
  Owner pair_owner(Vertex u, Vertex v) const { return owner(Board::pair_id(u, v)); }

  std::vector<Elem> elements_of(Owner o) const;

  // Same ownership, different bias, empty history.
  GameState rebiased(std::uint64_t q, bool record_history) const;

  friend std::optional<ProtocolError> apply_round(GameState&, const Offer&, Elem);
  friend bool sweep_if_short(GameState&);

  friend bool operator==(const GameState& a, const GameState& b) {
    return a.board_ == b.board_ && a.q_ == b.q_ && a.client_ == b.client_ &&
           a.waiter_ == b.waiter_;
  }

 private:
  static bool bit(const std::vector<std::uint64_t>& w, Elem x) {
    return (w[x >> 6] >> (x & 63)) & 1u;
  }
  void claim(Elem x, Owner o);

  Board board_;
  std::uint64_t q_;
  bool record_;
  std::vector<std::uint64_t> client_;
  std::vector<std::uint64_t> waiter_;
  Elem free_;
  Elem client_n_ = 0;
  std::uint64_t round_ = 0;
  std::vector<RoundRecord> history_;
  std::vector<std::vector<Vertex>> client_adj_;
  std::vector<std::uint32_t> waiter_deg_;
};

// Checks an offer against the protocol without changing the state.
std::optional<ProtocolError> validate_offer(const GameState& s, const Offer& offer);

// Plays one round. Rejected rounds leave the state untouched. A short
// remainder (0 < |Free| < q+1) is swept to Waiter right after the round.
std::optional<ProtocolError> apply_round(GameState& s, const Offer& offer, Elem choice);

// Sweeps a short remainder to Waiter. Returns true if a sweep happened.
bool sweep_if_short(GameState& s);

struct Forfeit {
  Side side = Side::Waiter;
  std::uint64_t round = 0;
  std::string stage;
  std::string reason;
};

using WaiterMove = std::variant<Offer, Forfeit>;
using ClientMove = std::variant<Elem, Forfeit>;

struct StageRecord {
  std::string name;
  std::uint64_t first_round = 0;
  std::uint64_t last_round = 0;
  bool ok = true;
  std::string detail;
};

class WaiterStrategy {
 public:
  virtual ~WaiterStrategy() = default;
  virtual std::string name() const = 0;
  virtual WaiterMove offer(const GameState& s) = 0;
  virtual void observe(const GameState&, const RoundRecord&) {}
  // Called once after the game ends; runs final postconditions.
  virtual void finish(const GameState&) {}
  virtual std::vector<StageRecord> stages() const { return {}; }
  // True once the strategy's goal holds in Client's graph.
  virtual bool goal_reached() const { return false; }
};

class ClientStrategy {
 public:
  virtual ~ClientStrategy() = default;
  virtual std::string name() const = 0;
  virtual ClientMove choose(const GameState& s, const Offer& offer) = 0;
  virtual void observe(const GameState&, const RoundRecord&) {}
};

// "Arbitrary" choices: lexicographically least free ids by default, or
// uniformly random ones when seeded.
class ArbitraryPicker {
 public:
  ArbitraryPicker() = default;
  explicit ArbitraryPicker(std::uint64_t seed) : rng_(seed), random_(true) {}

  Offer take(const GameState& s, Elem k);
  bool random() const { return random_; }
  std::mt19937_64& rng() { return rng_; }

 private:
  Elem cursor_ = 0;
  std::mt19937_64 rng_;
  bool random_ = false;
};

struct Transcript {
  int version = 1;
  Board board;
  std::uint64_t q = 1;
  std::string waiter;
  std::string client;
  std::uint64_t seed = 0;
  bool rounds_recorded = true;
  std::uint64_t round_count = 0;
  bool complete = true;
  std::vector<RoundRecord> rounds;
  std::vector<Elem> client_final;
  std::vector<Elem> waiter_final;
  std::optional<Forfeit> forfeit;
  std::vector<StageRecord> stages;
};

struct PlayResult {
  GameState state;
  Transcript transcript;
  bool forfeited() const { return transcript.forfeit.has_value(); }
};

struct PlayOptions {
  std::uint64_t seed = 0;
  bool record_history = true;
  // Ends play as soon as Waiter reports its goal; the transcript is then
  // marked incomplete.
  bool stop_at_goal = false;
};

// Runs a full game from the given state. Illegal strategy output is reported
// as a Forfeit of the offending side.
PlayResult play_game(GameState s, WaiterStrategy& waiter, ClientStrategy& client,
                     const PlayOptions& opts = {});

// Rebuilds the final state from a recorded transcript.
std::optional<GameState> replay(const Transcript& t, std::string* error = nullptr);

// Runs a Waiter strategy built for bias q_inner >= actual bias inside a
// virtual game. Elements of an instruction that are not offered count as
// virtually claimed by Waiter.
class BiasReduction final : public WaiterStrategy {
 public:
  BiasReduction(std::unique_ptr<WaiterStrategy> inner, std::uint64_t q_inner,
                std::optional<std::uint64_t> seed = std::nullopt);

  std::string name() const override { return inner_->name(); }
  WaiterMove offer(const GameState& s) override;
  void observe(const GameState& s, const RoundRecord& r) override;
  void finish(const GameState& s) override;
  std::vector<StageRecord> stages() const override { return inner_->stages(); }
  bool goal_reached() const override { return inner_->goal_reached(); }

  const GameState* virtual_state() const { return virt_ ? &*virt_ : nullptr; }
  WaiterStrategy& inner() { return *inner_; }

 private:
  std::unique_ptr<WaiterStrategy> inner_;
  std::uint64_t q_inner_;
  std::optional<GameState> virt_;
  Offer instruction_;
  ArbitraryPicker picker_;
};

std::unique_ptr<WaiterStrategy> reduce_bias(std::unique_ptr<WaiterStrategy> inner,
                                            std::uint64_t q_inner);

}  // namespace wc
