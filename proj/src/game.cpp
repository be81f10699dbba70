#include "wc/game.hpp"

#include <bit>
#include <stdexcept>
#include <unordered_set>

namespace wc {

const char* error_code(ProtocolError e) {
  switch (e) {
    case ProtocolError::OfferSize: return "offer-size";
    case ProtocolError::NonFreeElement: return "non-free-edge";
    case ProtocolError::DuplicateElement: return "duplicate-element";
    case ProtocolError::ChoiceNotInOffer: return "choice-not-in-offer";
    case ProtocolError::WrongTurn: return "wrong-turn";
    case ProtocolError::GameOver: return "game-over";
  }
  return "unknown";
}

GameState::GameState(Board board, std::uint64_t q, bool record_history)
    : board_(board), q_(q), record_(record_history) {
  if (q == 0) throw std::invalid_argument("bias q must be positive");
  if (board.size() == 0) throw std::invalid_argument("empty board");
  const std::size_t words = (board.size() + 63) / 64;
  client_.assign(words, 0);
  waiter_.assign(words, 0);
  free_ = board.size();
  if (board.is_graph()) {
    client_adj_.resize(board.n());
    waiter_deg_.assign(board.n(), 0);
  }
}

Elem GameState::next_free(Elem from) const {
  const Elem e = board_.size();
  if (from >= e) return e;
  std::size_t w = from >> 6;
  std::uint64_t taken = client_[w] | waiter_[w];
  std::uint64_t avail = ~taken & (~std::uint64_t{0} << (from & 63));
  while (avail == 0) {
    if (++w >= client_.size()) return e;
    avail = ~(client_[w] | waiter_[w]);
  }
  const Elem x = (static_cast<Elem>(w) << 6) + std::countr_zero(avail);
  return x < e ? x : e;
}

std::vector<Elem> GameState::elements_of(Owner o) const {
  std::vector<Elem> out;
  const Elem e = board_.size();
  for (std::size_t w = 0; w < client_.size(); ++w) {
    std::uint64_t bits = 0;
    switch (o) {
      case Owner::Client: bits = client_[w]; break;
      case Owner::Waiter: bits = waiter_[w]; break;
      case Owner::Free: bits = ~(client_[w] | waiter_[w]); break;
    }
    while (bits) {
      const Elem x = (static_cast<Elem>(w) << 6) + std::countr_zero(bits);
      if (x >= e) break;
      out.push_back(x);
      bits &= bits - 1;
    }
  }
  return out;
}

GameState GameState::rebiased(std::uint64_t q, bool record_history) const {
  GameState g = *this;
  if (q == 0) throw std::invalid_argument("bias q must be positive");
  g.q_ = q;
  g.record_ = record_history;
  g.history_.clear();
  g.round_ = 0;
  return g;
}

void GameState::claim(Elem x, Owner o) {
  --free_;
  if (o == Owner::Client) {
    client_[x >> 6] |= std::uint64_t{1} << (x & 63);
    ++client_n_;
    if (board_.is_graph()) {
      auto [u, v] = Board::pair_of(x);
      client_adj_[u].push_back(v);
      client_adj_[v].push_back(u);
    }
  } else {
    waiter_[x >> 6] |= std::uint64_t{1} << (x & 63);
    if (board_.is_graph()) {
      auto [u, v] = Board::pair_of(x);
      ++waiter_deg_[u];
      ++waiter_deg_[v];
    }
  }
}

std::optional<ProtocolError> validate_offer(const GameState& s, const Offer& offer) {
  if (s.terminal()) return ProtocolError::GameOver;
  if (offer.size() != s.offer_size()) return ProtocolError::OfferSize;
  for (Elem x : offer)
    if (x >= s.board().size() || !s.is_free(x)) return ProtocolError::NonFreeElement;
  if (offer.size() <= 32) {
    for (std::size_t i = 0; i < offer.size(); ++i)
      for (std::size_t j = i + 1; j < offer.size(); ++j)
        if (offer[i] == offer[j]) return ProtocolError::DuplicateElement;
  } else if (!std::is_sorted(offer.begin(), offer.end())) {
    thread_local Offer scratch;
    scratch.assign(offer.begin(), offer.end());
    std::sort(scratch.begin(), scratch.end());
    if (std::adjacent_find(scratch.begin(), scratch.end()) != scratch.end())
      return ProtocolError::DuplicateElement;
  } else if (std::adjacent_find(offer.begin(), offer.end()) != offer.end()) {
    return ProtocolError::DuplicateElement;
  }
  return std::nullopt;
}

bool sweep_if_short(GameState& s) {
  if (s.free_ == 0 || s.free_ >= s.q_ + 1) return false;
  Offer rest = s.elements_of(Owner::Free);
  for (Elem x : rest) s.claim(x, Owner::Waiter);
  if (s.record_) s.history_.push_back({std::move(rest), std::nullopt});
  return true;
}

std::optional<ProtocolError> apply_round(GameState& s, const Offer& offer, Elem choice) {
  if (auto err = validate_offer(s, offer)) return err;
  if (std::find(offer.begin(), offer.end(), choice) == offer.end())
    return ProtocolError::ChoiceNotInOffer;
  for (Elem x : offer) s.claim(x, x == choice ? Owner::Client : Owner::Waiter);
  ++s.round_;
  if (s.record_) {
    Offer sorted = offer;
    std::sort(sorted.begin(), sorted.end());
    s.history_.push_back({std::move(sorted), choice});
  }
  sweep_if_short(s);
  return std::nullopt;
}

Offer ArbitraryPicker::take(const GameState& s, Elem k) {
  Offer out;
  k = std::min(k, s.free_count());
  out.reserve(k);
  if (!random_) {
    for (Elem x = s.next_free(cursor_); out.size() < k; x = s.next_free(x + 1)) {
      out.push_back(x);
      cursor_ = x;
    }
    return out;
  }
  const Elem e = s.board().size();
  if (s.free_count() * 4 >= e) {
    std::uniform_int_distribution<Elem> pick(0, e - 1);
    std::unordered_set<Elem> seen;
    while (out.size() < k) {
      const Elem x = pick(rng_);
      if (s.is_free(x) && seen.insert(x).second) out.push_back(x);
    }
    return out;
  }
  Offer pool = s.elements_of(Owner::Free);
  for (Elem i = 0; i < k; ++i) {
    std::uniform_int_distribution<Elem> pick(i, pool.size() - 1);
    std::swap(pool[i], pool[pick(rng_)]);
    out.push_back(pool[i]);
  }
  return out;
}

namespace {

Forfeit stamp(Forfeit f, Side side, const GameState& s) {
  f.side = side;
  if (f.round == 0) f.round = s.round() + 1;
  return f;
}

}  // namespace

PlayResult play_game(GameState s, WaiterStrategy& waiter, ClientStrategy& client,
                     const PlayOptions& opts) {
  Transcript t;
  t.board = s.board();
  t.q = s.q();
  t.waiter = waiter.name();
  t.client = client.name();
  t.seed = opts.seed;
  t.rounds_recorded = s.recording();

  sweep_if_short(s);
  while (!s.terminal()) {
    WaiterMove wm = waiter.offer(s);
    if (auto* f = std::get_if<Forfeit>(&wm)) {
      t.forfeit = stamp(std::move(*f), Side::Waiter, s);
      break;
    }
    Offer offer = std::move(std::get<Offer>(wm));
    if (auto err = validate_offer(s, offer)) {
      t.forfeit = stamp({Side::Waiter, 0, "engine", std::string("illegal offer: ") + error_code(*err)},
                        Side::Waiter, s);
      break;
    }
    ClientMove cm = client.choose(s, offer);
    if (auto* f = std::get_if<Forfeit>(&cm)) {
      t.forfeit = stamp(std::move(*f), Side::Client, s);
      break;
    }
    const Elem choice = std::get<Elem>(cm);
    if (auto err = apply_round(s, offer, choice)) {
      t.forfeit = stamp({Side::Client, 0, "engine", std::string("illegal choice: ") + error_code(*err)},
                        Side::Client, s);
      break;
    }
    RoundRecord rec{std::move(offer), choice};
    waiter.observe(s, rec);
    client.observe(s, rec);
    if (opts.stop_at_goal && waiter.goal_reached() && !s.terminal()) {
      t.complete = false;
      break;
    }
  }
  waiter.finish(s);

  t.round_count = s.round();
  t.stages = waiter.stages();
  if (s.recording()) {
    t.rounds = s.history();
    t.waiter_final = s.elements_of(Owner::Waiter);
  }
  t.client_final = s.elements_of(Owner::Client);
  return PlayResult{std::move(s), std::move(t)};
}

std::optional<GameState> replay(const Transcript& t, std::string* error) {
  auto fail = [&](const std::string& msg) -> std::optional<GameState> {
    if (error) *error = msg;
    return std::nullopt;
  };
  if (!t.rounds_recorded) return fail("transcript has no rounds");
  GameState s(t.board, t.q, true);
  sweep_if_short(s);
  std::size_t i = 0;
  for (const auto& r : t.rounds) {
    ++i;
    if (!r.choice) {
      if (!s.terminal() && !s.history().empty()) return fail("sweep record before the end");
      continue;
    }
    if (auto err = apply_round(s, r.offer, *r.choice))
      return fail("round " + std::to_string(i) + ": " + error_code(*err));
  }
  if (!t.client_final.empty() && s.elements_of(Owner::Client) != t.client_final)
    return fail("client elements differ");
  if (!t.waiter_final.empty() && s.elements_of(Owner::Waiter) != t.waiter_final)
    return fail("waiter elements differ");
  return s;
}

BiasReduction::BiasReduction(std::unique_ptr<WaiterStrategy> inner, std::uint64_t q_inner,
                             std::optional<std::uint64_t> seed)
    : inner_(std::move(inner)), q_inner_(q_inner) {
  if (seed) picker_ = ArbitraryPicker(*seed);
}

WaiterMove BiasReduction::offer(const GameState& s) {
  if (s.q() > q_inner_)
    return Forfeit{Side::Waiter, 0, "bias-reduction", "actual bias exceeds the inner bias"};
  if (!virt_) virt_ = s.rebiased(q_inner_, false);
  instruction_.clear();
  if (virt_->terminal()) return picker_.take(s, s.offer_size());

  WaiterMove m = inner_->offer(*virt_);
  if (std::holds_alternative<Forfeit>(m)) return m;
  Offer a = std::move(std::get<Offer>(m));
  if (auto err = validate_offer(*virt_, a))
    return Forfeit{Side::Waiter, 0, "bias-reduction",
                   std::string("inner instruction illegal: ") + error_code(*err)};
  if (a.size() < s.offer_size())
    return Forfeit{Side::Waiter, 0, "bias-reduction", "instruction smaller than q+1"};
  std::sort(a.begin(), a.end());
  instruction_ = a;
  a.resize(s.offer_size());
  return a;
}

void BiasReduction::observe(const GameState&, const RoundRecord& r) {
  if (!r.choice || instruction_.empty()) return;
  apply_round(*virt_, instruction_, *r.choice);
  RoundRecord vr{std::move(instruction_), r.choice};
  instruction_.clear();
  inner_->observe(*virt_, vr);
}

void BiasReduction::finish(const GameState& s) {
  inner_->finish(virt_ ? *virt_ : s);
}

std::unique_ptr<WaiterStrategy> reduce_bias(std::unique_ptr<WaiterStrategy> inner,
                                            std::uint64_t q_inner) {
  return std::make_unique<BiasReduction>(std::move(inner), q_inner);
}

}  // namespace wc
