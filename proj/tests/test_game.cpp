#include "doctest.h"

#include <random>

#include "wc/baselines.hpp"
#include "wc/client.hpp"
#include "wc/game.hpp"
#include "wc/graph.hpp"
#include "wc/analysis.hpp"
#include "wc/registry.hpp"
#include "wc/transcript_io.hpp"

using namespace wc;

TEST_CASE("pair ids follow colex order") {
  Elem id = 0;
  for (Vertex v = 1; v < 30; ++v)
    for (Vertex u = 0; u < v; ++u) {
      CHECK(Board::pair_id(u, v) == id);
      CHECK(Board::pair_id(v, u) == id);
      CHECK(Board::pair_of(id) == std::pair<Vertex, Vertex>{u, v});
      ++id;
    }
}

TEST_CASE("K_4 with q=4: one round, then the last edge sweeps to Waiter") {
  GameState s(Board::complete(4), 4);
  CHECK(s.offer_size() == 5);
  REQUIRE_FALSE(apply_round(s, {0, 1, 2, 3, 4}, 2));
  CHECK(s.terminal());
  CHECK(s.client_count() == 1);
  CHECK(s.waiter_count() == 5);
  REQUIRE(s.history().size() == 2);
  CHECK_FALSE(s.history().back().choice.has_value());
  CHECK(s.history().back().offer == Offer{5});
}

TEST_CASE("K_4 with q=1 ends after three rounds, three edges each") {
  GameState s(Board::complete(4), 1);
  auto w = waiter_arbitrary();
  auto c = client_random(3);
  auto r = play_game(s, *w, *c);
  CHECK(r.state.round() == 3);
  CHECK(r.state.client_count() == 3);
  CHECK(r.state.waiter_count() == 3);
}

TEST_CASE("protocol errors leave the state untouched") {
  GameState s(Board::complete(5), 2);
  const GameState before = s;
  CHECK(apply_round(s, {0, 1}, 0) == ProtocolError::OfferSize);
  CHECK(apply_round(s, {0, 1, 1}, 0) == ProtocolError::DuplicateElement);
  CHECK(apply_round(s, {0, 1, 2}, 7) == ProtocolError::ChoiceNotInOffer);
  CHECK(apply_round(s, {0, 1, 99}, 0).has_value());
  CHECK(s == before);
  REQUIRE_FALSE(apply_round(s, {0, 1, 2}, 0));
  CHECK(apply_round(s, {0, 3, 4}, 3) == ProtocolError::NonFreeElement);
  CHECK(std::string(error_code(ProtocolError::ChoiceNotInOffer)) == "choice-not-in-offer");
}

TEST_CASE("K_5 with q=3: Client ends with two edges whatever is played") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto w = waiter_random(seed);
    auto c = client_random(seed + 100);
    auto r = play_game(GameState(Board::complete(5), 3), *w, *c);
    CHECK(r.state.client_count() == 2);
    CHECK(r.state.terminal());
  }
}

TEST_CASE("edge-count law under maximal offers") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const Vertex n = 2 + rng() % 12;
    const std::uint64_t q = 1 + rng() % 20;
    auto w = waiter_random(rng());
    auto c = client_random(rng());
    auto r = play_game(GameState(Board::complete(n), q), *w, *c);
    const Elem e = static_cast<Elem>(n) * (n - 1) / 2;
    CHECK(r.state.client_count() == e / (q + 1));
    CHECK(r.state.free_count() == 0);
  }
}

TEST_CASE("abstract boards play to the end") {
  auto w = waiter_random(1);
  auto c = client_random(2);
  auto r = play_game(GameState(Board::abstract(17), 2), *w, *c);
  CHECK(r.state.client_count() == 17 / 3);
}

TEST_CASE("connectivity strategy on K_4, q=1, against a random Client") {
  auto w = make_waiter("connectivity", {.n = 4, .q = 1});
  auto c = client_random(0);
  auto r = play_game(GameState(Board::complete(4), 1), *w, *c);
  CHECK(component_profile(SimpleGraph::client_graph(r.state)).connected);
}

TEST_CASE("replay rebuilds the final state and transcripts round-trip byte for byte") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto w = make_waiter("big_component", {.n = 9, .q = 2});
    auto c = client_random(seed);
    auto r = play_game(GameState(Board::complete(9), 2), *w, *c, {.seed = seed});
    std::string why;
    auto again = replay(r.transcript, &why);
    REQUIRE_MESSAGE(again.has_value(), why);
    CHECK(*again == r.state);
    const std::string text = write_transcript(r.transcript);
    CHECK(write_transcript(read_transcript(text)) == text);
    CHECK(text.find(' ') == std::string::npos);
  }
}

TEST_CASE("a tampered transcript is rejected") {
  auto w = waiter_arbitrary();
  auto c = client_arbitrary();
  auto r = play_game(GameState(Board::complete(5), 1), *w, *c);
  Transcript t = r.transcript;
  t.rounds[1].choice = t.rounds[0].offer[1];  // Waiter already owns it
  CHECK_FALSE(replay(t).has_value());
}

TEST_CASE("bias reduction: a q'=3 connectivity strategy still wins at q=1 on K_8") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto inner = make_connectivity(iota_vertices(8), 3);
    BiasReduction w(std::move(inner), 3, seed);
    auto c = client_random(seed);
    auto r = play_game(GameState(Board::complete(8), 1), w, *c);
    CHECK_FALSE(r.forfeited());
    CHECK(component_profile(SimpleGraph::client_graph(r.state)).connected);
  }
}

TEST_CASE("illegal strategy output is a forfeit") {
  struct Bad final : WaiterStrategy {
    std::string name() const override { return "bad"; }
    WaiterMove offer(const GameState&) override { return Offer{0}; }
  } bad;
  auto c = client_arbitrary();
  auto r = play_game(GameState(Board::complete(5), 2), bad, *c);
  REQUIRE(r.forfeited());
  CHECK(r.transcript.forfeit->side == Side::Waiter);
}
