#include "doctest.h"

#include <httplib.h>

#include <random>
#include <thread>

#include "wc/analysis.hpp"
#include "wc/graph.hpp"
#include "wc/service.hpp"
#include "wc/transcript_io.hpp"

using namespace wc;

namespace {

Json body(const ApiResponse& r) { return r.body; }

std::string error_code_of(const ApiResponse& r) { return r.body.at("error").at("code"); }

// Plays the human Client side by taking the first pending edge.
void play_out(SessionManager& m, const std::string& id) {
  for (int guard = 0; guard < 10000; ++guard) {
    auto st = m.state(id).body;
    if (st["status"] == "finished") return;
    REQUIRE(st["status"] == "awaiting-choice");
    const Json pick = st["pending_offer"][0];
    auto r = m.choice(id, Json{{"choice", pick}}.dump());
    REQUIRE(r.status == 200);
  }
  FAIL("game did not finish");
}

}  // namespace

TEST_CASE("human Client against the connectivity Waiter") {
  SessionManager m;
  auto c = m.create(R"({"n":12,"q":2,"human":"client","waiter":"connectivity","seed":4})");
  REQUIRE(c.status == 201);
  const std::string id = c.body["id"];
  CHECK(c.body["machine"] == "connectivity");
  CHECK(c.body["status"] == "awaiting-choice");
  CHECK(c.body["pending_offer"].size() == 3);
  play_out(m, id);
  auto t = m.transcript(id);
  REQUIRE(t.status == 200);
  const Transcript tr = transcript_from_json(t.body);
  auto end = replay(tr);
  REQUIRE(end.has_value());
  CHECK(component_profile(SimpleGraph::client_graph(*end)).connected);
  CHECK(write_transcript(read_transcript(canonical_dump(t.body))) == canonical_dump(t.body));
  auto a = m.analysis(id);
  CHECK(a.body["connected"] == true);
  auto ev = m.events(id, 0, 0);
  CHECK(ev.body["finished"] == true);
  CHECK(ev.body["events"].front()["type"] == "created");
  CHECK(ev.body["events"].back()["type"] == "end");
  std::uint64_t seq = 0;
  for (const auto& e : ev.body["events"]) CHECK(e["seq"].get<std::uint64_t>() == ++seq);
}

TEST_CASE("infeasible Waiter names fall back in order") {
  SessionManager m;
  auto c = m.create(R"({"n":6,"q":4,"waiter":["connectivity","random"]})");
  REQUIRE(c.status == 201);
  CHECK(c.body["machine"] == "random");
  auto bad = m.create(R"({"n":6,"q":4,"waiter":"connectivity"})");
  CHECK(bad.status == 422);
  CHECK(error_code_of(bad) == "strategy-rejected");
}

TEST_CASE("human Waiter against a machine Client") {
  SessionManager m;
  auto c = m.create(R"({"n":5,"q":1,"human":"waiter","client":"random","seed":1})");
  REQUIRE(c.status == 201);
  const std::string id = c.body["id"];
  CHECK(c.body["status"] == "awaiting-offer");
  // Wrong size, then claimed edges, then a turn violation.
  CHECK(error_code_of(m.offer(id, R"({"offer":[[0,1]]})")) == "offer-size");
  CHECK(error_code_of(m.offer(id, R"({"offer":[[0,1],[1,0]]})")) == "duplicate-element");
  CHECK(error_code_of(m.choice(id, R"({"choice":[0,1]})")) == "wrong-turn");
  auto ok = m.offer(id, R"({"offer":[[0,1],[2,3]]})");
  REQUIRE(ok.status == 200);
  CHECK(ok.body["round"] == 1);
  auto again = m.offer(id, R"({"offer":[[0,1],[2,4]]})");
  CHECK(again.status == 422);
  CHECK(error_code_of(again) == "non-free-edge");
}

TEST_CASE("choice errors keep the session usable") {
  SessionManager m;
  auto c = m.create(R"({"n":6,"q":1,"waiter":"connectivity"})");
  const std::string id = c.body["id"];
  const Json before = m.state(id).body;
  CHECK(error_code_of(m.choice(id, R"({"choice":[4,5]})")) == "choice-not-in-offer");
  CHECK(error_code_of(m.choice(id, R"({"choice":"x"})")) == "bad-request");
  CHECK(error_code_of(m.choice(id, "not json")) == "bad-request");
  CHECK(m.state(id).body == before);
  CHECK(error_code_of(m.state("nope")) == "not-found");
  play_out(m, id);
  CHECK(error_code_of(m.choice(id, R"({"choice":[0,1]})")) == "game-over");
}

TEST_CASE("bad create bodies") {
  SessionManager m;
  for (const char* b : {"", "[]", R"({"n":1,"q":1})", R"({"n":5})", R"({"n":5,"q":0})",
                        R"({"n":500,"q":1})", R"({"n":5,"q":1,"human":"both"})"}) {
    auto r = m.create(b);
    CHECK(r.status == 400);
    CHECK(error_code_of(r) == "bad-request");
  }
  auto u = m.create(R"({"n":5,"q":1,"human":"waiter","client":"nobody"})");
  CHECK(u.status == 400);
  CHECK(error_code_of(u) == "unknown-strategy");
}

TEST_CASE("malformed inputs never crash the manager") {
  SessionManager m;
  auto c = m.create(R"({"n":8,"q":1,"human":"waiter"})");
  const std::string id = c.body["id"];
  std::mt19937_64 rng(42);
  const std::string alphabet = "{}[]\",:0123456789-abcoferhi ";
  for (int i = 0; i < 2000; ++i) {
    std::string s;
    const int len = rng() % 30;
    for (int j = 0; j < len; ++j) s += alphabet[rng() % alphabet.size()];
    if (i % 3 == 0) s = R"({"offer":[)" + s;
    auto r = i % 2 ? m.offer(id, s) : m.create(s);
    CHECK(r.status >= 200);
    if (r.status >= 400) CHECK(r.body.contains("error"));
  }
}

TEST_CASE("HTTP transport") {
  SessionManager m;
  httplib::Server server;
  install_routes(server, m);
  const int port = server.bind_to_any_port("127.0.0.1");
  REQUIRE(port > 0);
  std::thread th([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  httplib::Client cli("127.0.0.1", port);
  auto res = cli.Post("/sessions", R"({"n":12,"q":2,"waiter":"connectivity","seed":2})",
                      "application/json");
  REQUIRE(res);
  CHECK(res->status == 201);
  const Json snap = Json::parse(res->body);
  const std::string id = snap["id"];

  // A long poll from a second thread sees the first round.
  std::string polled;
  std::thread waiter([&] {
    httplib::Client c2("127.0.0.1", port);
    auto ev = c2.Get("/sessions/" + id + "/events?since=" +
                     std::to_string(snap["last_seq"].get<int>()) + "&wait=5000");
    if (ev) polled = ev->body;
  });
  auto bad = cli.Post("/sessions/" + id + "/choice", R"({"choice":[11,10]})", "application/json");
  REQUIRE(bad);
  if (bad->status == 200) {
    // The pair happened to be offered; fine.
  } else {
    CHECK(bad->status == 422);
    CHECK(Json::parse(bad->body)["error"]["code"] == "choice-not-in-offer");
  }
  for (int guard = 0; guard < 1000; ++guard) {
    auto st = Json::parse(cli.Get("/sessions/" + id)->body);
    if (st["status"] == "finished") break;
    auto r = cli.Post("/sessions/" + id + "/choice", Json{{"choice", st["pending_offer"][0]}}.dump(),
                      "application/json");
    REQUIRE(r);
    REQUIRE(r->status == 200);
  }
  waiter.join();
  REQUIRE_FALSE(polled.empty());
  CHECK_FALSE(Json::parse(polled)["events"].empty());

  auto tr = cli.Get("/sessions/" + id + "/transcript");
  REQUIRE(tr);
  CHECK(tr->body == canonical_dump(m.transcript(id).body));
  CHECK(write_transcript(read_transcript(tr->body)) == tr->body);

  auto stream = cli.Get("/sessions/" + id + "/events?since=0&mode=stream");
  REQUIRE(stream);
  std::size_t lines = 0;
  for (char ch : stream->body) lines += ch == '\n';
  CHECK(lines == m.events(id, 0, 0).body["events"].size());

  auto nf = cli.Get("/sessions/zzz");
  REQUIRE(nf);
  CHECK(nf->status == 404);
  auto an = cli.Get("/sessions/" + id + "/analysis");
  REQUIRE(an);
  CHECK(Json::parse(an->body)["connected"] == true);

  server.stop();
  th.join();
}
