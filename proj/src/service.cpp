#include "wc/service.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>

#include "httplib.h"
#include "wc/registry.hpp"
#include "wc/report.hpp"

namespace wc {

Json api_error(const std::string& code, const std::string& message) {
  return {{"error", {{"code", code}, {"message", message}}}};
}

namespace {

ApiResponse fail(int status, const std::string& code, const std::string& message) {
  return {status, api_error(code, message)};
}

ApiResponse protocol_fail(ProtocolError e) {
  const int status = e == ProtocolError::WrongTurn || e == ProtocolError::GameOver ? 409 : 422;
  return fail(status, error_code(e), std::string("protocol violation: ") + error_code(e));
}

const char* role_name(Role r) { return r == Role::Client ? "client" : "waiter"; }

Json forfeit_json(const Forfeit& f) {
  return {{"side", f.side == Side::Waiter ? "waiter" : "client"},
          {"round", f.round},
          {"stage", f.stage},
          {"reason", f.reason}};
}

}  // namespace

SessionManager::SessionManager(ServiceOptions opts) : opts_(std::move(opts)) {
  if (!opts_.event_log_dir.empty()) std::filesystem::create_directories(opts_.event_log_dir);
}

std::shared_ptr<Session> SessionManager::find(const std::string& id) {
  std::lock_guard lock(mu_);
  auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

void SessionManager::emit(Session& s, const std::string& type, Json data) {
  Json e = {{"seq", s.events.size() + 1}, {"type", type}, {"data", std::move(data)}};
  if (!opts_.event_log_dir.empty()) {
    std::ofstream out(std::filesystem::path(opts_.event_log_dir) / (s.id + ".ndjson"), std::ios::app);
    out << canonical_dump(e) << '\n';
  }
  s.events.push_back(std::move(e));
  s.cv.notify_all();
}

void SessionManager::finish(Session& s) {
  if (s.finished) return;
  s.finished = true;
  s.pending.reset();
  if (s.waiter) s.waiter->finish(s.state);
  EndReport rep = analyze_state(s.state);
  rep.forfeit = s.forfeit;
  if (s.waiter) rep.stages = s.waiter->stages();
  emit(s, "end", report_to_json(rep));
}

void SessionManager::machine_moves(Session& s) {
  if (s.finished) return;
  if (s.state.terminal()) {
    finish(s);
    return;
  }
  if (s.human != Role::Client || s.pending) return;
  WaiterMove m = s.waiter->offer(s.state);
  if (auto* f = std::get_if<Forfeit>(&m)) {
    f->side = Side::Waiter;
    f->round = s.state.round() + 1;
    s.forfeit = *f;
    emit(s, "forfeit", forfeit_json(*f));
    finish(s);
    return;
  }
  Offer o = std::get<Offer>(std::move(m));
  if (auto err = validate_offer(s.state, o)) {
    s.forfeit = Forfeit{Side::Waiter, s.state.round() + 1, "engine",
                        std::string("illegal offer: ") + error_code(*err)};
    emit(s, "forfeit", forfeit_json(*s.forfeit));
    finish(s);
    return;
  }
  std::sort(o.begin(), o.end());
  s.pending = o;
  emit(s, "offer", {{"round", s.state.round() + 1}, {"offer", elements_to_json(s.state.board(), o)}});
}

Json SessionManager::snapshot(const Session& s) const {
  const Board& b = s.state.board();
  std::string status = s.finished ? "finished"
                       : s.human == Role::Client ? (s.pending ? "awaiting-choice" : "machine-turn")
                                                 : "awaiting-offer";
  Json j = {{"id", s.id},
            {"board", board_to_json(b)},
            {"q", s.state.q()},
            {"human", role_name(s.human)},
            {"machine", s.machine_name},
            {"round", s.state.round()},
            {"status", status},
            {"offer_size", s.state.offer_size()},
            {"client_edges", elements_to_json(b, s.state.elements_of(Owner::Client))},
            {"waiter_edges", elements_to_json(b, s.state.elements_of(Owner::Waiter))},
            {"pending_offer", s.pending ? elements_to_json(b, *s.pending) : Json(nullptr)},
            {"last_seq", s.events.size()}};
  if (s.forfeit) j["forfeit"] = forfeit_json(*s.forfeit);
  return j;
}

Transcript SessionManager::session_transcript(const Session& s) const {
  Transcript t;
  t.board = s.state.board();
  t.q = s.state.q();
  t.waiter = s.human == Role::Waiter ? "human" : s.machine_name;
  t.client = s.human == Role::Client ? "human" : s.machine_name;
  t.seed = s.seed;
  t.rounds = s.state.history();
  t.round_count = s.state.round();
  t.complete = s.state.terminal();
  t.client_final = s.state.elements_of(Owner::Client);
  t.waiter_final = s.state.elements_of(Owner::Waiter);
  t.forfeit = s.forfeit;
  return t;
}

ApiResponse SessionManager::create(const std::string& body) {
  Json j;
  try {
    j = body.empty() ? Json::object() : Json::parse(body);
    if (!j.is_object()) return fail(400, "bad-request", "body must be an object");
  } catch (const Json::exception& e) {
    return fail(400, "bad-request", e.what());
  }
  StrategyParams p;
  Role human = Role::Client;
  std::vector<std::string> waiters;
  std::string client = "random";
  try {
    const auto n = j.at("n").get<std::int64_t>();
    const auto q = j.at("q").get<std::int64_t>();
    if (n < 2 || n > static_cast<std::int64_t>(opts_.max_n))
      return fail(400, "bad-request", "n must lie in [2, " + std::to_string(opts_.max_n) + "]");
    if (q < 1) return fail(400, "bad-request", "q must be positive");
    p.n = static_cast<Vertex>(n);
    p.q = static_cast<std::uint64_t>(q);
    p.seed = j.value("seed", std::uint64_t{0});
    p.eta = j.value("eta", std::uint64_t{0});
    p.d = j.value("d", 4u);
    p.k = j.value("k", 2u);
    p.r = j.value("r", 1u);
    p.m = j.value("m", Vertex{3});
    const std::string h = j.value("human", std::string("client"));
    if (h == "client") human = Role::Client;
    else if (h == "waiter") human = Role::Waiter;
    else return fail(400, "bad-request", "human must be client or waiter");
    if (j.contains("waiter")) {
      if (j["waiter"].is_string()) waiters.push_back(j["waiter"].get<std::string>());
      else waiters = j["waiter"].get<std::vector<std::string>>();
    } else {
      waiters = {"connectivity", "random"};
    }
    client = j.value("client", client);
  } catch (const Json::exception& e) {
    return fail(400, "bad-request", e.what());
  }

  std::shared_ptr<Session> s;
  {
    std::lock_guard lock(mu_);
    s = std::make_shared<Session>("s" + std::to_string(next_id_++), human,
                                  GameState(Board::complete(p.n), p.q, true));
  }
  s->seed = p.seed;
  try {
    if (human == Role::Client) {
      std::string why;
      for (const auto& w : waiters) {
        const Preflight f = waiter_preflight(w, p);
        if (!f.feasible) {
          why += w + ": " + f.summary() + "; ";
          continue;
        }
        s->waiter = make_waiter(w, p);
        s->machine_name = w;
        break;
      }
      if (!s->waiter) return fail(422, "strategy-rejected", why);
    } else {
      s->client = make_client(client, p);
      s->machine_name = client;
    }
  } catch (const SpecError& e) {
    return fail(400, "unknown-strategy", e.what());
  }

  std::lock_guard lock(s->mu);
  sweep_if_short(s->state);
  emit(*s, "created", {{"human", role_name(human)}, {"machine", s->machine_name}});
  machine_moves(*s);
  {
    std::lock_guard g(mu_);
    sessions_[s->id] = s;
  }
  return {201, snapshot(*s)};
}

ApiResponse SessionManager::state(const std::string& id) {
  auto s = find(id);
  if (!s) return fail(404, "not-found", "no session " + id);
  std::lock_guard lock(s->mu);
  return {200, snapshot(*s)};
}

ApiResponse SessionManager::offer(const std::string& id, const std::string& body) {
  auto s = find(id);
  if (!s) return fail(404, "not-found", "no session " + id);
  std::lock_guard lock(s->mu);
  if (s->finished) return protocol_fail(ProtocolError::GameOver);
  if (s->human != Role::Waiter) return protocol_fail(ProtocolError::WrongTurn);
  Offer o;
  try {
    const Json j = Json::parse(body);
    for (const auto& e : j.at("offer")) o.push_back(element_from_json(s->state.board(), e));
  } catch (const Json::exception& e) {
    return fail(400, "bad-request", e.what());
  } catch (const FormatError& e) {
    return fail(400, "bad-request", e.what());
  }
  if (auto err = validate_offer(s->state, o)) return protocol_fail(*err);
  std::sort(o.begin(), o.end());
  ClientMove m = s->client->choose(s->state, o);
  if (auto* f = std::get_if<Forfeit>(&m)) {
    f->side = Side::Client;
    f->round = s->state.round() + 1;
    s->forfeit = *f;
    emit(*s, "forfeit", forfeit_json(*f));
    finish(*s);
    return {200, snapshot(*s)};
  }
  const Elem x = std::get<Elem>(m);
  const std::size_t before = s->state.history().size();
  if (auto err = apply_round(s->state, o, x)) {
    s->forfeit = Forfeit{Side::Client, s->state.round() + 1, "engine",
                         std::string("illegal choice: ") + error_code(*err)};
    emit(*s, "forfeit", forfeit_json(*s->forfeit));
    finish(*s);
    return {200, snapshot(*s)};
  }
  const RoundRecord rec{o, x};
  s->client->observe(s->state, rec);
  const Board& b = s->state.board();
  emit(*s, "round", {{"round", s->state.round()}, {"offer", elements_to_json(b, o)},
                     {"choice", element_to_json(b, x)}});
  if (s->state.history().size() > before + 1)
    emit(*s, "sweep", {{"elements", elements_to_json(b, s->state.history().back().offer)}});
  machine_moves(*s);
  return {200, snapshot(*s)};
}

ApiResponse SessionManager::choice(const std::string& id, const std::string& body) {
  auto s = find(id);
  if (!s) return fail(404, "not-found", "no session " + id);
  std::lock_guard lock(s->mu);
  if (s->finished) return protocol_fail(ProtocolError::GameOver);
  if (s->human != Role::Client || !s->pending) return protocol_fail(ProtocolError::WrongTurn);
  Elem x;
  try {
    const Json j = Json::parse(body);
    x = element_from_json(s->state.board(), j.at("choice"));
  } catch (const Json::exception& e) {
    return fail(400, "bad-request", e.what());
  } catch (const FormatError& e) {
    return fail(400, "bad-request", e.what());
  }
  const Offer o = *s->pending;
  const std::size_t before = s->state.history().size();
  if (auto err = apply_round(s->state, o, x)) return protocol_fail(*err);
  s->pending.reset();
  const RoundRecord rec{o, x};
  s->waiter->observe(s->state, rec);
  const Board& b = s->state.board();
  emit(*s, "round", {{"round", s->state.round()}, {"offer", elements_to_json(b, o)},
                     {"choice", element_to_json(b, x)}});
  if (s->state.history().size() > before + 1)
    emit(*s, "sweep", {{"elements", elements_to_json(b, s->state.history().back().offer)}});
  machine_moves(*s);
  return {200, snapshot(*s)};
}

bool SessionManager::next_events(const std::string& id, std::uint64_t since, int wait_ms,
                                 std::vector<Json>& out, bool& done) {
  auto s = find(id);
  if (!s) return false;
  std::unique_lock lock(s->mu);
  wait_ms = std::clamp(wait_ms, 0, opts_.max_wait_ms);
  s->cv.wait_for(lock, std::chrono::milliseconds(wait_ms),
                 [&] { return s->events.size() > since || s->finished; });
  out.clear();
  for (std::size_t i = since; i < s->events.size(); ++i) out.push_back(s->events[i]);
  done = s->finished;
  return true;
}

ApiResponse SessionManager::events(const std::string& id, std::uint64_t since, int wait_ms) {
  std::vector<Json> evs;
  bool done = false;
  if (!next_events(id, since, wait_ms, evs, done)) return fail(404, "not-found", "no session " + id);
  Json arr = Json::array();
  for (auto& e : evs) arr.push_back(std::move(e));
  const std::uint64_t last = arr.empty() ? since : arr.back()["seq"].get<std::uint64_t>();
  return {200, {{"events", std::move(arr)}, {"last_seq", last}, {"finished", done}}};
}

ApiResponse SessionManager::transcript(const std::string& id) {
  auto s = find(id);
  if (!s) return fail(404, "not-found", "no session " + id);
  std::lock_guard lock(s->mu);
  return {200, transcript_to_json(session_transcript(*s))};
}

ApiResponse SessionManager::analysis(const std::string& id) {
  auto s = find(id);
  if (!s) return fail(404, "not-found", "no session " + id);
  std::lock_guard lock(s->mu);
  EndReport rep = analyze_state(s->state);
  rep.forfeit = s->forfeit;
  if (s->waiter) rep.stages = s->waiter->stages();
  return {200, report_to_json(rep)};
}

void install_routes(httplib::Server& server, SessionManager& m) {
  auto reply = [](httplib::Response& res, const ApiResponse& r) {
    res.status = r.status;
    res.set_content(canonical_dump(r.body), "application/json");
  };
  server.Post("/sessions", [&m, reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, m.create(req.body));
  });
  server.Get(R"(/sessions/([A-Za-z0-9]+))", [&m, reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, m.state(req.matches[1]));
  });
  server.Post(R"(/sessions/([A-Za-z0-9]+)/offer)",
              [&m, reply](const httplib::Request& req, httplib::Response& res) {
                reply(res, m.offer(req.matches[1], req.body));
              });
  server.Post(R"(/sessions/([A-Za-z0-9]+)/choice)",
              [&m, reply](const httplib::Request& req, httplib::Response& res) {
                reply(res, m.choice(req.matches[1], req.body));
              });
  server.Get(R"(/sessions/([A-Za-z0-9]+)/events)",
             [&m, reply](const httplib::Request& req, httplib::Response& res) {
               const std::string id = req.matches[1];
               std::uint64_t since = 0;
               int wait = 0;
               try {
                 if (req.has_param("since")) since = std::stoull(req.get_param_value("since"));
                 if (req.has_param("wait")) wait = std::stoi(req.get_param_value("wait"));
               } catch (const std::exception&) {
                 reply(res, fail(400, "bad-request", "since and wait must be integers"));
                 return;
               }
               if (req.get_param_value("mode") != "stream") {
                 reply(res, m.events(id, since, wait));
                 return;
               }
               if (!m.find(id)) {
                 reply(res, fail(404, "not-found", "no session " + id));
                 return;
               }
               res.set_chunked_content_provider(
                   "application/x-ndjson", [&m, id, since](std::size_t, httplib::DataSink& sink) mutable {
                     std::vector<Json> evs;
                     bool done = false;
                     if (!m.next_events(id, since, 1000, evs, done)) {
                       sink.done();
                       return true;
                     }
                     for (const auto& e : evs) {
                       const std::string line = canonical_dump(e) + "\n";
                       if (!sink.write(line.data(), line.size())) return false;
                       since = e["seq"].get<std::uint64_t>();
                     }
                     if (done) sink.done();
                     return true;
                   });
             });
  server.Get(R"(/sessions/([A-Za-z0-9]+)/transcript)",
             [&m, reply](const httplib::Request& req, httplib::Response& res) {
               reply(res, m.transcript(req.matches[1]));
             });
  server.Get(R"(/sessions/([A-Za-z0-9]+)/analysis)",
             [&m, reply](const httplib::Request& req, httplib::Response& res) {
               reply(res, m.analysis(req.matches[1]));
             });
}

int serve(const std::string& host, int port, ServiceOptions opts) {
  SessionManager manager(std::move(opts));
  httplib::Server server;
  install_routes(server, manager);
  return server.listen(host, port) ? 0 : 1;
}

}  // namespace wc
