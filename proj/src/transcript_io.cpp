#include "wc/transcript_io.hpp"

#include <algorithm>

namespace wc {

Json element_to_json(const Board& b, Elem x) {
  if (!b.is_graph()) return x;
  const auto [u, v] = Board::pair_of(x);
  return Json::array({std::min(u, v), std::max(u, v)});
}

Elem element_from_json(const Board& b, const Json& j) {
  if (b.is_graph()) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number_unsigned() || !j[1].is_number_unsigned())
      throw FormatError("edge must be [u,v]");
    const auto u = j[0].get<std::uint64_t>(), v = j[1].get<std::uint64_t>();
    if (u == v || u >= b.n() || v >= b.n()) throw FormatError("edge out of range");
    return Board::pair_id(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  if (!j.is_number_unsigned()) throw FormatError("element must be a non-negative integer");
  const auto x = j.get<Elem>();
  if (x >= b.size()) throw FormatError("element out of range");
  return x;
}

Json elements_to_json(const Board& b, std::vector<Elem> xs) {
  Json out = Json::array();
  if (b.is_graph()) {
    std::vector<std::pair<Vertex, Vertex>> es;
    for (Elem x : xs) {
      auto [u, v] = Board::pair_of(x);
      es.emplace_back(std::min(u, v), std::max(u, v));
    }
    std::sort(es.begin(), es.end());
    for (auto [u, v] : es) out.push_back(Json::array({u, v}));
    return out;
  }
  std::sort(xs.begin(), xs.end());
  for (Elem x : xs) out.push_back(x);
  return out;
}

Json board_to_json(const Board& b) {
  if (b.is_graph()) return Json::array({"K_n", b.n()});
  return Json::array({"abstract", b.size()});
}

Board board_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_string() || !j[1].is_number_unsigned())
    throw FormatError("board must be [\"K_n\", n] or [\"abstract\", e]");
  const auto kind = j[0].get<std::string>();
  const auto size = j[1].get<std::uint64_t>();
  try {
    if (kind == "K_n") return Board::complete(static_cast<Vertex>(size));
    if (kind == "abstract") return Board::abstract(size);
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
  throw FormatError("unknown board kind " + kind);
}

Json transcript_to_json(const Transcript& t) {
  Json j;
  j["version"] = t.version;
  j["board"] = board_to_json(t.board);
  j["q"] = t.q;
  j["strategies"] = {{"waiter", t.waiter}, {"client", t.client}};
  j["seed"] = t.seed;
  Json rounds = Json::array();
  for (const auto& r : t.rounds) {
    Json jr;
    jr["offer"] = elements_to_json(t.board, r.offer);
    jr["choice"] = r.choice ? element_to_json(t.board, *r.choice) : Json(nullptr);
    rounds.push_back(std::move(jr));
  }
  j["rounds"] = std::move(rounds);
  j["final"] = {{"client_edges", elements_to_json(t.board, t.client_final)},
                {"waiter_edges", elements_to_json(t.board, t.waiter_final)}};
  if (!t.rounds_recorded) j["rounds_recorded"] = false;
  if (!t.complete) j["complete"] = false;
  if (t.forfeit) {
    j["forfeit"] = {{"side", t.forfeit->side == Side::Waiter ? "waiter" : "client"},
                    {"round", t.forfeit->round},
                    {"stage", t.forfeit->stage},
                    {"reason", t.forfeit->reason}};
  }
  return j;
}

Transcript transcript_from_json(const Json& j) {
  try {
    Transcript t;
    t.version = j.at("version").get<int>();
    if (t.version != 1) throw FormatError("unsupported version");
    t.board = board_from_json(j.at("board"));
    t.q = j.at("q").get<std::uint64_t>();
    t.waiter = j.at("strategies").at("waiter").get<std::string>();
    t.client = j.at("strategies").at("client").get<std::string>();
    t.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& jr : j.at("rounds")) {
      RoundRecord r;
      for (const auto& e : jr.at("offer")) r.offer.push_back(element_from_json(t.board, e));
      if (!jr.at("choice").is_null()) r.choice = element_from_json(t.board, jr.at("choice"));
      t.rounds.push_back(std::move(r));
    }
    for (const auto& e : j.at("final").at("client_edges"))
      t.client_final.push_back(element_from_json(t.board, e));
    for (const auto& e : j.at("final").at("waiter_edges"))
      t.waiter_final.push_back(element_from_json(t.board, e));
    std::sort(t.client_final.begin(), t.client_final.end());
    std::sort(t.waiter_final.begin(), t.waiter_final.end());
    t.rounds_recorded = j.value("rounds_recorded", true);
    t.complete = j.value("complete", true);
    t.round_count = 0;
    for (const auto& r : t.rounds) t.round_count += r.choice.has_value();
    if (j.contains("forfeit")) {
      const auto& f = j.at("forfeit");
      t.forfeit = Forfeit{f.at("side").get<std::string>() == "waiter" ? Side::Waiter : Side::Client,
                          f.at("round").get<std::uint64_t>(), f.at("stage").get<std::string>(),
                          f.at("reason").get<std::string>()};
    }
    return t;
  } catch (const Json::exception& e) {
    throw FormatError(std::string("transcript: ") + e.what());
  }
}

std::string canonical_dump(const Json& j) { return j.dump(); }

std::string write_transcript(const Transcript& t) { return canonical_dump(transcript_to_json(t)); }

Transcript read_transcript(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    throw FormatError(std::string("transcript: ") + e.what());
  }
  return transcript_from_json(j);
}

}  // namespace wc
