#include "wc/report.hpp"

#include <algorithm>
#include <sstream>

#include "wc/analysis.hpp"
#include "wc/graph.hpp"

namespace wc {

EndReport analyze_state(const GameState& s, const ReportOptions& opts) {
  EndReport r;
  r.board = s.board().describe();
  r.q = s.q();
  r.rounds = s.round();
  r.client_elements = s.client_count();
  r.waiter_elements = s.waiter_count();
  r.free_elements = s.free_count();
  r.terminal = s.terminal();
  if (!s.board().is_graph()) return r;

  const SimpleGraph g = SimpleGraph::client_graph(s);
  const auto prof = component_profile(g);
  r.components = prof.sizes;
  r.largest_component = prof.largest();
  r.connected = prof.connected;
  r.min_degree = g.n() ? g.degree(0) : 0;
  for (Vertex v = 1; v < g.n(); ++v) r.min_degree = std::min(r.min_degree, g.degree(v));

  CycleSpectrum spec;
  if (g.n() <= opts.exact_limit) {
    spec = cycle_spectrum_exact(g, opts.exact_limit);
    r.circumference = spec.circumference;
    r.cycles_exact = true;
  } else if (g.n() <= opts.bounded_limit) {
    spec = cycle_spectrum_bounded(g, std::min<std::size_t>(opts.bounded_k, g.n()), opts.repetitions,
                                  opts.seed);
  }
  r.cycles_searched = g.n() <= opts.bounded_limit;
  if (r.cycles_searched) r.cycle_lengths = spec.lengths();
  return r;
}

EndReport analyze_game(const PlayResult& p, const ReportOptions& opts) {
  EndReport r = analyze_state(p.state, opts);
  r.forfeit = p.transcript.forfeit;
  r.stages = p.transcript.stages;
  return r;
}

Json report_to_json(const EndReport& r) {
  Json j;
  j["board"] = r.board;
  j["q"] = r.q;
  j["rounds"] = r.rounds;
  j["client_elements"] = r.client_elements;
  j["waiter_elements"] = r.waiter_elements;
  j["free_elements"] = r.free_elements;
  j["terminal"] = r.terminal;
  j["components"] = r.components;
  j["largest_component"] = r.largest_component;
  j["connected"] = r.connected;
  j["min_degree"] = r.min_degree;
  j["circumference"] = r.circumference ? Json(*r.circumference) : Json(nullptr);
  j["cycle_lengths"] = r.cycle_lengths;
  j["cycles_exact"] = r.cycles_exact;
  j["cycles_searched"] = r.cycles_searched;
  if (r.forfeit)
    j["forfeit"] = {{"side", r.forfeit->side == Side::Waiter ? "waiter" : "client"},
                    {"round", r.forfeit->round},
                    {"stage", r.forfeit->stage},
                    {"reason", r.forfeit->reason}};
  Json stages = Json::array();
  for (const auto& st : r.stages)
    stages.push_back({{"name", st.name},
                      {"first_round", st.first_round},
                      {"last_round", st.last_round},
                      {"ok", st.ok},
                      {"detail", st.detail}});
  j["stages"] = std::move(stages);
  return j;
}

std::string report_text(const EndReport& r) {
  std::ostringstream os;
  os << r.board << " q=" << r.q << " rounds=" << r.rounds << " client=" << r.client_elements
     << " waiter=" << r.waiter_elements << (r.terminal ? "" : " (unfinished)") << "\n";
  if (!r.components.empty()) {
    os << "largest component " << r.largest_component << (r.connected ? " (connected)" : "")
       << ", components " << r.components.size() << ", min degree " << r.min_degree << "\n";
    if (r.circumference) os << "circumference " << *r.circumference << "\n";
    if (r.cycles_searched) {
      os << "cycle lengths" << (r.cycles_exact ? "" : " (bounded search)") << ":";
      for (auto k : r.cycle_lengths) os << ' ' << k;
      os << "\n";
    }
  }
  for (const auto& st : r.stages)
    os << "stage " << st.name << " [" << st.first_round << ".." << st.last_round << "] "
       << (st.ok ? "ok" : "FAILED") << (st.detail.empty() ? "" : ": " + st.detail) << "\n";
  if (r.forfeit)
    os << "forfeit by " << (r.forfeit->side == Side::Waiter ? "waiter" : "client") << " in round "
       << r.forfeit->round << " (" << r.forfeit->stage << "): " << r.forfeit->reason << "\n";
  return os.str();
}

}  // namespace wc
