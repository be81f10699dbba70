// wcgame: play, sweep, solve, verify, families, serve.
// Exit codes: 0 success, 2 spec error, 3 a strategy forfeited, 4 verification failure.

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "wc/analysis.hpp"
#include "wc/oracle.hpp"
#include "wc/registry.hpp"
#include "wc/report.hpp"
#include "wc/service.hpp"
#include "wc/set_family.hpp"
#include "wc/sweep.hpp"
#include "wc/transcript_io.hpp"

namespace {

constexpr int kOk = 0, kSpecError = 2, kForfeit = 3, kVerifyFailed = 4;

struct Common {
  std::vector<unsigned> n{10};
  std::uint64_t q = 1;
  std::uint64_t eta = 0;
  unsigned d = 4, k = 2, r = 1;
  unsigned m = 3;
  std::uint64_t seed = 0;
  std::string waiter = "big_component", client = "random";
  std::string out;
  std::string format = "text";

  wc::StrategyParams params(wc::Vertex nn) const {
    wc::StrategyParams p;
    p.n = nn;
    p.q = q;
    p.eta = eta;
    p.d = d;
    p.k = k;
    p.r = r;
    p.m = m;
    p.seed = seed;
    return p;
  }
};

void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

void add_common(CLI::App* app, Common& c, bool strategies) {
  app->add_option("--n", c.n, "board order(s)");
  app->add_option("--q", c.q, "bias");
  app->add_option("--seed", c.seed, "random seed");
  app->add_option("--out", c.out, "output file");
  app->add_option("--format", c.format, "text or structured")
      ->check(CLI::IsMember({"text", "structured"}));
  if (!strategies) return;
  app->add_option("--waiter", c.waiter, "waiter strategy");
  app->add_option("--client", c.client, "client strategy");
  app->add_option("--eta", c.eta, "target length for long_cycle");
  app->add_option("--d", c.d, "expansion factor");
  app->add_option("--k", c.k, "connectivity for k_connected");
  app->add_option("--r", c.r, "tuple size for avoid_big_component");
  app->add_option("--m", c.m, "least avoided cycle length for avoid_cycles");
}

int cmd_play(const Common& c, const std::string& transcript_out, bool stop_at_goal) {
  const wc::Vertex n = c.n.front();
  auto p = c.params(n);
  auto w = wc::make_waiter(c.waiter, p);
  auto cl = wc::make_client(c.client, p);
  wc::PlayOptions po;
  po.seed = c.seed;
  po.stop_at_goal = stop_at_goal;
  const bool record = !transcript_out.empty() && n <= 2000;
  po.record_history = record;
  auto played = wc::play_game(wc::GameState(wc::Board::complete(n), c.q, record), *w, *cl, po);
  const auto rep = wc::analyze_game(played);
  if (c.format == "structured") emit(c.out, wc::canonical_dump(wc::report_to_json(rep)));
  else emit(c.out, wc::report_text(rep));
  if (!transcript_out.empty()) emit(transcript_out, wc::write_transcript(played.transcript));
  if (played.forfeited()) return kForfeit;
  for (const auto& st : rep.stages)
    if (!st.ok) return kVerifyFailed;
  return kOk;
}

int cmd_sweep(const Common& c, std::uint64_t q_from, std::uint64_t q_to, std::uint64_t q_step,
              std::vector<std::uint64_t> qs, unsigned trials) {
  wc::ExperimentSpec spec;
  for (auto n : c.n) spec.ns.push_back(n);
  spec.qs = qs.empty() ? wc::q_range(q_from, q_to, q_step) : std::move(qs);
  spec.waiter = c.waiter;
  spec.client = c.client;
  spec.trials = trials;
  spec.seed = c.seed;
  spec.extra = c.params(0);
  const auto res = wc::run_sweep(spec);
  if (c.format == "structured") emit(c.out, wc::canonical_dump(wc::sweep_json(res)));
  else emit(c.out, wc::sweep_csv(res));
  for (const auto& r : res.rows)
    if (r.status == "forfeit") return kForfeit;
  return kOk;
}

int cmd_solve(const Common& c, const std::string& objective, std::size_t arg, std::uint64_t budget,
              bool no_memo, bool symmetry, bool parallel) {
  wc::SolveOptions o;
  o.memo = !no_memo;
  o.symmetry = symmetry;
  o.parallel = parallel;
  if (budget) o.node_budget = budget;
  const auto res = wc::solve_game_exact(wc::Board::complete(c.n.front()), c.q,
                                        wc::objective_by_name(objective, arg), o);
  if (c.format == "structured") {
    wc::Json j = {{"value", res.value},
                  {"waiter_wins", res.waiter_wins},
                  {"nodes", res.nodes},
                  {"memo_entries", res.memo_entries},
                  {"principal_variation", wc::transcript_to_json(res.principal_variation)}};
    emit(c.out, wc::canonical_dump(j));
  } else {
    std::ostringstream os;
    os << "K_" << c.n.front() << " q=" << c.q << " " << objective << " value=" << res.value;
    if (res.value <= 1 && objective == "connectivity")
      os << (res.waiter_wins ? " (Waiter wins)" : " (Client wins)");
    os << "\nnodes=" << res.nodes << " memo=" << res.memo_entries << "\n";
    os << "principal variation: " << wc::write_transcript(res.principal_variation) << "\n";
    emit(c.out, os.str());
  }
  return kOk;
}

int cmd_verify(const Common& c, const std::string& objective, std::size_t arg, std::int64_t required,
               const std::string& transcript) {
  if (!transcript.empty()) {
    std::ifstream f(transcript);
    if (!f) throw std::runtime_error("cannot read " + transcript);
    std::stringstream ss;
    ss << f.rdbuf();
    const auto t = wc::read_transcript(ss.str());
    std::string why;
    const bool ok = wc::replay(t, &why).has_value();
    emit(c.out, ok ? "transcript replays\n" : "transcript rejected: " + why + "\n");
    return ok ? kOk : kVerifyFailed;
  }
  const wc::Vertex n = c.n.front();
  const auto p = c.params(n);
  const auto obj = wc::objective_by_name(objective, arg);
  const auto res = wc::verify_waiter_strategy_exhaustive(
      [&] { return wc::make_waiter(c.waiter, p); }, wc::Board::complete(n), c.q, obj, required);
  std::ostringstream os;
  os << c.waiter << " on K_" << n << " q=" << c.q << ": " << (res.holds ? "holds" : "FAILS")
     << " over " << res.leaves << " Client response sequences, worst " << objective << " = "
     << res.worst << "\n";
  if (res.counterexample) os << "counterexample: " << wc::write_transcript(*res.counterexample) << "\n";
  emit(c.out, os.str());
  return res.holds ? kOk : kVerifyFailed;
}

int cmd_families(const Common& c, const std::string& kind, const std::string& family_out) {
  const wc::Vertex n = c.n.front();
  wc::SetFamily f;
  if (kind == "cycles") f = wc::build_cycle_family(n, c.m);
  else if (kind == "path_tuples") f = wc::build_path_tuple_family(n, c.r);
  else if (kind == "paths") f = wc::build_labeled_path_family(n);
  else throw wc::SpecError("unknown family kind: " + kind);
  const auto phi = wc::family_potential_phi(f, c.q);
  const auto psi = wc::family_potential_psi(f, c.q);
  std::ostringstream os;
  if (c.format == "structured") {
    wc::Json j = {{"kind", kind}, {"n", n}, {"q", c.q}, {"sets", f.size()},
                  {"max_set_size", f.max_set_size()}, {"phi", static_cast<double>(phi.phi)},
                  {"psi", static_cast<double>(psi.psi)}, {"psi_below_half", psi.psi_criterion}};
    if (kind == "cycles") j["closed_form_size"] = static_cast<double>(wc::cycle_family_size(n, c.m));
    os << wc::canonical_dump(j);
  } else {
    os << kind << " on K_" << n << ": " << f.size() << " sets, largest " << f.max_set_size()
       << "\nPhi = " << static_cast<double>(phi.phi) << " (q=" << c.q << ")"
       << "\nPsi = " << static_cast<double>(psi.psi) << (psi.psi_criterion ? " < 1/2" : " >= 1/2")
       << "\n";
  }
  emit(c.out, os.str());
  if (!family_out.empty()) {
    std::ofstream fo(family_out);
    wc::write_family(fo, f);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Biased Waiter-Client games on complete graphs"};
  app.require_subcommand(1);
  Common c;

  auto* play = app.add_subcommand("play", "play one game and report the end state");
  add_common(play, c, true);
  std::string transcript_out;
  bool stop_at_goal = false;
  play->add_option("--transcript", transcript_out, "write the transcript here");
  play->add_flag("--stop-at-goal", stop_at_goal, "end once Waiter's goal holds");

  auto* sweep = app.add_subcommand("sweep", "run a grid of games");
  add_common(sweep, c, true);
  std::uint64_t q_from = 1, q_to = 0, q_step = 1;
  std::vector<std::uint64_t> qs;
  unsigned trials = 1;
  sweep->add_option("--q-from", q_from);
  sweep->add_option("--q-to", q_to);
  sweep->add_option("--q-step", q_step);
  sweep->add_option("--qs", qs, "explicit bias list");
  sweep->add_option("--trials", trials);

  auto* solve = app.add_subcommand("solve", "exact minimax value on a tiny board");
  add_common(solve, c, false);
  std::string objective = "connectivity";
  std::size_t arg = 0;
  std::uint64_t budget = 0;
  bool no_memo = false, symmetry = false, parallel = false;
  solve->add_option("--objective", objective, "connectivity, comp, cyc, min_degree, component_at_least");
  solve->add_option("--arg", arg, "threshold for component_at_least");
  solve->add_option("--budget", budget, "node budget");
  solve->add_flag("--no-memo", no_memo);
  solve->add_flag("--symmetry", symmetry);
  solve->add_flag("--parallel", parallel);

  auto* verify = app.add_subcommand("verify", "check a Waiter strategy against every Client");
  add_common(verify, c, true);
  std::int64_t required = 1;
  std::string transcript_in;
  verify->add_option("--objective", objective);
  verify->add_option("--arg", arg);
  verify->add_option("--required", required, "least acceptable objective value");
  verify->add_option("--transcript", transcript_in, "replay-check a transcript instead");

  auto* families = app.add_subcommand("families", "build a set family and its potentials");
  add_common(families, c, true);
  std::string kind = "cycles", family_out;
  families->add_option("--kind", kind, "cycles, path_tuples or paths");
  families->add_option("--family-out", family_out);

  auto* serve = app.add_subcommand("serve", "HTTP session API");
  std::string host = "127.0.0.1", log_dir;
  int port = 8080;
  serve->add_option("--port", port);
  serve->add_option("--host", host);
  serve->add_option("--log-dir", log_dir, "append-only event logs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kSpecError;
  }

  try {
    if (*play) return cmd_play(c, transcript_out, stop_at_goal);
    if (*sweep) return cmd_sweep(c, q_from, q_to, q_step, qs, trials);
    if (*solve) return cmd_solve(c, objective, arg, budget, no_memo, symmetry, parallel);
    if (*verify) return cmd_verify(c, objective, arg, required, transcript_in);
    if (*families) return cmd_families(c, kind, family_out);
    if (*serve) {
      wc::ServiceOptions o;
      o.event_log_dir = log_dir;
      std::cerr << "listening on " << host << ":" << port << "\n";
      return wc::serve(host, port, o);
    }
  } catch (const wc::SpecError& e) {
    std::cerr << "spec error: " << e.what() << "\n";
    return kSpecError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "spec error: " << e.what() << "\n";
    return kSpecError;
  } catch (const wc::BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kSpecError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kVerifyFailed;
  }
  return kOk;
}
