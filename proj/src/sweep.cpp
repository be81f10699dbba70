#include "wc/sweep.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "wc/report.hpp"

namespace wc {

std::vector<std::uint64_t> q_range(std::uint64_t lo, std::uint64_t hi, std::uint64_t step) {
  std::vector<std::uint64_t> out;
  if (step == 0) step = 1;
  for (std::uint64_t q = lo; q <= hi; q += step) out.push_back(q);
  return out;
}

std::uint64_t trial_seed(std::uint64_t seed, Vertex n, std::uint64_t q, unsigned trial) {
  // splitmix64 over the tuple
  auto mix = [](std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  };
  return mix(mix(mix(mix(seed) ^ n) ^ q) ^ trial);
}

namespace {

SweepRow run_one(const ExperimentSpec& spec, Vertex n, std::uint64_t q, unsigned trial) {
  SweepRow row;
  row.n = n;
  row.q = q;
  row.trial = trial;
  row.seed = trial_seed(spec.seed, n, q, trial);
  StrategyParams p = spec.extra;
  p.n = n;
  p.q = q;
  p.seed = row.seed;
  std::unique_ptr<WaiterStrategy> w;
  std::unique_ptr<ClientStrategy> c;
  try {
    w = make_waiter(spec.waiter, p);
    c = make_client(spec.client, p);
  } catch (const SpecError& e) {
    row.status = "rejected";
    row.note = e.what();
    return row;
  }
  PlayOptions po;
  po.seed = row.seed;
  po.record_history = false;
  auto played = play_game(GameState(Board::complete(n), q, false), *w, *c, po);
  ReportOptions ro;
  ro.bounded_k = 3;
  ro.repetitions = 1;
  const EndReport rep = analyze_game(played, ro);
  row.status = played.forfeited() ? "forfeit" : "ok";
  if (played.forfeited()) row.note = played.transcript.forfeit->reason;
  row.largest_component = rep.largest_component;
  row.connected = rep.connected;
  row.min_degree = rep.min_degree;
  row.circumference = rep.circumference.value_or(0);
  row.rounds = rep.rounds;
  for (const auto& st : rep.stages) row.stages_ok = row.stages_ok && st.ok;
  return row;
}

}  // namespace

SweepResult run_sweep(const ExperimentSpec& spec) {
  // Resolve names up front so typos fail before any work.
  const auto wn = waiter_names(), cn = client_names();
  if (std::find(wn.begin(), wn.end(), spec.waiter) == wn.end())
    throw SpecError("unknown waiter strategy: " + spec.waiter);
  if (std::find(cn.begin(), cn.end(), spec.client) == cn.end())
    throw SpecError("unknown client strategy: " + spec.client);

  struct Job {
    Vertex n;
    std::uint64_t q;
    unsigned trial;
  };
  std::vector<Job> jobs;
  for (Vertex n : spec.ns)
    for (std::uint64_t q : spec.qs)
      for (unsigned t = 0; t < spec.trials; ++t) jobs.push_back({n, q, t});

  SweepResult res;
  res.rows.resize(jobs.size());
  const auto count = static_cast<std::ptrdiff_t>(jobs.size());
#ifdef WC_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic) if (spec.parallel)
#endif
  for (std::ptrdiff_t i = 0; i < count; ++i) res.rows[i] = run_one(spec, jobs[i].n, jobs[i].q, jobs[i].trial);

  std::map<std::pair<Vertex, std::uint64_t>, std::vector<const SweepRow*>> groups;
  for (const auto& r : res.rows) groups[{r.n, r.q}].push_back(&r);
  for (const auto& [key, rows] : groups) {
    SweepSummary s;
    s.n = key.first;
    s.q = key.second;
    std::vector<std::size_t> vals;
    for (const auto* r : rows) {
      if (r->status == "rejected") continue;
      vals.push_back(r->largest_component);
      s.forfeits += r->status == "forfeit";
    }
    s.trials = vals.size();
    if (!vals.empty()) {
      std::sort(vals.begin(), vals.end());
      const std::size_t m = vals.size();
      s.median_largest = m % 2 ? static_cast<double>(vals[m / 2])
                               : (static_cast<double>(vals[m / 2 - 1]) + vals[m / 2]) / 2.0;
      s.min_largest = vals.front();
      s.max_largest = vals.back();
    }
    res.summary.push_back(s);
  }
  return res;
}

std::string sweep_csv(const SweepResult& r) {
  std::ostringstream os;
  os << "n,q,trial,seed,status,largest_component,connected,min_degree,circumference,rounds,stages_ok\n";
  for (const auto& x : r.rows)
    os << x.n << ',' << x.q << ',' << x.trial << ',' << x.seed << ',' << x.status << ','
       << x.largest_component << ',' << x.connected << ',' << x.min_degree << ',' << x.circumference
       << ',' << x.rounds << ',' << x.stages_ok << '\n';
  return os.str();
}

Json sweep_json(const SweepResult& r) {
  Json rows = Json::array(), summary = Json::array();
  for (const auto& x : r.rows)
    rows.push_back({{"n", x.n},
                    {"q", x.q},
                    {"trial", x.trial},
                    {"seed", x.seed},
                    {"status", x.status},
                    {"largest_component", x.largest_component},
                    {"connected", x.connected},
                    {"min_degree", x.min_degree},
                    {"circumference", x.circumference},
                    {"rounds", x.rounds},
                    {"stages_ok", x.stages_ok},
                    {"note", x.note}});
  for (const auto& s : r.summary)
    summary.push_back({{"n", s.n},
                       {"q", s.q},
                       {"trials", s.trials},
                       {"median_largest", s.median_largest},
                       {"min_largest", s.min_largest},
                       {"max_largest", s.max_largest},
                       {"forfeits", s.forfeits}});
  return {{"rows", rows}, {"summary", summary}};
}

}  // namespace wc
