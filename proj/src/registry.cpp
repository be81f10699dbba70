#include "wc/registry.hpp"

#include "wc/baselines.hpp"
#include "wc/client.hpp"
#include "wc/staged.hpp"

namespace wc {

namespace {

const std::vector<std::string> kWaiters = {
    "big_component", "connectivity",  "k_connected",          "path_doubling",
    "long_cycle",    "half_expander", "expander_cycles",      "hamiltonian_expander",
    "pancyclic",     "arbitrary",     "random",               "cycle_hunter",
    "star"};

const std::vector<std::string> kClients = {"avoid_cycles", "avoid_big_component", "min_degree",
                                           "random",       "greedy_min_degree",   "potential",
                                           "arbitrary"};

std::uint64_t eta_of(const StrategyParams& p) { return p.eta ? p.eta : p.n - 1; }

std::pair<std::vector<Vertex>, std::vector<Vertex>> halves(Vertex n) {
  std::vector<Vertex> a, b;
  for (Vertex v = 0; v < n; ++v) (v < n / 2 ? a : b).push_back(v);
  return {a, b};
}

}  // namespace

std::vector<std::string> waiter_names() { return kWaiters; }
std::vector<std::string> client_names() { return kClients; }

Preflight waiter_preflight(const std::string& name, const StrategyParams& p) {
  if (name == "big_component") return BigComponentWaiter::preflight(p.n, p.q);
  if (name == "connectivity") {
    Preflight f = BigComponentWaiter::preflight(p.n, p.q);
    f.require(p.q + 1 <= p.n / 2, "q <= floor(n/2) - 1");
    return f;
  }
  if (name == "k_connected") return KConnectedWaiter::preflight(p.n, p.q, p.k);
  if (name == "path_doubling") return PathDoublingWaiter::preflight(p.n, std::max<std::uint64_t>(p.q, p.n));
  if (name == "long_cycle") return LongCycleWaiter::preflight(p.n, p.q, eta_of(p));
  if (name == "half_expander") {
    const auto [a, b] = halves(p.n);
    return HalfExpanderWaiter::preflight(a.size(), b.size(), p.d, p.q);
  }
  if (name == "expander_cycles") return ExpanderCyclesWaiter::preflight(p.n, p.d, p.q);
  if (name == "hamiltonian_expander") return HamiltonianExpanderWaiter::preflight(p.n, p.q);
  if (name == "pancyclic") return PancyclicWaiter::preflight(p.n, p.q);
  for (const auto& w : kWaiters)
    if (w == name) return {};
  throw SpecError("unknown waiter strategy: " + name);
}

std::unique_ptr<WaiterStrategy> make_waiter(const std::string& name, const StrategyParams& p) {
  const Preflight f = waiter_preflight(name, p);
  if (!f.feasible) throw SpecError(name + " rejects these parameters: " + f.summary());
  if (name == "big_component") return std::make_unique<BigComponentWaiter>(iota_vertices(p.n), p.q);
  if (name == "connectivity") return make_connectivity(iota_vertices(p.n), p.q);
  if (name == "k_connected") return std::make_unique<KConnectedWaiter>(p.n, p.q, p.k);
  if (name == "path_doubling") {
    if (p.q >= p.n) return std::make_unique<PathDoublingWaiter>(p.n, p.q);
    return reduce_bias(std::make_unique<PathDoublingWaiter>(p.n, p.n), p.n);
  }
  if (name == "long_cycle") return std::make_unique<LongCycleWaiter>(p.n, p.q, eta_of(p));
  if (name == "half_expander") {
    auto [a, b] = halves(p.n);
    return std::make_unique<HalfExpanderWaiter>(std::move(a), std::move(b), p.d, p.q);
  }
  if (name == "expander_cycles")
    return std::make_unique<ExpanderCyclesWaiter>(iota_vertices(p.n), p.d, p.q);
  if (name == "hamiltonian_expander")
    return std::make_unique<HamiltonianExpanderWaiter>(iota_vertices(p.n), p.q);
  if (name == "pancyclic") return std::make_unique<PancyclicWaiter>(p.n, p.q);
  if (name == "arbitrary") return waiter_arbitrary();
  if (name == "random") return waiter_random(p.seed);
  if (name == "cycle_hunter") return waiter_cycle_hunter();
  if (name == "star") return waiter_star();
  throw SpecError("unknown waiter strategy: " + name);
}

std::unique_ptr<ClientStrategy> make_client(const std::string& name, const StrategyParams& p) {
  try {
    if (name == "avoid_cycles") return client_avoid_cycles(p.n, p.q, p.m);
    if (name == "avoid_big_component") return client_avoid_big_component(p.n, p.q, p.r);
    if (name == "min_degree") return client_min_degree(p.n, p.q);
    if (name == "random") return client_random(p.seed);
    if (name == "greedy_min_degree") return client_greedy_min_degree();
    if (name == "potential") return client_component_potential();
    if (name == "arbitrary") return client_arbitrary();
  } catch (const SpecError&) {
    throw;
  } catch (const std::exception& e) {
    throw SpecError(name + ": " + e.what());
  }
  throw SpecError("unknown client strategy: " + name);
}

}  // namespace wc
