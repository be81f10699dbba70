#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "wc/game.hpp"
#include "wc/waiters.hpp"

namespace wc {

struct StrategyParams {
  Vertex n = 0;
  std::uint64_t q = 1;
  std::uint64_t eta = 0;  // long_cycle; 0 means n - 1
  unsigned d = 4;         // half_expander, expander_cycles
  unsigned k = 2;         // k_connected
  unsigned r = 1;         // avoid_big_component
  Vertex m = 3;           // avoid_cycles
  std::uint64_t seed = 0;
};

// Unknown name, or parameters the strategy refuses.
struct SpecError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::vector<std::string> waiter_names();
std::vector<std::string> client_names();

Preflight waiter_preflight(const std::string& name, const StrategyParams& p);
std::unique_ptr<WaiterStrategy> make_waiter(const std::string& name, const StrategyParams& p);
std::unique_ptr<ClientStrategy> make_client(const std::string& name, const StrategyParams& p);

}  // namespace wc
