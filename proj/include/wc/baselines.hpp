#pragma once

#include <cstdint>
#include <memory>

#include "wc/game.hpp"

namespace wc {

// Adversarial Waiters used against Client strategies.

// Least free ids.
std::unique_ptr<WaiterStrategy> waiter_arbitrary();
// Uniformly random free elements.
std::unique_ptr<WaiterStrategy> waiter_random(std::uint64_t seed);
// Free edges inside Client components first, then edges joining the largest
// pairs of components.
std::unique_ptr<WaiterStrategy> waiter_cycle_hunter();
// Stars at the vertex of least Client degree, topped up from the next ones.
std::unique_ptr<WaiterStrategy> waiter_star();

}  // namespace wc
