#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wc/game.hpp"
#include "wc/transcript_io.hpp"

namespace wc {

struct ReportOptions {
  // Exact cycle analysis up to this order, colour coding beyond it.
  Vertex exact_limit = 16;
  std::size_t bounded_k = 12;
  // No cycle search at all beyond this order.
  Vertex bounded_limit = 400;
  std::size_t repetitions = 40;
  std::uint64_t seed = 1;
};

struct EndReport {
  std::string board;
  std::uint64_t q = 0;
  std::uint64_t rounds = 0;
  std::size_t client_elements = 0;
  std::size_t waiter_elements = 0;
  std::size_t free_elements = 0;
  bool terminal = false;
  // K_n boards only.
  std::vector<std::size_t> components;
  std::size_t largest_component = 0;
  bool connected = false;
  std::size_t min_degree = 0;
  std::optional<std::size_t> circumference;  // exact analysis only
  std::vector<std::size_t> cycle_lengths;
  bool cycles_exact = false;
  bool cycles_searched = false;
  std::optional<Forfeit> forfeit;
  std::vector<StageRecord> stages;
};

EndReport analyze_state(const GameState& s, const ReportOptions& opts = {});
EndReport analyze_game(const PlayResult& r, const ReportOptions& opts = {});

Json report_to_json(const EndReport& r);
std::string report_text(const EndReport& r);

}  // namespace wc
