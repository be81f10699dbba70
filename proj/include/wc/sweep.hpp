#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wc/registry.hpp"
#include "wc/transcript_io.hpp"

namespace wc {

struct ExperimentSpec {
  std::vector<Vertex> ns;
  std::vector<std::uint64_t> qs;
  std::string waiter = "big_component";
  std::string client = "random";
  unsigned trials = 1;
  std::uint64_t seed = 0;
  StrategyParams extra;  // eta, d, k, r, m; n, q and seed are overwritten
  bool parallel = true;
};

// q values lo, lo+step, ..., <= hi. Empty when lo > hi.
std::vector<std::uint64_t> q_range(std::uint64_t lo, std::uint64_t hi, std::uint64_t step = 1);

struct SweepRow {
  Vertex n = 0;
  std::uint64_t q = 0;
  unsigned trial = 0;
  std::uint64_t seed = 0;
  std::string status;  // ok, forfeit, rejected
  std::size_t largest_component = 0;
  bool connected = false;
  std::size_t min_degree = 0;
  std::size_t circumference = 0;  // exact only for n <= 16, else 0
  std::uint64_t rounds = 0;
  bool stages_ok = true;
  std::string note;
};

struct SweepSummary {
  Vertex n = 0;
  std::uint64_t q = 0;
  std::size_t trials = 0;
  double median_largest = 0;
  std::size_t min_largest = 0, max_largest = 0;
  std::size_t forfeits = 0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::vector<SweepSummary> summary;
};

// Throws SpecError on unknown strategy names.
SweepResult run_sweep(const ExperimentSpec& spec);

std::uint64_t trial_seed(std::uint64_t seed, Vertex n, std::uint64_t q, unsigned trial);

std::string sweep_csv(const SweepResult& r);
Json sweep_json(const SweepResult& r);

}  // namespace wc
