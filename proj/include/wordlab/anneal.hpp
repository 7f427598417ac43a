#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "wordlab/eval.hpp"
#include "wordlab/word.hpp"

namespace wordlab {

// Metropolis annealing schedule. Temperatures are in raw mismatch-count
// units; initial_temperature < 0 selects auto-calibration targeting ~80%
// initial uphill acceptance.
struct AnnealConfig {
  long long steps = 20'000'000;
  int restarts = 20;
  double initial_temperature = 0.45;
  double cooling = 0.9999999;
  std::uint64_t seed = 0;
  int workers = 1;
};

struct AnnealResult {
  std::vector<Permutation> best_assignment;
  int best_raw_distance = 0;
  int initial_raw_distance = 0;  // objective of the first restart's start state
  // Per-restart best-so-far improvement curve: (step, raw distance).
  std::vector<std::vector<std::pair<long long, int>>> traces;
  // Fraction of uphill proposals accepted in the first 1% of steps of the
  // first restart (calibration diagnostic).
  double early_uphill_accept_rate = 0;
  double wall_time_sec = 0;
};

// Raw Hamming mismatch count between evaluate(w, assignment) and target.
int objective(const Word& w, const std::vector<Permutation>& assignment,
              const Permutation& target);

// Deterministic under cfg.seed regardless of worker count: restarts run
// with derived generators and reduce by (distance, restart index).
AnnealResult solve(const Word& w, int n, const Permutation& target, const AnnealConfig& cfg);

// Min over single-variable assignments by full enumeration; n! <= 1e7.
int brute_force_min(const Word& w, int n, const Permutation& target);

}  // namespace wordlab
