#pragma once

#include <cstdint>
#include <vector>

#include "scalefree/rng.hpp"

namespace scalefree {

/// A unit cell 1 +- eta with an intrinsic clock running toward maturity 1/k.
/// eps == scale * clock throughout the cell's life.
struct Cell {
  double clock = 0.0;
  double scale = 1e-3;
  double eps = 0.0;
  std::uint32_t generation = 0;
};

struct Population {
  std::vector<Cell> cells;
  std::uint32_t generation = 0;
  Stream rng;
};

/// A population of one fresh cell with the given scale factor.
Population make_population(std::uint64_t seed, double scale = 1e-3);

/// One maturity step: every cell reaches eta = 1 +- eta' and draws a sign;
/// '+' (probability p_split) replaces it with two daughters 1 + eta'/2 with
/// the residual eta' ~ Uniform(0,1), '-' removes it. No-op once extinct.
Population advance_generation(Population pop, double p_split);

/// q_g from q_0 = 0, q_{g+1} = (1 - p) + p q_g^2: probability the lineage of
/// one cell is extinct by generation g.
double extinction_oracle(double p_split, int generations);

struct GenerationRow {
  double mean_population = 0.0;
  double se_mean_population = 0.0;
  double survival_fraction = 0.0;
  double se_survival = 0.0;
  std::uint64_t first_extinctions = 0;  // trials whose line died exactly here
};

struct TrialSummary {
  std::vector<GenerationRow> rows;  // index = generation, 0..generations
  std::uint64_t trials = 0;
  std::uint64_t halted_trials = 0;        // extinct within the horizon
  double mean_halting_generation = 0.0;   // over halted trials
};

/// Monte Carlo over independent trials; trial i uses Stream::for_trial
/// (master_seed, i), and all tallies are integers, so results are identical
/// for any thread count.
TrialSummary run_trials(double p_split, int generations, std::uint64_t trials,
                        std::uint64_t master_seed, int threads = 1);

}  // namespace scalefree
