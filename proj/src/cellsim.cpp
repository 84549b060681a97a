#include "scalefree/cellsim.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

namespace scalefree {

Population make_population(std::uint64_t seed, double scale) {
  if (!(scale > 0.0)) throw std::invalid_argument("make_population: scale must be positive");
  Population pop;
  pop.cells.push_back(Cell{0.0, scale, 0.0, 0});
  pop.rng = Stream(seed);
  return pop;
}

Population advance_generation(Population pop, double p_split) {
  if (!(p_split >= 0.0 && p_split <= 1.0)) {
    throw std::invalid_argument("advance_generation: p_split must be in [0, 1]");
  }
  if (pop.cells.empty()) return pop;  // extinct lines stay extinct

  std::vector<Cell> next;
  next.reserve(pop.cells.size());
  for (const Cell& cell : pop.cells) {
    const bool split = pop.rng.next_unit() < p_split;
    if (!split) continue;  // 1 - eta -> nothing
    const double residual = pop.rng.next_unit();  // eta' at maturity eta = 1 + eta'
    Cell daughter;
    daughter.scale = cell.scale;
    daughter.eps = residual / 2.0;  // 1 + eta'/2, half the parent's residual
    daughter.clock = daughter.eps / daughter.scale;
    daughter.generation = cell.generation + 1;
    next.push_back(daughter);
    next.push_back(daughter);
  }
  pop.cells = std::move(next);
  ++pop.generation;
  return pop;
}

double extinction_oracle(double p_split, int generations) {
  if (!(p_split >= 0.0 && p_split <= 1.0)) {
    throw std::invalid_argument("extinction_oracle: p_split must be in [0, 1]");
  }
  if (generations < 0) throw std::invalid_argument("extinction_oracle: generations must be >= 0");
  double q = 0.0;
  for (int g = 0; g < generations; ++g) q = (1.0 - p_split) + p_split * q * q;
  return q;
}

namespace {

struct Tallies {
  // One slot per generation 0..G. __int128 keeps the sums exact for any
  // population the simulation can hold in memory.
  std::vector<unsigned __int128> pop_sum;
  std::vector<unsigned __int128> pop_sq_sum;
  std::vector<std::uint64_t> survivors;
  std::vector<std::uint64_t> first_extinctions;
  std::uint64_t halted = 0;
  std::uint64_t halting_gen_sum = 0;

  explicit Tallies(std::size_t slots)
      : pop_sum(slots), pop_sq_sum(slots), survivors(slots), first_extinctions(slots) {}

  void merge(const Tallies& other) {
    for (std::size_t i = 0; i < pop_sum.size(); ++i) {
      pop_sum[i] += other.pop_sum[i];
      pop_sq_sum[i] += other.pop_sq_sum[i];
      survivors[i] += other.survivors[i];
      first_extinctions[i] += other.first_extinctions[i];
    }
    halted += other.halted;
    halting_gen_sum += other.halting_gen_sum;
  }
};

void run_range(double p_split, int generations, std::uint64_t master_seed, std::uint64_t begin,
               std::uint64_t end, Tallies& out) {
  for (std::uint64_t trial = begin; trial < end; ++trial) {
    Population pop = make_population(0);
    pop.rng = Stream::for_trial(master_seed, trial);
    bool halted = false;
    for (int g = 0; g <= generations; ++g) {
      if (g > 0) pop = advance_generation(std::move(pop), p_split);
      const std::uint64_t n = pop.cells.size();
      out.pop_sum[g] += n;
      out.pop_sq_sum[g] += static_cast<unsigned __int128>(n) * n;
      if (n > 0) {
        ++out.survivors[g];
      } else if (!halted) {
        halted = true;
        ++out.first_extinctions[g];
        ++out.halted;
        out.halting_gen_sum += static_cast<std::uint64_t>(g);
      }
    }
  }
}

}  // namespace

TrialSummary run_trials(double p_split, int generations, std::uint64_t trials,
                        std::uint64_t master_seed, int threads) {
  if (trials < 1) throw std::invalid_argument("run_trials: need at least one trial");
  if (generations < 0) throw std::invalid_argument("run_trials: generations must be >= 0");
  if (threads < 1) throw std::invalid_argument("run_trials: threads must be >= 1");

  const std::size_t slots = static_cast<std::size_t>(generations) + 1;
  Tallies total(slots);

  if (threads == 1) {
    run_range(p_split, generations, master_seed, 0, trials, total);
  } else {
    std::vector<Tallies> partial(static_cast<std::size_t>(threads), Tallies(slots));
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (trials + threads - 1) / threads;
    for (int i = 0; i < threads; ++i) {
      const std::uint64_t begin = chunk * static_cast<std::uint64_t>(i);
      const std::uint64_t end = std::min(trials, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back([&, i, begin, end] {
        run_range(p_split, generations, master_seed, begin, end, partial[static_cast<std::size_t>(i)]);
      });
    }
    for (auto& t : pool) t.join();
    for (const auto& p : partial) total.merge(p);
  }

  TrialSummary summary;
  summary.trials = trials;
  summary.rows.resize(slots);
  const double n = static_cast<double>(trials);
  for (std::size_t g = 0; g < slots; ++g) {
    GenerationRow& row = summary.rows[g];
    const double sum = static_cast<double>(total.pop_sum[g]);
    const double sq = static_cast<double>(total.pop_sq_sum[g]);
    row.mean_population = sum / n;
    const double var = trials > 1 ? (sq - n * row.mean_population * row.mean_population) / (n - 1.0)
                                  : 0.0;
    row.se_mean_population = std::sqrt(std::max(var, 0.0) / n);
    const double s = static_cast<double>(total.survivors[g]) / n;
    row.survival_fraction = s;
    row.se_survival = std::sqrt(std::max(s * (1.0 - s), 0.0) / n);
    row.first_extinctions = total.first_extinctions[g];
  }
  summary.halted_trials = total.halted;
  summary.mean_halting_generation =
      total.halted > 0 ? static_cast<double>(total.halting_gen_sum) / static_cast<double>(total.halted)
                       : 0.0;
  return summary;
}

}  // namespace scalefree
