#include "scalefree/cellsim.hpp"

#include <cmath>
#include <stdexcept>

#include "doctest.h"

using namespace scalefree;

TEST_CASE("certain split doubles the population") {
  Population pop = make_population(1);
  for (std::uint64_t want : {2u, 4u, 8u, 16u, 32u}) {
    pop = advance_generation(std::move(pop), 1.0);
    CHECK(pop.cells.size() == want);
  }
  CHECK(pop.generation == 5);
}

TEST_CASE("certain death ends the line at generation one, then stays a no-op") {
  Population pop = make_population(2);
  pop = advance_generation(std::move(pop), 0.0);
  CHECK(pop.cells.empty());
  CHECK(pop.generation == 1);
  pop = advance_generation(std::move(pop), 0.5);
  CHECK(pop.cells.empty());
  CHECK(pop.generation == 1);  // extinct lines do not tick
}

TEST_CASE("advance_generation validates the probability") {
  Population pop = make_population(3);
  CHECK_THROWS_AS(advance_generation(std::move(pop), 1.5), std::invalid_argument);
  Population pop2 = make_population(3);
  CHECK_THROWS_AS(advance_generation(std::move(pop2), -0.1), std::invalid_argument);
}

TEST_CASE("daughters carry half the parent's residual") {
  Population pop = make_population(9);
  // mirror the stream to recover the residual draw (sign first, residual next)
  Stream mirror = pop.rng;
  (void)mirror.next_unit();
  const double residual = mirror.next_unit();

  pop = advance_generation(std::move(pop), 1.0);
  REQUIRE(pop.cells.size() == 2);
  for (const Cell& cell : pop.cells) {
    CHECK(cell.eps == residual * 0.5);
    CHECK(cell.generation == 1);
    CHECK(cell.scale == 1e-3);
    CHECK(cell.eps == doctest::Approx(cell.scale * cell.clock).epsilon(1e-15));
  }
  CHECK(pop.cells[0].eps == pop.cells[1].eps);  // twins
}

TEST_CASE("extinction oracle recursion") {
  CHECK(extinction_oracle(0.5, 0) == 0.0);
  CHECK(extinction_oracle(0.5, 1) == 0.5);
  CHECK(extinction_oracle(0.5, 2) == 0.625);  // 0.5 + 0.5 * 0.25
  CHECK(extinction_oracle(1.0, 7) == 0.0);
  CHECK(extinction_oracle(0.0, 1) == 1.0);
  CHECK(extinction_oracle(0.5, 10) == doctest::Approx(0.86109821220571203).epsilon(1e-15));
  CHECK_THROWS_AS(extinction_oracle(1.5, 3), std::invalid_argument);
  CHECK_THROWS_AS(extinction_oracle(0.5, -1), std::invalid_argument);
}

TEST_CASE("Monte Carlo matches the oracle and the mean growth law") {
  const std::uint64_t trials = 100000;
  for (double p : {0.3, 0.5, 0.7}) {
    const TrialSummary sum = run_trials(p, 12, trials, 0);
    REQUIRE(sum.rows.size() == 13);
    CHECK(sum.rows[0].mean_population == 1.0);
    CHECK(sum.rows[0].survival_fraction == 1.0);
    for (int g = 1; g <= 12; ++g) {
      const double survive = 1.0 - extinction_oracle(p, g);
      const double se = std::sqrt(survive * (1.0 - survive) / static_cast<double>(trials));
      CHECK(std::fabs(sum.rows[g].survival_fraction - survive) <= 3.0 * se);

      const double mean = std::pow(2.0 * p, g);
      CHECK(std::fabs(sum.rows[g].mean_population - mean) <=
            3.0 * std::max(sum.rows[g].se_mean_population, 1e-12));
    }
  }
}

TEST_CASE("halting statistics count first extinctions") {
  const TrialSummary sum = run_trials(0.0, 3, 1000, 5);
  CHECK(sum.halted_trials == 1000);
  CHECK(sum.mean_halting_generation == 1.0);
  CHECK(sum.rows[1].first_extinctions == 1000);

  const TrialSummary alive = run_trials(1.0, 3, 100, 5);
  CHECK(alive.halted_trials == 0);
  CHECK(alive.mean_halting_generation == 0.0);
}

TEST_CASE("trial streams make parallel and serial runs identical") {
  const TrialSummary serial = run_trials(0.5, 10, 20000, 77, 1);
  const TrialSummary parallel = run_trials(0.5, 10, 20000, 77, 4);
  const TrialSummary again = run_trials(0.5, 10, 20000, 77, 4);
  REQUIRE(serial.rows.size() == parallel.rows.size());
  for (std::size_t g = 0; g < serial.rows.size(); ++g) {
    CHECK(serial.rows[g].mean_population == parallel.rows[g].mean_population);
    CHECK(serial.rows[g].se_mean_population == parallel.rows[g].se_mean_population);
    CHECK(serial.rows[g].survival_fraction == parallel.rows[g].survival_fraction);
    CHECK(serial.rows[g].se_survival == parallel.rows[g].se_survival);
    CHECK(serial.rows[g].first_extinctions == parallel.rows[g].first_extinctions);
    CHECK(parallel.rows[g].first_extinctions == again.rows[g].first_extinctions);
  }
  CHECK(serial.halted_trials == parallel.halted_trials);
  CHECK(serial.mean_halting_generation == parallel.mean_halting_generation);
}

TEST_CASE("run_trials validates its arguments") {
  CHECK_THROWS_AS(run_trials(0.5, 5, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(run_trials(0.5, -1, 10, 0), std::invalid_argument);
  CHECK_THROWS_AS(run_trials(0.5, 5, 10, 0, 0), std::invalid_argument);
}
