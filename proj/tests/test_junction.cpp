#include "scalefree/junction.hpp"

#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "scalefree/rng.hpp"
#include "scalefree/solutions.hpp"

using namespace scalefree;

TEST_CASE("numeric_derivative on polynomials") {
  const RealFn identity = [](double x) { return x; };
  CHECK(numeric_derivative(identity, 1.0, 1, 1e-4, Side::kCentral) ==
        doctest::Approx(1.0).epsilon(1e-11));
  CHECK(numeric_derivative(identity, 1.0, 1, 1e-4, Side::kLeft) == doctest::Approx(1.0));
  CHECK(numeric_derivative(identity, 1.0, 1, 1e-4, Side::kRight) == doctest::Approx(1.0));

  const RealFn quad = [](double x) { return 3.0 * x * x - x + 2.0; };
  for (Side side : {Side::kCentral, Side::kLeft, Side::kRight}) {
    CHECK(numeric_derivative(quad, 0.7, 1, 1e-3, side) == doctest::Approx(3.2).epsilon(1e-9));
    CHECK(numeric_derivative(quad, 0.7, 2, 1e-3, side) == doctest::Approx(6.0).epsilon(1e-6));
  }

  // the one-sided stencils are exact through cubics as well
  const RealFn cubic = [](double x) { return x * x * x; };
  CHECK(numeric_derivative(cubic, 0.5, 2, 1e-3, Side::kLeft) == doctest::Approx(3.0).epsilon(1e-6));
  CHECK(numeric_derivative(cubic, 0.5, 2, 1e-3, Side::kRight) == doctest::Approx(3.0).epsilon(1e-6));

  CHECK_THROWS_AS(numeric_derivative(quad, 0.7, 1, 0.0, Side::kCentral), std::invalid_argument);
  CHECK_THROWS_AS(numeric_derivative(quad, 0.7, 3, 1e-3, Side::kCentral), std::invalid_argument);
}

TEST_CASE("central differences gain second order under step halving") {
  const RealFn cubic = [](double x) { return x * x * x - 2.0 * x * x + 0.5 * x - 1.0; };
  const auto d_exact = [](double x) { return 3.0 * x * x - 4.0 * x + 0.5; };
  for (double t0 : {0.3, 0.8, 1.4}) {
    const double e1 = std::fabs(numeric_derivative(cubic, t0, 1, 1e-2, Side::kCentral) - d_exact(t0));
    const double e2 = std::fabs(numeric_derivative(cubic, t0, 1, 5e-3, Side::kCentral) - d_exact(t0));
    CHECK(e2 * 3.5 <= e1 + 1e-12);
    // second central differences are exact on cubics
    const double want_d2 = 6.0 * t0 - 4.0;
    CHECK(numeric_derivative(cubic, t0, 2, 1e-2, Side::kCentral) ==
          doctest::Approx(want_d2).epsilon(1e-9));
  }
}

TEST_CASE("one-sided derivatives of the inverted branch match the closed forms") {
  const auto f = real_evaluator(Asymmetric{1.0});
  // d tau-/d t- = 1/t+^2 and d2 tau-/d t-^2 = 2/t+^3
  for (double eta : {1e-2, 1e-3}) {
    const double tp = 1.0 + eta;
    const double d1 = numeric_derivative(f, 1.0 - eta, 1, 1e-4, Side::kLeft);
    CHECK(std::fabs(d1 - 1.0 / (tp * tp)) / (1.0 / (tp * tp)) <= 1e-5);
  }
  const double d2 = numeric_derivative(f, 1.0 - 0.01, 2, 1e-4, Side::kLeft);
  CHECK(d2 == doctest::Approx(2.0 / (1.01 * 1.01 * 1.01)).epsilon(1e-4));
}

TEST_CASE("classify_junction finds the second-derivative discontinuity") {
  const auto rep = classify_junction(real_evaluator(Asymmetric{1.0}), 1.0, 1e-4);
  CHECK(rep.classification == Smoothness::kC1);
  CHECK(rep.d2_left == doctest::Approx(2.0).epsilon(0.02));
  CHECK(std::fabs(rep.d2_right) <= rep.noise_floor_d2);
  CHECK(rep.d2_jump == doctest::Approx(2.0).epsilon(0.02));
  CHECK(std::fabs(rep.value_jump) <= 10.0 * rep.noise_floor_value);
  CHECK(std::fabs(rep.d1_jump) <= 10.0 * rep.noise_floor_d1);
  CHECK(rep.d1_left == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(rep.d1_right == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("classify_junction: smooth families stay smooth") {
  for (const SolutionFamily family :
       {SolutionFamily(Standard{}), SolutionFamily(Fluctuation{})}) {
    const auto rep = classify_junction(real_evaluator(family), 1.0, 1e-4);
    CHECK(rep.classification == Smoothness::kC2OrSmoother);
  }
  // the smooth scaling map as well
  const auto rep = classify_junction(real_evaluator(AsymmetricScaling{0.5}), 1.0, 1e-4);
  CHECK(rep.classification == Smoothness::kC2OrSmoother);
}

TEST_CASE("classify_junction measures the d2 jump alpha*(alpha+1)") {
  // differentiating (2 - t)^-alpha twice gives alpha*(alpha+1)*(2-t)^-(alpha+2)
  for (double alpha : {0.5, 1.0, 2.0}) {
    const auto rep = classify_junction(real_evaluator(Asymmetric{alpha}), 1.0, 1e-4);
    const double want = alpha * (alpha + 1.0);
    CHECK(std::fabs(rep.d2_jump - want) / want <= 0.02);
    CHECK(std::fabs(rep.d2_left - want) / want <= 0.02);
    if (alpha == 1.0) {
      CHECK(rep.classification == Smoothness::kC1);
    } else {
      // the first derivative jumps by alpha - 1, so these are only C0
      CHECK(rep.classification == Smoothness::kC0);
    }
  }
}

TEST_CASE("classify_junction never reports a value jump for the families") {
  for (const SolutionFamily family :
       {SolutionFamily(Standard{}), SolutionFamily(Fluctuation{}),
        SolutionFamily(Asymmetric{0.5}), SolutionFamily(Asymmetric{1.0}),
        SolutionFamily(Asymmetric{2.0}), SolutionFamily(AsymmetricScaling{0.7}),
        SolutionFamily(ExactProduct{4}), SolutionFamily(ExactProduct{12})}) {
    const auto rep = classify_junction(real_evaluator(family), 1.0, 1e-4);
    CHECK(rep.classification != Smoothness::kC0Discontinuous);
  }
}

TEST_CASE("classification is consistent with the jump/noise comparisons") {
  for (const SolutionFamily family :
       {SolutionFamily(Standard{}), SolutionFamily(Fluctuation{}),
        SolutionFamily(Asymmetric{1.0}), SolutionFamily(Asymmetric{2.0}),
        SolutionFamily(ExactProduct{8})}) {
    const auto r = classify_junction(real_evaluator(family), 1.0, 1e-4);
    const bool value_jump = std::fabs(r.value_jump) > 10.0 * r.noise_floor_value;
    const bool d1_jump = std::fabs(r.d1_jump) > 10.0 * r.noise_floor_d1;
    const bool d2_jump = std::fabs(r.d2_jump) > 10.0 * r.noise_floor_d2;
    CHECK((r.classification == Smoothness::kC1) == (!value_jump && !d1_jump && d2_jump));
    CHECK((r.classification == Smoothness::kC0Discontinuous) == value_jump);
  }
}

TEST_CASE("noise floors honestly bound the estimator error on smooth functions") {
  Stream rng(21);
  int d1_ok = 0, d2_ok = 0, value_ok = 0, smooth_ok = 0;
  const int trials = 1000;
  for (int i = 0; i < trials; ++i) {
    double c[5];
    for (double& x : c) x = rng.uniform(-1.0, 1.0);
    const RealFn quartic = [&c](double x) {
      return c[0] + x * (c[1] + x * (c[2] + x * (c[3] + x * c[4])));
    };
    const double t0 = rng.uniform(0.5, 1.5);
    const auto rep = classify_junction(quartic, t0, 1e-4);
    const double f0 = quartic(t0);
    const double d1 = c[1] + t0 * (2.0 * c[2] + t0 * (3.0 * c[3] + t0 * 4.0 * c[4]));
    const double d2 = 2.0 * c[2] + t0 * (6.0 * c[3] + t0 * 12.0 * c[4]);
    if (std::fabs(rep.value_left - f0) <= rep.noise_floor_value) ++value_ok;
    if (std::fabs(rep.d1_left - d1) <= rep.noise_floor_d1) ++d1_ok;
    if (std::fabs(rep.d2_left - d2) <= rep.noise_floor_d2) ++d2_ok;
    if (rep.classification == Smoothness::kC2OrSmoother) ++smooth_ok;
  }
  CHECK(value_ok >= trials * 99 / 100);
  CHECK(d1_ok >= trials * 99 / 100);
  CHECK(d2_ok >= trials * 99 / 100);
  CHECK(smooth_ok >= trials * 99 / 100);
}

TEST_CASE("ode_residual vanishes on exact solutions") {
  const auto standard = real_evaluator(Standard{});
  for (double t = 0.5; t <= 1.5; t += 0.01) {
    CHECK(ode_residual(standard, t, 1e-5) <= 1e-10);
  }
  // near the junction the stencil switches to one-sided and stays exact
  CHECK(ode_residual(standard, 1.0 - 5e-6, 1e-5) <= 1e-10);

  // the deep product truncation is an exact solution to machine depth
  const auto product = real_evaluator(ExactProduct{12});
  for (double eta : {0.01, 0.05, 0.1}) {
    CHECK(ode_residual(product, 1.0 - eta, 1e-4) <= 1e-9);
    CHECK(ode_residual(product, 1.0 + eta, 1e-4) <= 1e-9);
  }
}

TEST_CASE("ode_residual of the truncated branches carries the first-order defect") {
  // For tau = 1/(2 - t), t*tau' - tau = -2*(1-t)/(2-t)^2: the inverted branch
  // solves the equation only under eps^2 == 0 truncation, so in exact
  // arithmetic the defect at 1 - eta is 2*eta/(1+eta)^2, first order in eta.
  const auto asym = real_evaluator(Asymmetric{1.0});
  const auto fluct = real_evaluator(Fluctuation{});
  for (double eta : {1e-2, 1e-3}) {
    const double defect = 2.0 * eta / ((1.0 + eta) * (1.0 + eta));
    CHECK(ode_residual(asym, 1.0 - eta, 1e-4) == doctest::Approx(defect).epsilon(1e-4));
    CHECK(ode_residual(fluct, 1.0 - eta, 1e-4) == doctest::Approx(defect).epsilon(1e-4));
    // the right branch of the asymmetric family is the identity: exact
    CHECK(ode_residual(asym, 1.0 + eta, 1e-4) <= 1e-9);
  }
  CHECK_THROWS_AS(ode_residual(asym, 0.9, 0.0), std::invalid_argument);
}

TEST_CASE("phi_residual: the halo term is a generalized constant") {
  GeneralizedParams depth0;
  depth0.k = 1e-3;
  CHECK(phi_residual(depth0, 1.0, 1e-5) == 0.0);
  CHECK(phi_residual(depth0, 0.7, 1e-5) == 0.0);

  GeneralizedParams off;
  off.k = 0.0;
  off.depth = 1;
  CHECK(phi_residual(off, 1.0, 1e-5) == 0.0);

  GeneralizedParams one;
  one.k = 1e-3;
  one.depth = 1;
  CHECK(phi_residual(one, 1.0, 1e-5) <= 1e-3);

  GeneralizedParams asym = one;
  asym.family = Asymmetric{1.0};
  CHECK(phi_residual(asym, 1.05, 1e-5) <= asym.k);

  CHECK_THROWS_AS(phi_residual(one, -1.0, 1e-5), std::domain_error);
  CHECK_THROWS_AS(phi_residual(one, 1.0, 0.0), std::invalid_argument);
}
