#include "scalefree/solutions.hpp"

#include <cmath>
#include <stdexcept>

namespace scalefree {

namespace {

void check_family(const SolutionFamily& family) {
  if (const auto* a = std::get_if<Asymmetric>(&family)) {
    if (!(a->alpha > 0.0)) throw std::invalid_argument("Asymmetric: alpha must be positive");
  } else if (const auto* s = std::get_if<AsymmetricScaling>(&family)) {
    if (!(s->beta > 0.0)) throw std::invalid_argument("AsymmetricScaling: beta must be positive");
  } else if (const auto* p = std::get_if<ExactProduct>(&family)) {
    if (p->depth < 1) throw std::invalid_argument("ExactProduct: depth must be >= 1");
  }
}

// Value of the family at 1 - eta (below = true) or 1 + eta, exact arithmetic.
double eval_value(const SolutionFamily& family, double eta, bool below) {
  return std::visit(
      [&](const auto& f) -> double {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, Standard>) {
          return below ? 1.0 - eta : 1.0 + eta;
        } else if constexpr (std::is_same_v<F, Fluctuation>) {
          return below ? 1.0 / (1.0 + eta) : 1.0 / (1.0 - eta);
        } else if constexpr (std::is_same_v<F, Asymmetric>) {
          return below ? std::pow(1.0 + eta, -f.alpha) : 1.0 + eta;
        } else if constexpr (std::is_same_v<F, AsymmetricScaling>) {
          return std::pow(below ? 1.0 - eta : 1.0 + eta, f.beta);
        } else {
          static_assert(std::is_same_v<F, ExactProduct>);
          if (!below) return 1.0 + eta;
          double v = 1.0 / (1.0 + eta);
          double x = eta * eta;  // eta^(2^n), n = 1..depth, by repeated squaring
          for (int n = 0; n < f.depth; ++n) {
            v /= 1.0 + x;
            x *= x;
          }
          return v;
        }
      },
      family);
}

double parity_value(const SolutionFamily& family, double eta, bool below) {
  // P tau(P t): swap the sides of both argument and value.
  if (const auto* a = std::get_if<Asymmetric>(&family)) {
    return below ? 1.0 - eta : std::pow(1.0 - eta, -a->alpha);
  }
  return eval_value(family, eta, below);
}

// Split a real argument near 1 into (eta, below). Exact for t in [0.5, 2].
std::pair<double, bool> halo_of(double t) {
  if (!(t > 0.0 && t < 2.0)) {
    throw std::domain_error("solution evaluator: argument must lie in (0, 2)");
  }
  return t < 1.0 ? std::pair{1.0 - t, true} : std::pair{t - 1.0, false};
}

}  // namespace

HaloReal eval_solution(const SolutionFamily& family, const HaloReal& t) {
  check_family(family);
  if (t.core() != 1.0) throw std::domain_error("eval_solution: core must be exactly 1");
  if (!(t.eps() < 1.0)) throw std::domain_error("eval_solution: eps must be < 1");
  const bool below = t.sign() < 0 && t.eps() > 0.0;
  const double v = eval_value(family, t.eps(), below);
  return HaloReal::make(1.0, std::fabs(v - 1.0), v < 1.0 ? -1 : 1);
}

std::function<double(double)> real_evaluator(const SolutionFamily& family) {
  check_family(family);
  return [family](double t) {
    const auto [eta, below] = halo_of(t);
    return eval_value(family, eta, below);
  };
}

std::function<double(double)> parity_transform(const SolutionFamily& family) {
  check_family(family);
  return [family](double t) {
    const auto [eta, below] = halo_of(t);
    return parity_value(family, eta, below);
  };
}

std::vector<double> product_factors(double eta, int depth) {
  if (!(eta > 0.0 && eta < 1.0)) throw std::domain_error("product_factors: eta must be in (0, 1)");
  if (depth < 1) throw std::invalid_argument("product_factors: depth must be >= 1");
  std::vector<double> factors;
  factors.reserve(static_cast<std::size_t>(depth));
  double x = eta;  // eta^(2^n), n = 0..depth-1
  for (int n = 0; n < depth; ++n) {
    factors.push_back(1.0 + x);
    x *= x;
  }
  return factors;
}

double telescoped_product(double eta, int depth) {
  if (!(eta > 0.0 && eta < 1.0)) throw std::domain_error("telescoped_product: eta must be in (0, 1)");
  if (depth < 1) throw std::invalid_argument("telescoped_product: depth must be >= 1");
  double x = eta;
  for (int n = 0; n < depth; ++n) x *= x;  // eta^(2^depth)
  return (1.0 - x) / (1.0 - eta);
}

double self_similar_residual(double eta, int depth) {
  if (!(eta > 0.0 && eta < 0.5)) {
    throw std::domain_error("self_similar_residual: eta must be in (0, 0.5)");
  }
  if (depth < 1) throw std::invalid_argument("self_similar_residual: depth must be >= 1");
  // In the scale variable s = 1 - eta^2 the correction factor is
  // g(s) = prod_{m=0..depth-1} (1 + (1-s)^(2^m))^-1 (only even powers of eta
  // appear, so no square roots are needed).
  const auto g = [depth](double s) {
    double v = 1.0;
    double x = 1.0 - s;
    for (int m = 0; m < depth; ++m) {
      v /= 1.0 + x;
      x *= x;
    }
    return v;
  };
  const double s0 = 1.0 - eta * eta;
  const double h = 1e-5;
  const double d1 = (g(s0 + h) - g(s0 - h)) / (2.0 * h);
  return std::fabs(s0 * d1 - g(s0));
}

namespace {

double ln_T_depth(double t, const GeneralizedParams& p, int depth);

// Replica tau at recursion level `level` (>= 1). Level 1 is the configured
// family; deeper levels go through the log-scale substitution tau(x) = T(ln x).
double replica_value(double x, const GeneralizedParams& p, int level) {
  if (level <= 1) {
    if (std::holds_alternative<Standard>(p.family)) return x;  // global solution
    const auto [eta, below] = halo_of(x);
    if (!(eta < 1.0)) throw std::domain_error("generalized replica: argument left (0, 2)");
    return eval_value(p.family, eta, below);
  }
  if (!(x > 0.0)) throw std::domain_error("generalized replica: log scale needs a positive argument");
  return std::exp(ln_T_depth(std::log(x), p, level - 1));
}

double phi_value(double u, const GeneralizedParams& p, int depth) {
  if (depth == 0) return 1.0;  // tau = identity: phi(u) = u * (1/u)
  if (u == 0.0) throw std::domain_error("generalized solution: singular at t = 0");
  return u * replica_value(1.0 / u, p, depth);
}

double ln_T_depth(double t, const GeneralizedParams& p, int depth) {
  return t + p.r * p.k * phi_value(p.k0 * t, p, depth);
}

void check_params(const GeneralizedParams& p) {
  if (!(p.k0 > 0.0)) throw std::invalid_argument("GeneralizedParams: k0 must be positive");
  if (p.r != -1 && p.r != 1) throw std::invalid_argument("GeneralizedParams: r must be -1 or +1");
  if (p.depth < 0 || p.depth > kMaxRecursionDepth) {
    throw std::invalid_argument("GeneralizedParams: depth out of range");
  }
  check_family(p.family);
}

}  // namespace

double eval_generalized_T(double t, const GeneralizedParams& p) {
  check_params(p);
  if (t == 0.0 && p.depth > 0) throw std::domain_error("generalized solution: singular at t = 0");
  return ln_T_depth(t, p, p.depth);
}

double generalized_halo(double t, const GeneralizedParams& p) {
  check_params(p);
  if (p.k == 0.0) return 0.0;
  if (t == 0.0 && p.depth > 0) throw std::domain_error("generalized solution: singular at t = 0");
  return p.k * phi_value(p.k0 * t, p, p.depth);
}

}  // namespace scalefree
