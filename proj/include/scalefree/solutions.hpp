#pragma once

#include <functional>
#include <variant>
#include <vector>

#include "scalefree/halo_real.hpp"

namespace scalefree {

// Solution families of the scale-free equation t * dtau/dt = tau in the
// neighbourhood of t = 1, written as functions of t = 1 +- eta. Values are
// computed in exact real arithmetic (no halo truncation) so that finite
// difference probes see the true functions, including their junction defects.

/// tau(1 +- eta) = 1 +- eta, the translation-only solution.
struct Standard {};

/// tau(1 - eta) = 1/(1 + eta), tau(1 + eta) = 1/(1 - eta): pure inversion on
/// both sides, reflection symmetric and smooth across t = 1.
struct Fluctuation {};

/// tau(1 - eta) = (1 + eta)^-alpha, tau(1 + eta) = 1 + eta: one-sided
/// inversion with jump length alpha > 0. alpha = 1 is the basic piecewise
/// solution.
struct Asymmetric {
  double alpha{1.0};
};

/// Same-side infinitesimal scaling x -> x^beta (maps 1 + eta to
/// 1 + beta*eta + O(eta^2)), beta > 0.
struct AsymmetricScaling {
  double beta{1.0};
};

/// Left branch (1/t+) * prod_{n=1..depth} (1 + eta^(2^n))^-1, right branch
/// t+. As depth grows the left branch converges to 1 - eta and the piecewise
/// function becomes an exact solution.
struct ExactProduct {
  int depth{8};
};

using SolutionFamily =
    std::variant<Standard, Fluctuation, Asymmetric, AsymmetricScaling, ExactProduct>;

/// Evaluate a family at t = 1 +- eta given in halo form (core must be exactly
/// 1, eps < 1). The result is returned in halo form around 1 with the exact
/// value core*(1 + sign*eps).
HaloReal eval_solution(const SolutionFamily& family, const HaloReal& t);

/// The same evaluation as a plain function of the real argument t in (0, 2).
/// Branching is strict: t < 1 takes the left branch, t >= 1 the right.
std::function<double(double)> real_evaluator(const SolutionFamily& family);

/// Parity-reflected evaluator P tau(P t) with P(1 +- eta) = 1 -+ eta.
/// Asymmetric(alpha) maps to tau(1 - eta) = 1 - eta, tau(1 + eta) =
/// (1 - eta)^-alpha, which blows up as eta -> 1. Reflection-symmetric
/// families come back unchanged.
std::function<double(double)> parity_transform(const SolutionFamily& family);

/// Factors [1 + eta, 1 + eta^2, 1 + eta^4, ...] (depth of them) whose product
/// telescopes to (1 - eta^(2^depth)) / (1 - eta). Requires 0 < eta < 1.
std::vector<double> product_factors(double eta, int depth);

/// The telescoped closed form (1 - eta^(2^depth)) / (1 - eta).
double telescoped_product(double eta, int depth);

/// Residual |s * f'(s) - f(s)| of the depth-truncated correction factor
/// f(eta) = prod_{n>=1} (1 + eta^(2^n))^-1 in its own scale variable
/// s = 1 - eta^2, measured by central differences. Shrinks with depth;
/// requires 0 < eta < 0.5.
double self_similar_residual(double eta, int depth);

inline constexpr int kMaxRecursionDepth = 16;

/// Parameters of the generalized solution ln T(t) = t + r*k*phi(k0*t) with
/// phi(u) = u * tau(1/u) and tau a self-similar replica of T in log scale.
struct GeneralizedParams {
  double k = 0.0;
  double k0 = 1.0;
  int r = +1;
  int depth = 0;  // 0 .. kMaxRecursionDepth; 0 means tau = identity
  SolutionFamily family = Standard{};
};

/// ln T(t) for the generalized solution. The replica recursion bottoms out at
/// `depth` with the identity; level 1 applies the configured family, deeper
/// levels re-enter through the log-scale substitution tau(x) = T(ln x).
/// Singular at t = 0 when depth > 0.
double eval_generalized_T(double t, const GeneralizedParams& p);

/// k * phi(k0 * t), the halo term of ln T. Exposed for the residual probe of
/// t * d(phi)/dt = 0.
double generalized_halo(double t, const GeneralizedParams& p);

}  // namespace scalefree
