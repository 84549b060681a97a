#include "scalefree/cascade.hpp"

#include <cmath>
#include <limits>

namespace scalefree {

CascadeState make_cascade(double eta0, std::uint64_t seed) {
  if (!(eta0 > 0.0)) throw std::invalid_argument("make_cascade: eta0 must be positive");
  CascadeState s;
  s.eta = eta0;
  s.history = {eta0};
  s.rng = Stream(seed);
  return s;
}

CascadeState golden_step(CascadeState state) {
  if (!(state.eta > 0.0)) throw std::invalid_argument("golden_step: eta must be positive");
  state.eta = 1.0 / (1.0 + state.eta);
  state.history.push_back(state.eta);
  ++state.step_count;
  return state;
}

Approximant golden_step(Approximant a) {
  if (a.den > std::numeric_limits<std::uint64_t>::max() - a.num) {
    throw std::overflow_error("golden_step: approximant denominator overflow");
  }
  return Approximant{a.den, a.num + a.den};
}

ConvergenceResult run_to_convergence(double eta0, double tol, std::size_t max_steps) {
  if (!(tol > 0.0)) throw std::invalid_argument("run_to_convergence: tol must be positive");
  CascadeState s = make_cascade(eta0);
  while (std::fabs(s.eta - kGoldenMean) >= tol) {
    if (s.step_count >= max_steps) {
      throw ConvergenceFailure("run_to_convergence: not within tolerance after max_steps",
                               std::move(s));
    }
    s = golden_step(std::move(s));
  }
  return ConvergenceResult{s.eta, s.step_count};
}

double sample_scale(const ScaleDistribution& dist, Stream& rng) {
  return std::visit(
      [&rng](const auto& d) -> double {
        using D = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<D, Uniform>) {
          if (!(d.lo >= 0.0) || !(d.lo < d.hi)) {
            throw std::invalid_argument("sample_scale: need 0 <= lo < hi");
          }
          return rng.uniform(d.lo, d.hi);
        } else {
          static_assert(std::is_same_v<D, GammaLike>);
          return rng.gamma(d.shape, d.scale);
        }
      },
      dist);
}

const char* to_string(MoveKind m) {
  switch (m) {
    case MoveKind::kInit: return "init";
    case MoveKind::kInversionScaling: return "inversion_scaling";
    case MoveKind::kScaling: return "scaling";
    case MoveKind::kTranslation: return "translation";
  }
  return "?";
}

EvolveResult evolve_infinitesimal(double eta0, const ScaleDistribution& alpha_dist,
                                  std::uint64_t seed, std::size_t max_steps,
                                  EvolveConfig config) {
  if (!(eta0 > 0.0 && eta0 < 0.5)) {
    throw std::domain_error("evolve_infinitesimal: eta0 must be in (0, 0.5)");
  }
  if (!(config.threshold > 0.0) || !(config.step_size > 0.0)) {
    throw std::invalid_argument("evolve_infinitesimal: threshold and step_size must be positive");
  }

  Stream rng = Stream::for_trial(seed, 0);
  EvolveResult result;
  result.trajectory.push_back({0, eta0, MoveKind::kInit});

  double eta = eta0;
  bool below = true;  // start at t = 1 - eta
  for (std::size_t step = 1; step <= max_steps && eta < 1.0; ++step) {
    MoveKind move;
    if (below) {
      // t- -> t-^-alpha = 1 + alpha*eta: cross to the upper side.
      eta *= sample_scale(alpha_dist, rng);
      below = false;
      move = MoveKind::kInversionScaling;
    } else if (eta < config.threshold) {
      eta *= sample_scale(alpha_dist, rng);
      move = MoveKind::kScaling;
    } else {
      eta += config.threshold * config.step_size;
      move = MoveKind::kTranslation;
    }
    result.trajectory.push_back({step, eta, move});
  }
  result.reached_threshold = eta >= config.threshold;
  result.reached_unity = eta >= 1.0;
  return result;
}

}  // namespace scalefree
