#pragma once

#include <cstdint>
#include <stdexcept>
#include <variant>
#include <vector>

#include "scalefree/rng.hpp"

namespace scalefree {

/// Golden mean (sqrt(5) - 1) / 2, the fixed point of x -> 1/(1 + x).
inline constexpr double kGoldenMean = 0.61803398874989484820458683436564;

/// State of an infinitesimal cascade: current magnitude, step counter and the
/// approximant trail (history[0] is the initial value, so
/// step_count == history.size() - 1).
struct CascadeState {
  double eta = 1.0;
  std::size_t step_count = 0;
  std::vector<double> history;
  Stream rng;
};

CascadeState make_cascade(double eta0, std::uint64_t seed = 0);

/// One continued-fraction step eta -> 1/(1 + eta); appends to the history.
CascadeState golden_step(CascadeState state);

/// Exact continued-fraction approximant num/den of 1/(1 + 1/(1 + ...)).
struct Approximant {
  std::uint64_t num = 1;
  std::uint64_t den = 1;
};

/// p/q -> q/(p + q) in exact integer arithmetic.
Approximant golden_step(Approximant a);

struct ConvergenceResult {
  double value;
  std::size_t steps;
};

class ConvergenceFailure : public std::runtime_error {
 public:
  ConvergenceFailure(std::string message, CascadeState last)
      : std::runtime_error(std::move(message)), state(std::move(last)) {}
  CascadeState state;
};

/// Iterate golden steps from eta0 until |eta - golden mean| < tol, or throw
/// ConvergenceFailure (carrying the last state) after max_steps.
ConvergenceResult run_to_convergence(double eta0, double tol, std::size_t max_steps);

struct Uniform {
  double lo = 0.0;
  double hi = 1.0;
};

struct GammaLike {
  double shape = 2.0;
  double scale = 1.0;
};

using ScaleDistribution = std::variant<Uniform, GammaLike>;

/// Draw a positive scale factor from the distribution using the stream.
double sample_scale(const ScaleDistribution& dist, Stream& rng);

enum class MoveKind { kInit, kInversionScaling, kScaling, kTranslation };

const char* to_string(MoveKind m);

struct TrajectoryPoint {
  std::size_t step;
  double eta;
  MoveKind move;
};

struct EvolveConfig {
  double threshold = 1e-2;   // macroscopic scale at which growth turns linear
  double step_size = 1e-3;   // translation increment is threshold * step_size
};

struct EvolveResult {
  std::vector<TrajectoryPoint> trajectory;
  bool reached_threshold = false;
  bool reached_unity = false;  // eta grew to 1: ready for the next-generation inversion
};

/// Stochastic growth of an infinitesimal starting below 1 (t = 1 - eta0):
/// the first move jumps to the upper side via t -> t^-alpha (eta -> alpha*eta),
/// further microscopic moves scale eta -> alpha*eta with alpha drawn from
/// alpha_dist, and once eta exceeds the macroscopic threshold it grows by
/// fixed translations until it reaches 1. Requires eta0 in (0, 0.5).
EvolveResult evolve_infinitesimal(double eta0, const ScaleDistribution& alpha_dist,
                                  std::uint64_t seed, std::size_t max_steps,
                                  EvolveConfig config = {});

}  // namespace scalefree
