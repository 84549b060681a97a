#pragma once

#include <cstdint>

namespace scalefree {

/// Counter-based random stream (splitmix64). The state advances by a fixed
/// increment and every output is a mix of the counter, so streams can be
/// derived for independent trials: trial i of a run uses
/// Stream::for_trial(master_seed, i), which is identical whether trials run
/// serially or in parallel.
class Stream {
 public:
  Stream() : Stream(0) {}
  explicit Stream(std::uint64_t seed) : state_(seed) {}

  static Stream for_trial(std::uint64_t master_seed, std::uint64_t trial);

  std::uint64_t next_u64();

  /// Uniform double in the open interval (0, 1); never returns an endpoint.
  double next_unit();

  /// Uniform double in (lo, hi).
  double uniform(double lo, double hi);

  /// Standard normal deviate (Box-Muller, two draws per call).
  double normal();

  /// Gamma deviate (Marsaglia-Tsang squeeze; shape < 1 via the boost
  /// gamma(shape+1) * u^(1/shape)).
  double gamma(double shape, double scale);

  friend bool operator==(const Stream&, const Stream&) = default;

 private:
  std::uint64_t state_;
};

}  // namespace scalefree
