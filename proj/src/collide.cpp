#include "scalefree/collide.hpp"

#include <cmath>
#include <stdexcept>

namespace scalefree {
namespace collide {

const char* to_string(Mode m) { return m == Mode::kClassical ? "classical" : "scale_free"; }

const char* to_string(Event e) { return e == Event::kCollision ? "collision" : "swap"; }

Outcome simulate(Mode mode, double eta_threshold, double dt, double t_end) {
  if (!(dt > 0.0) || !(eta_threshold > 0.0) || dt > eta_threshold) {
    throw std::invalid_argument("simulate: need 0 < dt <= eta_threshold");
  }
  if (!(t_end > 0.0)) throw std::invalid_argument("simulate: t_end must be positive");

  Outcome out;
  out.mode = mode;

  const std::size_t steps = static_cast<std::size_t>(std::floor(t_end / dt + 1e-9));
  double offset = 0.0;  // x_A = t + offset; the swap contributes 2*eta*
  for (std::size_t k = 0; k <= steps; ++k) {
    const double t = static_cast<double>(k) * dt;
    double x_a = t + offset;
    double x_b = 2.0 - x_a;

    if (mode == Mode::kClassical && x_a >= x_b) {
      // Interpolate the crossing of x_A - x_B between this step and the last.
      const double prev_t = t - dt;
      const double prev_gap = 2.0 * prev_t - 2.0;
      const double gap = 2.0 * x_a - 2.0;
      const double cross = prev_t + (-prev_gap) * dt / (gap - prev_gap);
      out.event = Event::kCollision;
      out.event_time = cross;
      out.event_position = cross;
      out.final_position_a = cross;
      out.final_position_b = 2.0 - cross;
      out.trajectory.push_back({cross, cross, 2.0 - cross});
      return out;
    }

    if (mode == Mode::kScaleFree && !out.event && std::fabs(x_a - 1.0) < eta_threshold) {
      // Swap at the step nearest the meeting point: hold off while the next
      // step still shrinks the gap.
      const double next_gap = std::fabs(t + dt + offset - 1.0);
      if (next_gap >= std::fabs(x_a - 1.0) || k == steps) {
        out.event = Event::kSwap;
        out.event_time = t;
        out.event_position = x_a;
        offset = x_b - t;  // A picks up B's position; velocities keep going
        x_a = t + offset;
        x_b = 2.0 - x_a;
      }
    }

    out.trajectory.push_back({t, x_a, x_b});
  }

  const Sample& last = out.trajectory.back();
  out.final_position_a = last.x_a;
  out.final_position_b = last.x_b;
  return out;
}

}  // namespace collide
}  // namespace scalefree
