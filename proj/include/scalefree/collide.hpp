#pragma once

#include <optional>
#include <vector>

namespace scalefree {
namespace collide {

enum class Mode { kClassical, kScaleFree };

enum class Event { kCollision, kSwap };

const char* to_string(Mode m);
const char* to_string(Event e);

struct Sample {
  double time;
  double x_a;
  double x_b;
};

struct Outcome {
  Mode mode;
  std::optional<Event> event;
  double event_time = 0.0;
  double event_position = 0.0;
  double final_position_a = 0.0;
  double final_position_b = 0.0;
  std::vector<Sample> trajectory;
};

/// Two particles head toward each other along x_A = t, x_B = 2 - t.
/// Classical mode stops at the first step with x_A >= x_B and reports the
/// interpolated crossing (t = 1, x = 1). Scale-free mode instead swaps the
/// two positions at the grid step nearest the meeting point once inside the
/// window |x_A - 1| < eta_threshold, after which A runs on to x = 2 and B to
/// x = 0. Positions satisfy x_A + x_B = 2 at every sample by construction.
/// Requires 0 < dt <= eta_threshold and t_end > 0.
Outcome simulate(Mode mode, double eta_threshold, double dt, double t_end);

}  // namespace collide
}  // namespace scalefree
