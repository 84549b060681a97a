#pragma once

#include <functional>

#include "scalefree/solutions.hpp"

namespace scalefree {

using RealFn = std::function<double(double)>;

enum class Side { kLeft, kRight, kCentral };

/// Finite-difference derivative of order 1 or 2 at t0. Central stencils are
/// the usual 3-point forms; one-sided stencils are second-order accurate and
/// never cross t0 (order 1: 3 points, order 2: 4 points, anchored at t0).
double numeric_derivative(const RealFn& f, double t0, int order, double h, Side side);

enum class Smoothness { kC0Discontinuous, kC0, kC1, kC2OrSmoother };

const char* to_string(Smoothness s);

/// One-sided limits and derivatives at a junction, with per-order noise
/// floors. A jump counts as present when it exceeds 10x its noise floor, so
/// classification is C1 exactly when value and first derivative match within
/// noise while the second derivatives do not.
struct JunctionReport {
  double value_left = 0.0;
  double value_right = 0.0;
  double value_jump = 0.0;  // right - left
  double d1_left = 0.0;
  double d1_right = 0.0;
  double d1_jump = 0.0;  // right - left
  double d2_left = 0.0;
  double d2_right = 0.0;
  double d2_jump = 0.0;  // left - right
  double noise_floor_value = 0.0;
  double noise_floor_d1 = 0.0;
  double noise_floor_d2 = 0.0;
  Smoothness classification = Smoothness::kC2OrSmoother;
};

/// Probe both sides of t0 with steps h and h/2. The side estimates never
/// sample t0 itself (its value belongs to the right branch), so a genuine
/// value jump cannot contaminate the derivative estimates. Noise floors
/// combine the h vs h/2 discrepancy with a rounding-scale term.
JunctionReport classify_junction(const RealFn& f, double t0, double h);

/// |t * f'(t) - f(t)| with f' from numeric_derivative: central away from the
/// junction, one-sided (pointing away) within one step of it.
double ode_residual(const RealFn& f, double t, double h, double junction = 1.0);

/// |t * d/dt [k * phi(k0 t)]| for the generalized solution's halo term;
/// exactly zero for depth 0 or k = 0 and O(k) otherwise.
double phi_residual(const GeneralizedParams& p, double t, double h);

}  // namespace scalefree
