#include "scalefree/junction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace scalefree {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double d1_central(const RealFn& f, double t0, double h) {
  return (f(t0 + h) - f(t0 - h)) / (2.0 * h);
}

double d2_central(const RealFn& f, double t0, double h) {
  return (f(t0 + h) - 2.0 * f(t0) + f(t0 - h)) / (h * h);
}

// Anchored one-sided stencils (use f(t0)); dir = +1 forward, -1 backward.
double d1_anchored(const RealFn& f, double t0, double h, int dir) {
  return dir * (-3.0 * f(t0) + 4.0 * f(t0 + dir * h) - f(t0 + 2 * dir * h)) / (2.0 * h);
}

double d2_anchored(const RealFn& f, double t0, double h, int dir) {
  return (2.0 * f(t0) - 5.0 * f(t0 + dir * h) + 4.0 * f(t0 + 2 * dir * h) -
          f(t0 + 3 * dir * h)) /
         (h * h);
}

// "Ghost" stencils for the junction probe: one-sided estimates at t0 that do
// not sample t0 itself. All are second-order accurate (exact through cubics).
struct GhostEstimates {
  double value;
  double d1;
  double d2;
  double scale;  // max |f| over the sampled points, for rounding floors
};

GhostEstimates ghost(const RealFn& f, double t0, double h, int dir) {
  const double f1 = f(t0 + dir * h);
  const double f2 = f(t0 + 2 * dir * h);
  const double f3 = f(t0 + 3 * dir * h);
  const double f4 = f(t0 + 4 * dir * h);
  const double fh = f(t0 + dir * h / 2);
  GhostEstimates e;
  e.value = 2.0 * fh - f1;  // linear extrapolation to t0
  e.d1 = -dir * (5.0 * f1 - 8.0 * f2 + 3.0 * f3) / (2.0 * h);
  e.d2 = (3.0 * f1 - 8.0 * f2 + 7.0 * f3 - 2.0 * f4) / (h * h);
  e.scale = std::max({std::fabs(f1), std::fabs(f2), std::fabs(f3), std::fabs(f4), std::fabs(fh)});
  return e;
}

struct SideProbe {
  double value;
  double d1;
  double d2;
  double noise_value;
  double noise_d1;
  double noise_d2;
};

SideProbe probe_side(const RealFn& f, double t0, double h, int dir) {
  const GhostEstimates coarse = ghost(f, t0, h, dir);
  const GhostEstimates fine = ghost(f, t0, h / 2, dir);
  const double s = std::max(coarse.scale, fine.scale);
  SideProbe p;
  p.value = fine.value;
  p.d1 = fine.d1;
  p.d2 = fine.d2;
  // h vs h/2 discrepancy dominates for resolvable features; the additive
  // terms bound the rounding error of the fine stencils themselves.
  p.noise_value = std::fabs(fine.value - coarse.value) + 3.0 * kEps * s;
  p.noise_d1 = std::fabs(fine.d1 - coarse.d1) + 16.0 * kEps * s / (h / 2);
  p.noise_d2 = std::fabs(fine.d2 - coarse.d2) + 20.0 * kEps * s / (h / 2 * (h / 2));
  return p;
}

}  // namespace

double numeric_derivative(const RealFn& f, double t0, int order, double h, Side side) {
  if (!(h > 0.0)) throw std::invalid_argument("numeric_derivative: h must be positive");
  if (order != 1 && order != 2) throw std::invalid_argument("numeric_derivative: order must be 1 or 2");
  const int dir = side == Side::kLeft ? -1 : +1;
  if (order == 1) {
    return side == Side::kCentral ? d1_central(f, t0, h) : d1_anchored(f, t0, h, dir);
  }
  return side == Side::kCentral ? d2_central(f, t0, h) : d2_anchored(f, t0, h, dir);
}

const char* to_string(Smoothness s) {
  switch (s) {
    case Smoothness::kC0Discontinuous: return "C0-discontinuous";
    case Smoothness::kC0: return "C0";
    case Smoothness::kC1: return "C1";
    case Smoothness::kC2OrSmoother: return "C2-or-smoother";
  }
  return "?";
}

JunctionReport classify_junction(const RealFn& f, double t0, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("classify_junction: h must be positive");
  const SideProbe left = probe_side(f, t0, h, -1);
  const SideProbe right = probe_side(f, t0, h, +1);

  JunctionReport r;
  r.value_left = left.value;
  r.value_right = right.value;
  r.value_jump = right.value - left.value;
  r.d1_left = left.d1;
  r.d1_right = right.d1;
  r.d1_jump = right.d1 - left.d1;
  r.d2_left = left.d2;
  r.d2_right = right.d2;
  r.d2_jump = left.d2 - right.d2;
  r.noise_floor_value = left.noise_value + right.noise_value;
  r.noise_floor_d1 = left.noise_d1 + right.noise_d1;
  r.noise_floor_d2 = left.noise_d2 + right.noise_d2;

  if (std::fabs(r.value_jump) > 10.0 * r.noise_floor_value) {
    r.classification = Smoothness::kC0Discontinuous;
  } else if (std::fabs(r.d1_jump) > 10.0 * r.noise_floor_d1) {
    r.classification = Smoothness::kC0;
  } else if (std::fabs(r.d2_jump) > 10.0 * r.noise_floor_d2) {
    r.classification = Smoothness::kC1;
  } else {
    r.classification = Smoothness::kC2OrSmoother;
  }
  return r;
}

double ode_residual(const RealFn& f, double t, double h, double junction) {
  if (!(h > 0.0)) throw std::invalid_argument("ode_residual: h must be positive");
  const double dist = t - junction;
  double d1;
  if (std::fabs(dist) >= h) {
    d1 = d1_central(f, t, h);
  } else {
    d1 = d1_anchored(f, t, h, dist < 0.0 ? -1 : +1);
  }
  return std::fabs(t * d1 - f(t));
}

double phi_residual(const GeneralizedParams& p, double t, double h) {
  if (!(t > 0.0)) throw std::domain_error("phi_residual: t must be positive");
  if (!(h > 0.0)) throw std::invalid_argument("phi_residual: h must be positive");
  const auto halo = [&p](double x) { return generalized_halo(x, p); };
  return std::fabs(t * d1_central(halo, t, h));
}

}  // namespace scalefree
