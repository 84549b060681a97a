#pragma once

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace scalefree {

/// A real number with a signed first-order infinitesimal halo,
/// core * (1 + sign * eps), under the truncation rule eps^2 == 0: any product
/// of two halo magnitudes is dropped exactly. eps is stored unsigned with a
/// separate sign so flipping the halo is a one-field change.
///
/// The container accepts any non-negative eps; asymptotic accuracy claims for
/// the truncated arithmetic only hold for small eps and are the caller's
/// concern.
class HaloReal {
 public:
  HaloReal() = default;

  static HaloReal make(double core, double eps, int sign) {
    if (!std::isfinite(core)) throw std::invalid_argument("HaloReal: core must be finite");
    if (!(eps >= 0.0) || !std::isfinite(eps)) {
      throw std::invalid_argument("HaloReal: eps must be finite and non-negative");
    }
    if (sign != -1 && sign != 1) throw std::invalid_argument("HaloReal: sign must be -1 or +1");
    return HaloReal(core, eps, eps == 0.0 ? 1 : sign);
  }

  double core() const { return core_; }
  double eps() const { return eps_; }
  int sign() const { return sign_; }

  /// Collapse to an ordinary double, core * (1 + sign * eps).
  double value() const { return core_ * (1.0 + sign_ * eps_); }

  /// Same magnitude halo on the other side: core * (1 -+ eps).
  HaloReal flipped() const { return HaloReal(core_, eps_, eps_ == 0.0 ? 1 : -sign_); }

  friend bool operator==(const HaloReal&, const HaloReal&) = default;

 private:
  HaloReal(double core, double eps, int sign) : core_(core), eps_(eps), sign_(sign) {}

  double core_ = 0.0;
  double eps_ = 0.0;
  int sign_ = 1;
};

inline HaloReal make(double core, double eps, int sign) { return HaloReal::make(core, eps, sign); }

/// Cores multiply; signed halos add; the eps_a*eps_b cross term is dropped.
inline HaloReal mul(const HaloReal& a, const HaloReal& b) {
  const double halo = a.sign() * a.eps() + b.sign() * b.eps();
  return HaloReal::make(a.core() * b.core(), std::fabs(halo), halo < 0.0 ? -1 : 1);
}

inline HaloReal operator*(const HaloReal& a, const HaloReal& b) { return mul(a, b); }

/// (core * (1 +- eps))^-1 = core^-1 * (1 -+ eps) under truncation.
inline HaloReal invert(const HaloReal& a) {
  if (a.core() == 0.0) throw std::domain_error("invert: division by zero core");
  return HaloReal::make(1.0 / a.core(), a.eps(), -a.sign());
}

/// (core * (1 +- eps))^alpha = core^alpha * (1 +- alpha * eps) under
/// truncation; negative alpha combines inversion with scaling.
inline HaloReal power(const HaloReal& a, double alpha) {
  if (!(a.core() > 0.0)) throw std::domain_error("power: core must be positive");
  const double halo = alpha * a.sign() * a.eps();
  return HaloReal::make(std::pow(a.core(), alpha), std::fabs(halo), halo < 0.0 ? -1 : 1);
}

/// Expectation over the random halo sign: the halo averages out.
inline double expectation(const HaloReal& a) { return a.core(); }

inline std::ostream& operator<<(std::ostream& os, const HaloReal& a) {
  return os << a.core() << (a.sign() < 0 ? " * (1 - " : " * (1 + ") << a.eps() << ")";
}

}  // namespace scalefree
