#pragma once

// Causal scalar time profiles with closed-form derivatives.
//
// Two representations, both closed under differentiation:
//   PolyExp:  p(t-t0) e^{-sigma (t-t0)}       for t > t0
//   TrigPoly: c0 + sum_k a_k cos(k w (t-t0)) + b_k sin(k w (t-t0))
//             on (t0, t0+length), zero outside
// Sine-power and raised-cosine windows are TrigPoly instances produced by
// exact product-to-sum expansion.

#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace rlp {

// Thrown when a requested derivative order exceeds what the profile's
// continuity at its support boundary allows.
class SmoothnessError : public std::runtime_error {
 public:
  explicit SmoothnessError(const std::string& what) : std::runtime_error(what) {}
};

class TimeProfile {
 public:
  TimeProfile() = default; // zero profile

  static TimeProfile zero() { return TimeProfile(); }

  // p(tau) e^{-sigma tau} with p given by ascending coefficients.
  static TimeProfile poly_exp(std::vector<double> coeffs, double sigma,
                              double onset = 0.0);

  // c0 + sum a_k cos(k omega tau) + b_k sin(k omega tau), windowed to
  // tau in (0, length).
  static TimeProfile trig_poly(double c0, std::vector<double> cos_coeffs,
                               std::vector<double> sin_coeffs, double omega,
                               double onset = 0.0,
                               double length = std::numeric_limits<double>::infinity());

  // sin(omega tau)^power on (0, length); C^{power-1} at onset.
  static TimeProfile sine_power(int power, double omega, double onset = 0.0,
                                double length = std::numeric_limits<double>::infinity());

  // ((1 - cos(2 pi tau / width)) / 2)^q on (0, width); C^{2q-1} at both ends.
  static TimeProfile raised_cosine(int q, double width, double onset = 0.0);

  double operator()(double t) const;

  // Exact derivative profile. Allowed while order <= smoothness_order()+1:
  // the last derivative may jump at the support boundary (it is still a
  // classical derivative in the open support and locally integrable).
  TimeProfile derivative() const;
  TimeProfile derivative(int order) const;

  TimeProfile scaled(double alpha) const;

  // Number of continuous derivatives at the support boundary, capped at 4.
  // -1 means the profile itself jumps.
  int smoothness_order() const;

  bool is_zero() const;
  double onset() const { return onset_; }
  // onset + support length; +inf when not compactly supported.
  double support_end() const;

 private:
  enum class Kind { Zero, PolyExp, TrigPoly };

  // one-sided limit of the profile at the support boundary (0 = onset side,
  // 1 = end side), used for the smoothness order
  double edge_value(int side) const;

  Kind kind_ = Kind::Zero;
  double onset_ = 0.0;
  double length_ = std::numeric_limits<double>::infinity();
  std::vector<double> coef_; // PolyExp
  double sigma_ = 0.0;
  double c0_ = 0.0, omega_ = 0.0; // TrigPoly
  std::vector<double> ca_, cb_;
};

} // namespace rlp
