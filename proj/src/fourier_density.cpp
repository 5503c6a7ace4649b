#include "rlp/fourier_density.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rlp/quadrature.hpp"

namespace rlp {

FourierDensity::FourierDensity(Geometry g, double radius) : geom_(g), a_(radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("density: radius <= 0");
}

void FourierDensity::set_mode(int n, TimeProfile p) {
  if (n < 0) throw std::invalid_argument("density: mode < 0");
  for (auto& t : terms_)
    if (t.n == n) {
      t.profile = std::move(p);
      return;
    }
  terms_.push_back({n, std::move(p)});
  std::sort(terms_.begin(), terms_.end(),
            [](const DensityTerm& x, const DensityTerm& y) { return x.n < y.n; });
}

bool FourierDensity::is_zero() const {
  for (const auto& t : terms_)
    if (!t.profile.is_zero()) return false;
  return true;
}

double FourierDensity::coeff(int n, double t) const {
  for (const auto& term : terms_)
    if (term.n == n) return term.profile(t);
  return 0.0;
}

int FourierDensity::max_mode() const {
  int m = -1;
  for (const auto& t : terms_)
    if (!t.profile.is_zero()) m = std::max(m, t.n);
  return m;
}

FourierDensity FourierDensity::time_derivative(int order) const {
  FourierDensity d(geom_, a_);
  for (const auto& t : terms_) d.terms_.push_back({t.n, t.profile.derivative(order)});
  return d;
}

FourierDensity FourierDensity::scaled(double alpha) const {
  FourierDensity d(geom_, a_);
  for (const auto& t : terms_) d.terms_.push_back({t.n, t.profile.scaled(alpha)});
  return d;
}

double FourierDensity::onset() const {
  double o = std::numeric_limits<double>::infinity();
  for (const auto& t : terms_)
    if (!t.profile.is_zero()) o = std::min(o, t.profile.onset());
  return std::isfinite(o) ? o : 0.0;
}

double FourierDensity::support_end() const {
  double e = 0.0;
  for (const auto& t : terms_)
    if (!t.profile.is_zero()) e = std::max(e, t.profile.support_end());
  return e;
}

double FourierDensity::sobolev_norm(double t, double s) const {
  if (s != 0.5 && s != -0.5 && s != 0.0)
    throw std::invalid_argument("sobolev_norm: s must be 0 or +-1/2");
  double acc = 0.0;
  for (const auto& term : terms_) {
    const double c = term.profile(t);
    if (c == 0.0) continue;
    acc += std::pow(1.0 + double(term.n) * term.n, s) * c * c;
  }
  return std::sqrt(2.0 * M_PI * a_ * acc);
}

namespace {

struct BPart {
  double w;
  FourierDensity d;
};

std::vector<BPart> b_parts(const FourierDensity& rho, BVariant variant) {
  std::vector<BPart> parts;
  if (variant == BVariant::B4_plus) {
    parts.push_back({4.0, rho});
    parts.push_back({5.0, rho.time_derivative(2)});
    parts.push_back({1.0, rho.time_derivative(4)});
  } else {
    parts.push_back({1.0, rho});
    parts.push_back({1.0, rho.time_derivative(2)});
  }
  return parts;
}

// support boundaries, where the integrand kinks
std::vector<double> b_breaks(const FourierDensity& rho) {
  std::vector<double> breaks;
  for (const auto& term : rho.terms()) {
    if (term.profile.is_zero()) continue;
    breaks.push_back(term.profile.onset());
    const double e = term.profile.support_end();
    if (std::isfinite(e)) breaks.push_back(e);
  }
  return breaks;
}

} // namespace

double b_functional(const FourierDensity& rho, BVariant variant, double t, double rel_tol) {
  if (t <= rho.onset() || rho.is_zero()) return 0.0;
  const double s = (variant == BVariant::B2_minus) ? -0.5 : 0.5;
  const std::vector<BPart> parts = b_parts(rho, variant);
  auto f = [&](double tau) {
    double v = 0.0;
    for (const auto& p : parts) v += p.w * p.d.sobolev_norm(tau, s);
    return v;
  };
  return integrate(f, 0.0, t, rel_tol, 0.0, b_breaks(rho)).value;
}

std::vector<double> b_functional_grid(const FourierDensity& rho, BVariant variant,
                                      const std::vector<double>& t_grid, double rel_tol) {
  std::vector<double> out(t_grid.size(), 0.0);
  if (rho.is_zero()) return out;
  const double s = (variant == BVariant::B2_minus) ? -0.5 : 0.5;
  const std::vector<BPart> parts = b_parts(rho, variant);
  auto f = [&](double tau) {
    double v = 0.0;
    for (const auto& p : parts) v += p.w * p.d.sobolev_norm(tau, s);
    return v;
  };
  const std::vector<double> breaks = b_breaks(rho);
  double acc = 0.0;
  double prev = 0.0;
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    const double ti = t_grid[i];
    if (ti < prev) throw std::invalid_argument("b_functional_grid: grid must be nondecreasing");
    if (ti > prev && ti > rho.onset())
      acc += integrate(f, prev, ti, rel_tol, 0.0, breaks).value;
    out[i] = acc;
    prev = ti;
  }
  return out;
}

} // namespace rlp
