#include "rlp/retarded_direct.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "rlp/quadrature.hpp"
#include "rlp/specfun.hpp"

namespace rlp {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_inputs(const ObservationPoint& obs, double t, const FourierDensity& rho,
                  Geometry want, int quad_order) {
  if (rho.geometry() != want)
    throw std::invalid_argument("retarded_direct: density geometry does not match evaluator");
  const int want_dim = (want == Geometry::Circle) ? 2 : 3;
  if (obs.dim != want_dim)
    throw std::invalid_argument("retarded_direct: observation point dimension mismatch");
  if (quad_order < 1) throw std::invalid_argument("retarded_direct: quad_order must be >= 1");
  if (t < 0.0) throw std::invalid_argument("retarded_direct: negative time");
  const double a = rho.radius();
  if (std::abs(obs.radius() - a) <= 1e-12 * a)
    throw SingularityError("retarded_direct: observation point lies on the boundary");
}

// Nothing has arrived before dist(x,Gamma) + onset; exact zero there.
bool before_wavefront(const ObservationPoint& obs, double t, const FourierDensity& rho) {
  const double dist = std::abs(obs.radius() - rho.radius());
  return rho.is_zero() || t <= dist + rho.onset();
}

double density_value(const FourierDensity& rho, const std::vector<double>& basis,
                     double tau) {
  double v = 0.0;
  for (const auto& term : rho.terms()) v += term.profile(tau) * basis[term.n];
  return v;
}

// Kink locations of the inner memory integral: u with t - R cosh u = b for
// each profile boundary b (onset / end of support of some term).
std::vector<double> inner_breaks(const FourierDensity& rho, double t, double R,
                                 double u_max) {
  std::vector<double> b;
  for (const auto& term : rho.terms()) {
    for (double edge : {term.profile.onset(), term.profile.support_end()}) {
      if (!std::isfinite(edge)) continue;
      const double arg = (t - edge) / R;
      if (arg <= 1.0) continue;
      const double u = std::acosh(arg);
      if (u > 0.0 && u < u_max) b.push_back(u);
    }
  }
  std::sort(b.begin(), b.end());
  return b;
}

// Composite Gauss-Legendre over [0, hi] split at `breaks`.
double gl_with_breaks(const std::function<double(double)>& f, double hi,
                      const std::vector<double>& breaks, int order) {
  const GaussRule& gl = gauss_legendre(order);
  double lo = 0.0, total = 0.0;
  auto panel = [&](double p, double q) {
    const double mid = 0.5 * (p + q), half = 0.5 * (q - p);
    double s = 0.0;
    for (std::size_t i = 0; i < gl.x.size(); ++i) s += gl.w[i] * f(mid + half * gl.x[i]);
    return half * s;
  };
  for (double b : breaks) {
    total += panel(lo, b);
    lo = b;
  }
  total += panel(lo, hi);
  return total;
}

} // namespace

ObservationPoint ObservationPoint::plane(double px, double py) {
  ObservationPoint p;
  p.x = px;
  p.y = py;
  p.dim = 2;
  return p;
}

ObservationPoint ObservationPoint::space(double px, double py, double pz) {
  ObservationPoint p;
  p.x = px;
  p.y = py;
  p.z = pz;
  p.dim = 3;
  return p;
}

double ObservationPoint::radius() const { return std::sqrt(x * x + y * y + z * z); }

// Product rule on the sphere: Gauss-Legendre in cos(theta), periodic
// trapezoid in azimuth. `eval(y..., R)` is the retarded integrand without
// the surface measure; the Legendre table at the node's polar angle is
// maintained for the density.
namespace {

template <class F>
double sphere_quadrature(const ObservationPoint& obs, const FourierDensity& rho,
                         int order, F&& eval) {
  const double a = rho.radius();
  const int nmax = std::max(rho.max_mode(), 0);
  const GaussRule& gl = gauss_legendre(order);
  const int nphi = std::max(4, 2 * order);

  double sum = 0.0;
  for (std::size_t i = 0; i < gl.x.size(); ++i) {
    const double c = gl.x[i]; // cos(theta) of the surface node
    const double st = std::sqrt(std::max(0.0, 1.0 - c * c));
    const std::vector<double> pn = legendre_p_all(nmax, c);
    double ring = 0.0;
    for (int j = 0; j < nphi; ++j) {
      const double phi = 2.0 * kPi * j / nphi;
      const double yx = a * st * std::cos(phi);
      const double yy = a * st * std::sin(phi);
      const double yz = a * c;
      const double dx = obs.x - yx, dy = obs.y - yy, dz = obs.z - yz;
      const double R = std::sqrt(dx * dx + dy * dy + dz * dz);
      ring += eval(pn, dx, dy, dz, yx, yy, yz, R);
    }
    sum += gl.w[i] * ring * (2.0 * kPi / nphi);
  }
  return sum * a * a; // dGamma = a^2 d(cos theta) d(phi)
}

} // namespace

double single_layer_3d(const ObservationPoint& obs, double t,
                       const FourierDensity& lambda, int quad_order) {
  check_inputs(obs, t, lambda, Geometry::Sphere, quad_order);
  if (before_wavefront(obs, t, lambda)) return 0.0;
  return sphere_quadrature(
      obs, lambda, quad_order,
      [&](const std::vector<double>& pn, double, double, double, double, double,
          double, double R) {
        return density_value(lambda, pn, t - R) / (4.0 * kPi * R);
      });
}

double double_layer_3d(const ObservationPoint& obs, double t,
                       const FourierDensity& phi, int quad_order) {
  check_inputs(obs, t, phi, Geometry::Sphere, quad_order);
  if (before_wavefront(obs, t, phi)) return 0.0;
  const FourierDensity phi_t = phi.time_derivative(1);
  const double a = phi.radius();
  return sphere_quadrature(
      obs, phi, quad_order,
      [&](const std::vector<double>& pn, double dx, double dy, double dz, double yx,
          double yy, double yz, double R) {
        const double dot_nu = (dx * yx + dy * yy + dz * yz) / a;
        const double tau = t - R;
        return dot_nu / (4.0 * kPi * R * R * R) *
               (density_value(phi, pn, tau) + R * density_value(phi_t, pn, tau));
      });
}

double single_layer_2d(const ObservationPoint& obs, double t,
                       const FourierDensity& lambda, int quad_order) {
  check_inputs(obs, t, lambda, Geometry::Circle, quad_order);
  if (before_wavefront(obs, t, lambda)) return 0.0;

  const double a = lambda.radius();
  const int nmax = std::max(lambda.max_mode(), 0);
  const int nalpha = std::max(8, 4 * quad_order);
  std::vector<double> basis(nmax + 1);

  double sum = 0.0;
  for (int j = 0; j < nalpha; ++j) {
    const double alpha = 2.0 * kPi * j / nalpha;
    const double dx = obs.x - a * std::cos(alpha);
    const double dy = obs.y - a * std::sin(alpha);
    const double R = std::sqrt(dx * dx + dy * dy);
    if (t <= R + lambda.onset()) continue;
    for (int n = 0; n <= nmax; ++n) basis[n] = std::cos(n * alpha);
    const double u_max = std::acosh(t / R);
    const auto breaks = inner_breaks(lambda, t, R, u_max);
    sum += gl_with_breaks(
        [&](double u) { return density_value(lambda, basis, t - R * std::cosh(u)); },
        u_max, breaks, quad_order);
  }
  // outer trapezoid weight a * 2 pi / nalpha and the 1/(2 pi) prefactor
  return sum * a / nalpha;
}

} // namespace rlp
