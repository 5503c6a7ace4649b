#include "rlp/spectral_wave.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "rlp/quadrature.hpp"
#include "rlp/specfun.hpp"

namespace rlp {

namespace {

constexpr double kPi = 3.14159265358979323846;

// ---------------------------------------------------------------- eigenbases

double disk_normalization(int n, double rho, double root) {
  // || J_n(j r/rho) cos(n th) ||^2 = ang * (rho^2/2) J_{n+1}(j)^2,
  // ang = 2 pi (n = 0) or pi
  const double jp = std::abs(bessel_j(n + 1, root));
  if (n == 0) return 1.0 / (rho * std::sqrt(kPi) * jp);
  return std::sqrt(2.0 / kPi) / (rho * jp);
}

// cross-product condition for the annulus: Neumann at a, Dirichlet at rho.
// Evaluation may overflow far below the first root of high orders; the
// scanner treats those points as carrying no sign information.
std::optional<double> annulus_condition(int n, double xi, double a, double rho) {
  try {
    const double ja = bessel_j_prime(n, xi * a);
    const double ya = bessel_y_prime(n, xi * a);
    const double jr = bessel_j(n, xi * rho);
    const double yr = bessel_y(n, xi * rho);
    const double v = ya * jr - ja * yr;
    if (!std::isfinite(v)) return std::nullopt;
    return v;
  } catch (const std::overflow_error&) {
    return std::nullopt;
  }
}

void sort_by_eigenvalue(std::vector<EigenMode>& modes) {
  std::stable_sort(modes.begin(), modes.end(),
                   [](const EigenMode& p, const EigenMode& q) { return p.lambda < q.lambda; });
}

} // namespace

EigenBasis disk_eigenbasis(double rho, int max_angular, int max_radial) {
  if (rho <= 0.0) throw std::invalid_argument("disk_eigenbasis: rho must be positive");
  if (max_angular < 0 || max_radial < 1)
    throw std::invalid_argument("disk_eigenbasis: need max_angular >= 0, max_radial >= 1");
  EigenBasis basis;
  basis.domain = WaveDomain::Disk;
  basis.a = 0.0;
  basis.rho = rho;
  for (int n = 0; n <= max_angular; ++n) {
    const std::vector<double> roots = bessel_j_zeros(n, max_radial);
    for (int m = 1; m <= max_radial; ++m) {
      EigenMode mode;
      mode.n = n;
      mode.m = m;
      mode.xi = roots[m - 1] / rho;
      mode.lambda = mode.xi * mode.xi;
      mode.norm = disk_normalization(n, rho, roots[m - 1]);
      basis.modes.push_back(mode);
    }
  }
  sort_by_eigenvalue(basis.modes);
  return basis;
}

EigenBasis annulus_mixed_eigenbasis(double a, double rho, int max_angular,
                                    int max_radial) {
  if (!(0.0 < a && a < rho))
    throw std::invalid_argument("annulus_mixed_eigenbasis: need 0 < a < rho");
  if (max_angular < 0 || max_radial < 1)
    throw std::invalid_argument("annulus_mixed_eigenbasis: need max_angular >= 0, max_radial >= 1");

  EigenBasis basis;
  basis.domain = WaveDomain::AnnulusMixed;
  basis.a = a;
  basis.rho = rho;

  const double step = kPi / (rho - a) / 16.0;
  for (int n = 0; n <= max_angular; ++n) {
    // the first root cannot sit below the outer turning point region
    double lo = std::max(1e-3, 0.5 * n / rho);
    std::optional<double> flo = annulus_condition(n, lo, a, rho);
    int found = 0;
    long budget = 400000;
    while (found < max_radial && budget-- > 0) {
      const double hi = lo + step;
      const std::optional<double> fhi = annulus_condition(n, hi, a, rho);
      if (flo && fhi && *flo * *fhi <= 0.0 && *flo != *fhi) {
        double p = lo, q = hi;
        double fp = *flo;
        for (int it = 0; it < 100; ++it) {
          const double mid = 0.5 * (p + q);
          const std::optional<double> fm = annulus_condition(n, mid, a, rho);
          if (!fm) break;
          if (fp * *fm <= 0.0) {
            q = mid;
          } else {
            p = mid;
            fp = *fm;
          }
        }
        const double xi = 0.5 * (p + q);
        EigenMode mode;
        mode.n = n;
        mode.m = ++found;
        mode.xi = xi;
        mode.lambda = xi * xi;
        mode.beta_j = bessel_y_prime(n, xi * a);
        mode.beta_y = -bessel_j_prime(n, xi * a);
        // normalize numerically: ang * int_a^rho R^2 r dr = 1
        auto r2 = [&](double r) {
          const double v = mode.beta_j * bessel_j(n, xi * r) + mode.beta_y * bessel_y(n, xi * r);
          return v * v * r;
        };
        const int panels = 8 + 2 * static_cast<int>(xi * (rho - a) / kPi + 1.0);
        const double mass = integrate_gl(r2, a, rho, panels, 12);
        const double ang = (n == 0) ? 2.0 * kPi : kPi;
        mode.norm = 1.0 / std::sqrt(ang * mass);
        basis.modes.push_back(mode);
      }
      lo = hi;
      flo = fhi;
    }
    if (found < max_radial)
      throw ResolutionError("annulus_mixed_eigenbasis: root bracketing failed; widen the search grid");
  }
  sort_by_eigenvalue(basis.modes);
  return basis;
}

double EigenBasis::radial(std::size_t k, double r) const {
  const EigenMode& mode = modes.at(k);
  double v = mode.beta_j * bessel_j(mode.n, mode.xi * r);
  if (mode.beta_y != 0.0) v += mode.beta_y * bessel_y(mode.n, mode.xi * r);
  return mode.norm * v;
}

double EigenBasis::radial_deriv(std::size_t k, double r) const {
  const EigenMode& mode = modes.at(k);
  double v = mode.beta_j * bessel_j_prime(mode.n, mode.xi * r);
  if (mode.beta_y != 0.0) v += mode.beta_y * bessel_y_prime(mode.n, mode.xi * r);
  return mode.norm * mode.xi * v;
}

double EigenBasis::value(std::size_t k, double r, double theta, bool sine) const {
  const EigenMode& mode = modes.at(k);
  if (sine && mode.n == 0)
    throw std::invalid_argument("EigenBasis::value: no sine flavor for n = 0");
  const double ang = sine ? std::sin(mode.n * theta) : std::cos(mode.n * theta);
  return radial(k, r) * ang;
}

double EigenBasis::poincare_constant() const {
  if (modes.empty()) throw std::logic_error("EigenBasis: empty basis");
  return 1.0 / std::sqrt(modes.front().lambda);
}

// ------------------------------------------------------------ modal algebra

void ModalFunction::add(std::size_t k, TimeProfile p) {
  for (std::size_t i = 0; i < modes.size(); ++i) {
    if (modes[i] == k) {
      profiles[i] = std::move(p);
      return;
    }
  }
  modes.push_back(k);
  profiles.push_back(std::move(p));
}

double ModalFunction::l2_norm(double t) const {
  double acc = 0.0;
  for (const auto& p : profiles) {
    const double c = p(t);
    acc += c * c;
  }
  return std::sqrt(acc);
}

double ModalFunction::h1_seminorm(const EigenBasis& basis, double t) const {
  double acc = 0.0;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    const double c = profiles[i](t);
    acc += basis.modes.at(modes[i]).lambda * c * c;
  }
  return std::sqrt(acc);
}

ModalFunction g_half(const EigenBasis& basis, const ModalFunction& v) {
  ModalFunction out;
  out.modes = v.modes;
  out.profiles.reserve(v.profiles.size());
  for (std::size_t i = 0; i < v.modes.size(); ++i)
    out.profiles.push_back(v.profiles[i].scaled(1.0 / basis.modes.at(v.modes[i]).xi));
  return out;
}

// ----------------------------------------------------------------- Duhamel

namespace {

// absolute-error floor so that oscillatory cancellation does not trigger
// endless refinement on integrals that are essentially zero
double profile_scale(const TimeProfile& g, double t) {
  double s = 0.0;
  for (int i = 0; i <= 32; ++i) s = std::max(s, std::abs(g(t * i / 32.0)));
  return s;
}

std::vector<double> profile_breaks(const TimeProfile& g) {
  std::vector<double> b{g.onset()};
  if (std::isfinite(g.support_end())) b.push_back(g.support_end());
  return b;
}

} // namespace

DuhamelValue duhamel_mode(double omega, const TimeProfile& g, double t, double rel_tol) {
  if (omega <= 0.0) throw std::invalid_argument("duhamel_mode: omega must be positive");
  if (t < 0.0) throw std::invalid_argument("duhamel_mode: negative time");
  DuhamelValue out;
  if (t == 0.0 || g.is_zero() || t <= g.onset()) return out;

  const double floor = 1e-13 * (1.0 + t) * profile_scale(g, t);
  const auto breaks = profile_breaks(g);
  out.alpha = integrate([&](double tau) { return std::sin(omega * (t - tau)) * g(tau); },
                        0.0, t, rel_tol, floor, breaks)
                  .value /
              omega;
  out.alpha_dot = integrate([&](double tau) { return std::cos(omega * (t - tau)) * g(tau); },
                            0.0, t, rel_tol, floor, breaks)
                      .value;
  return out;
}

// ----------------------------------------------------------- wave solutions

namespace {

void check_modal(const EigenBasis& basis, const ModalFunction& f) {
  if (f.modes.size() != f.profiles.size())
    throw std::invalid_argument("ModalFunction: modes/profiles length mismatch");
  for (std::size_t k : f.modes)
    if (k >= basis.modes.size())
      throw std::invalid_argument("ModalFunction: mode index outside the basis");
}

} // namespace

WaveSnapshot strong_solution(const EigenBasis& basis, const ModalFunction& f,
                             double t, double rel_tol) {
  check_modal(basis, f);
  WaveSnapshot snap;
  snap.t = t;
  snap.modes = f.modes;
  snap.u.resize(f.modes.size(), 0.0);
  snap.ut.resize(f.modes.size(), 0.0);
  snap.lap.resize(f.modes.size(), 0.0);

  double l2 = 0.0, grad = 0.0, lap = 0.0;
  for (std::size_t i = 0; i < f.modes.size(); ++i) {
    const EigenMode& mode = basis.modes[f.modes[i]];
    const DuhamelValue d = duhamel_mode(mode.xi, f.profiles[i], t, rel_tol);
    snap.u[i] = d.alpha;
    snap.ut[i] = d.alpha_dot;
    snap.lap[i] = -mode.lambda * d.alpha;
    l2 += d.alpha * d.alpha;
    grad += mode.lambda * d.alpha * d.alpha;
    lap += mode.lambda * mode.lambda * d.alpha * d.alpha;
  }
  snap.l2 = std::sqrt(l2);
  snap.grad = std::sqrt(grad);
  snap.lap_l2 = std::sqrt(lap);

  // truncation guard: the top spectral decile of the basis must carry a
  // negligible share of the Delta u mass
  const std::size_t K = basis.modes.size();
  const double lambda_cut = basis.modes[(9 * (K - 1)) / 10].lambda;
  double tail = 0.0;
  for (std::size_t i = 0; i < f.modes.size(); ++i)
    if (basis.modes[f.modes[i]].lambda >= lambda_cut)
      tail += basis.modes[f.modes[i]].lambda * basis.modes[f.modes[i]].lambda * snap.u[i] * snap.u[i];
  snap.tail_fraction = (lap > 0.0) ? tail / lap : 0.0;
  if (lap > 0.0 && snap.tail_fraction > 1e-12)
    throw ResolutionError("strong_solution: spectral tail mass above threshold; enlarge the basis");
  return snap;
}

WeakSnapshot weak_solution(const EigenBasis& basis, const ModalFunction& f,
                           double t, double rel_tol) {
  check_modal(basis, f);
  // v solves the G^{1/2}-forced problem; u = G^{-1/2} v
  const ModalFunction scaled = g_half(basis, f);

  WeakSnapshot snap;
  snap.t = t;
  snap.modes = f.modes;
  snap.u.resize(f.modes.size(), 0.0);
  snap.ut.resize(f.modes.size(), 0.0);
  snap.w.resize(f.modes.size(), 0.0);

  double grad = 0.0;
  for (std::size_t i = 0; i < f.modes.size(); ++i) {
    const EigenMode& mode = basis.modes[f.modes[i]];
    const DuhamelValue v = duhamel_mode(mode.xi, scaled.profiles[i], t, rel_tol);
    snap.u[i] = mode.xi * v.alpha; // G^{-1/2} on the per-mode coefficient
    grad += mode.lambda * snap.u[i] * snap.u[i];

    const TimeProfile& g = f.profiles[i];
    if (g.is_zero() || t <= g.onset()) continue;
    const double floor = 1e-13 * (1.0 + t) * profile_scale(g, t);
    const auto breaks = profile_breaks(g);
    snap.ut[i] = integrate([&](double tau) { return std::cos(mode.xi * (t - tau)) * g(tau); },
                           0.0, t, rel_tol, floor, breaks)
                     .value;
    // w(t) = int_0^t u = (1/omega^2) int_0^t (1 - cos(omega (t-tau))) g
    snap.w[i] = integrate(
                    [&](double tau) { return (1.0 - std::cos(mode.xi * (t - tau))) * g(tau); },
                    0.0, t, rel_tol, floor, breaks)
                    .value /
                mode.lambda;
  }
  snap.grad = std::sqrt(grad);

  // modal identity Delta w(t) = u_t(t) - int_0^t f
  double res = 0.0;
  for (std::size_t i = 0; i < f.modes.size(); ++i) {
    const EigenMode& mode = basis.modes[f.modes[i]];
    const TimeProfile& g = f.profiles[i];
    double intf = 0.0;
    if (!g.is_zero() && t > g.onset()) {
      const double floor = 1e-13 * (1.0 + t) * profile_scale(g, t);
      intf = integrate([&](double tau) { return g(tau); }, 0.0, t, rel_tol, floor,
                       profile_breaks(g))
                 .value;
    }
    res = std::max(res, std::abs(-mode.lambda * snap.w[i] - (snap.ut[i] - intf)));
  }
  snap.lap_w_residual = res;
  return snap;
}

// ---------------------------------------------------------- steady liftings

namespace {

struct HomPair {
  double i = 0.0, ip = 0.0, k = 0.0, kp = 0.0;
};

// I_n / K_n (circle) or i_n / k_n (sphere) with first derivatives at real
// r > 0, rebuilt from the exponentially scaled pair. K_n(r) overflows for
// small r at high order, so callers working inside Gamma skip it.
HomPair hom_pair(Geometry g, int n, double r, bool need_k = true) {
  std::vector<cplx> iv(n + 2), kv(need_k ? n + 2 : 0);
  cplx* kptr = need_k ? kv.data() : nullptr;
  if (g == Geometry::Circle) {
    mod_bessel_ik_scaled(n + 1, cplx(r, 0.0), iv.data(), kptr);
  } else {
    mod_sph_ik_scaled(n + 1, cplx(r, 0.0), iv.data(), kptr);
  }
  const double er = std::exp(r), emr = std::exp(-r);
  HomPair h;
  h.i = iv[n].real() * er;
  // f'_n = f_{n+1} + (n/z) f_n for I and i; k'_n = -k_{n+1} + (n/z) k_n
  h.ip = iv[n + 1].real() * er + (n / r) * h.i;
  if (need_k) {
    h.k = kv[n].real() * emr;
    h.kp = -kv[n + 1].real() * emr + (n / r) * h.k;
  }
  return h;
}

struct KindTraits {
  bool two_sided = false; // has an interior region
  bool forced = false;    // interior source present
};

KindTraits traits_of(LiftingKind kind) {
  switch (kind) {
    case LiftingKind::SingleLayer: return {true, false};
    case LiftingKind::DoubleLayer: return {true, false};
    case LiftingKind::DoubleLayerModified: return {true, true};
    case LiftingKind::NeumannExterior:
    case LiftingKind::DirichletExterior: return {false, false};
  }
  throw std::logic_error("traits_of: unreachable");
}

// particular solution of (-Delta + 1) u = c y(r) per mode: u = -(c/2) r y'(r)
struct Particular {
  double v = 0.0, dv = 0.0;
};

Particular particular_part(Geometry g, int n, double coef, double r, const HomPair& h) {
  Particular p;
  if (coef == 0.0) return p;
  const double nu = (g == Geometry::Circle) ? double(n) * n : double(n) * (n + 1);
  const double cdim = (g == Geometry::Circle) ? 1.0 : 2.0;
  const double ypp = (nu / (r * r) + 1.0) * h.i - (cdim / r) * h.ip;
  p.v = -0.5 * coef * r * h.ip;
  p.dv = -0.5 * coef * (h.ip + r * ypp);
  return p;
}

double angular_weight(Geometry g, int n) {
  return (g == Geometry::Circle) ? 2.0 * kPi : 4.0 * kPi / (2.0 * n + 1.0);
}

} // namespace

double SteadyLifting::radial(std::size_t q, double r) const {
  const LiftingMode& md = modes.at(q);
  if (r < a) {
    const HomPair h = hom_pair(geom, md.n, r, false);
    return md.inner_i * h.i + particular_part(geom, md.n, md.src_i, r, h).v;
  }
  const HomPair h = hom_pair(geom, md.n, r);
  return md.outer_i * h.i + md.outer_k * h.k;
}

double SteadyLifting::radial_deriv(std::size_t q, double r) const {
  const LiftingMode& md = modes.at(q);
  if (r < a) {
    const HomPair h = hom_pair(geom, md.n, r, false);
    return md.inner_i * h.ip + particular_part(geom, md.n, md.src_i, r, h).dv;
  }
  const HomPair h = hom_pair(geom, md.n, r);
  return md.outer_i * h.ip + md.outer_k * h.kp;
}

SteadyLifting steady_lifting(LiftingKind kind, const FourierDensity& data,
                             double t, double outer_radius) {
  const double a = data.radius();
  if (!(outer_radius > a))
    throw std::invalid_argument("steady_lifting: outer radius must exceed the boundary radius");
  if (data.max_mode() > 128)
    throw std::invalid_argument("steady_lifting: angular order above 128 not supported");

  const KindTraits kt = traits_of(kind);
  SteadyLifting out;
  out.kind = kind;
  out.geom = data.geometry();
  out.a = a;
  out.outer_radius = outer_radius;
  out.t = t;

  // kind-specific data functionals for the recorded ratios
  const double s_data = (kind == LiftingKind::SingleLayer || kind == LiftingKind::NeumannExterior)
                            ? -0.5
                            : 0.5;
  FourierDensity ddot = data;
  if (kind == LiftingKind::DoubleLayerModified) ddot = data.time_derivative(2);
  if (kind == LiftingKind::DoubleLayerModified) {
    out.data_norm = 3.0 * data.sobolev_norm(t, 0.5) + ddot.sobolev_norm(t, 0.5);
    out.lap_data_norm = 4.0 * data.sobolev_norm(t, 0.5) + 2.0 * ddot.sobolev_norm(t, 0.5);
  } else {
    out.data_norm = data.sobolev_norm(t, s_data);
    out.lap_data_norm = out.data_norm;
  }

  const double R = outer_radius;
  double h1 = 0.0, l2 = 0.0, lap = 0.0;

  for (const auto& term : data.terms()) {
    const int n = term.n;
    const double d = term.profile(t);
    LiftingMode md;
    md.n = n;

    const HomPair ha = hom_pair(out.geom, n, a);
    const HomPair hR = hom_pair(out.geom, n, R);

    if (kt.two_sided) {
      // source coefficient: interior lifting of (data'' - data), i.e.
      // psi_n I_n(r)/I_n(a) inside Gamma
      double src = 0.0;
      if (kt.forced) {
        const double psi = ddot.coeff(n, t) - d;
        src = psi / ha.i;
      }
      md.src_i = src;
      const Particular pa = particular_part(out.geom, n, src, a, ha);

      // unknowns (A; B; C): interior A I, exterior B I + C K
      Eigen::Matrix3d M;
      Eigen::Vector3d rhs;
      M << ha.i, -ha.i, -ha.k, // trace jump at a
          ha.ip, -ha.ip, -ha.kp, // flux jump at a
          0.0, hR.i, hR.k; // outer Dirichlet condition
      const double jump_trace = (kind == LiftingKind::SingleLayer) ? 0.0 : -d;
      const double jump_flux = (kind == LiftingKind::SingleLayer) ? d : 0.0;
      rhs << jump_trace - pa.v, jump_flux - pa.dv, 0.0;
      const Eigen::Vector3d sol = M.fullPivLu().solve(rhs);
      md.inner_i = sol(0);
      md.outer_i = sol(1);
      md.outer_k = sol(2);

      const double tr = (md.inner_i * ha.i + pa.v) - (md.outer_i * ha.i + md.outer_k * ha.k);
      const double fl = (md.inner_i * ha.ip + pa.dv) - (md.outer_i * ha.ip + md.outer_k * ha.kp);
      out.trace_residual = std::max(out.trace_residual, std::abs(tr - jump_trace));
      out.flux_residual = std::max(out.flux_residual, std::abs(fl - jump_flux));
    } else {
      Eigen::Matrix2d M;
      Eigen::Vector2d rhs;
      if (kind == LiftingKind::NeumannExterior) {
        M << ha.ip, ha.kp, hR.i, hR.k;
      } else {
        M << ha.i, ha.k, hR.i, hR.k;
      }
      rhs << d, 0.0;
      const Eigen::Vector2d sol = M.fullPivLu().solve(rhs);
      md.outer_i = sol(0);
      md.outer_k = sol(1);

      const double tr = md.outer_i * ha.i + md.outer_k * ha.k;
      const double fl = md.outer_i * ha.ip + md.outer_k * ha.kp;
      if (kind == LiftingKind::NeumannExterior)
        out.flux_residual = std::max(out.flux_residual, std::abs(fl - d));
      else
        out.trace_residual = std::max(out.trace_residual, std::abs(tr - d));
    }
    out.outer_residual =
        std::max(out.outer_residual, std::abs(md.outer_i * hR.i + md.outer_k * hR.k));
    out.modes.push_back(md);

    // per-mode norms; Delta u = u - source
    const double nu = (out.geom == Geometry::Circle) ? double(n) * n : double(n) * (n + 1);
    const std::size_t q = out.modes.size() - 1;
    auto accumulate = [&](double r0, double r1, bool inner_region) {
      auto weight = [&](double r) {
        return (out.geom == Geometry::Circle) ? r : r * r;
      };
      auto u_at = [&](double r) { return out.radial(q, r); };
      auto du_at = [&](double r) { return out.radial_deriv(q, r); };
      auto src_at = [&](double r) {
        if (!inner_region || md.src_i == 0.0) return 0.0;
        return md.src_i * hom_pair(out.geom, n, r, false).i;
      };
      const int panels = 12 + n / 2;
      const double wa = angular_weight(out.geom, n);
      l2 += wa * integrate_gl([&](double r) { const double u = u_at(r); return u * u * weight(r); },
                              r0, r1, panels, 12);
      h1 += wa * integrate_gl(
                     [&](double r) {
                       const double u = u_at(r), du = du_at(r);
                       return (du * du + (nu / (r * r) + 1.0) * u * u) * weight(r);
                     },
                     r0, r1, panels, 12);
      lap += wa * integrate_gl(
                      [&](double r) {
                        const double v = u_at(r) - src_at(r);
                        return v * v * weight(r);
                      },
                      r0, r1, panels, 12);
    };
    if (kt.two_sided) accumulate(0.0, a, true);
    accumulate(a, R, false);
  }

  out.l2 = std::sqrt(l2);
  out.h1 = std::sqrt(h1);
  out.lap = std::sqrt(lap);
  out.ratio = (out.data_norm > 0.0) ? out.h1 / out.data_norm : 0.0;
  out.lap_ratio = (out.lap_data_norm > 0.0) ? out.lap / out.lap_data_norm : 0.0;
  return out;
}

} // namespace rlp
