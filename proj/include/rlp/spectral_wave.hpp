#pragma once

// Spectral solver for the forced wave equation u'' = Delta u + f with zero
// initial data, on the disk (Dirichlet) and on the annulus with Neumann
// inner / Dirichlet outer boundary. Everything is diagonal in an explicit
// Bessel eigenbasis: per-mode Duhamel formulas, strong and weak solutions,
// the G^{1/2} regularity shift, and the steady transmission liftings
// -Delta u + u = rhs that feed the evolution-problem bounds.

#include <cstddef>
#include <vector>

#include "rlp/fourier_density.hpp"
#include "rlp/time_profile.hpp"

namespace rlp {

enum class WaveDomain { Disk, AnnulusMixed };

struct EigenMode {
  int n = 0;           // angular order
  int m = 0;           // radial index, 1-based
  double lambda = 0.0; // eigenvalue of -Delta
  double xi = 0.0;     // sqrt(lambda)
  double norm = 0.0;   // L2 normalization of norm * R(xi r) * {cos,sin}(n theta)
  // radial factor R(r) = beta_j J_n(xi r) + beta_y Y_n(xi r)
  double beta_j = 1.0, beta_y = 0.0;
};

struct EigenBasis {
  WaveDomain domain = WaveDomain::Disk;
  double a = 0.0;   // inner radius, 0 for the disk
  double rho = 1.0; // outer radius
  std::vector<EigenMode> modes; // sorted by eigenvalue, non-decreasing

  double radial(std::size_t k, double r) const;
  double radial_deriv(std::size_t k, double r) const;
  // full eigenfunction; the sine flavor exists for n >= 1 only
  double value(std::size_t k, double r, double theta, bool sine = false) const;
  // Poincare-Friedrichs constant 1/sqrt(lambda_min)
  double poincare_constant() const;
};

EigenBasis disk_eigenbasis(double rho, int max_angular, int max_radial);
EigenBasis annulus_mixed_eigenbasis(double a, double rho, int max_angular,
                                    int max_radial);

// Coefficients on an eigenbasis; modes not listed are zero.
struct ModalFunction {
  std::vector<std::size_t> modes; // indices into EigenBasis::modes
  std::vector<TimeProfile> profiles;

  void add(std::size_t k, TimeProfile p);
  double l2_norm(double t) const; // basis is orthonormal
  double h1_seminorm(const EigenBasis& basis, double t) const;
};

// alpha(t) = int_0^t sin(omega (t-tau))/omega g(tau) dtau and its
// derivative; solves alpha'' + omega^2 alpha = g, alpha(0)=alpha'(0)=0.
struct DuhamelValue {
  double alpha = 0.0;
  double alpha_dot = 0.0;
};
DuhamelValue duhamel_mode(double omega, const TimeProfile& g, double t,
                          double rel_tol = 1e-10);

// Snapshot of the strong solution: coefficients of u, u_t, Delta u aligned
// with `modes`, plus the Parseval norms sqrt(sum c^2), sqrt(sum lambda c^2),
// sqrt(sum lambda^2 c^2).
struct WaveSnapshot {
  double t = 0.0;
  std::vector<std::size_t> modes;
  std::vector<double> u, ut, lap;
  double l2 = 0.0, grad = 0.0, lap_l2 = 0.0;
  double tail_fraction = 0.0; // share of sum lambda^2 c^2 in the top spectral decile
};

WaveSnapshot strong_solution(const EigenBasis& basis, const ModalFunction& f,
                             double t, double rel_tol = 1e-10);

// Weak route for L2-in-space forcing: v solves the problem forced by
// G^{1/2} f, u := G^{-1/2} v. Also returns the antiderivative
// w(t) = int_0^t u, which satisfies Delta w(t) = u_t(t) - int_0^t f mode
// by mode; the largest residual of that identity is reported.
struct WeakSnapshot {
  double t = 0.0;
  std::vector<std::size_t> modes;
  std::vector<double> u, ut, w;
  double grad = 0.0;
  double lap_w_residual = 0.0;
};

WeakSnapshot weak_solution(const EigenBasis& basis, const ModalFunction& f,
                           double t, double rel_tol = 1e-10);

// G^{1/2}: coefficient map c_k -> lambda_k^{-1/2} c_k. Isometric from the
// lambda^{s} weighted norm to the lambda^{s+1} one on truncations.
ModalFunction g_half(const EigenBasis& basis, const ModalFunction& v);

// Steady transmission liftings on the ball B = B(0, outer_radius) cut by
// the circle / sphere Gamma of the data's radius; all solve
// -Delta u + u = source per angular mode with modified-Bessel fundamental
// systems and vanish on the outer boundary.
//
//   SingleLayer         [dnu u] = data, [trace u] = 0            (two-sided)
//   DoubleLayer         [trace u] = -data, [dnu u] = 0           (two-sided)
//   NeumannExterior     dnu^+ u = data on Gamma                  (outside only)
//   DirichletExterior   trace^+ u = data on Gamma                (outside only)
//   DoubleLayerModified as DoubleLayer but forced by the interior
//                       lifting of (data'' - data)
enum class LiftingKind {
  SingleLayer,
  DoubleLayer,
  NeumannExterior,
  DirichletExterior,
  DoubleLayerModified
};

struct LiftingMode {
  int n = 0;
  // u = inner_i I_n(r) inside Gamma; outer_i I_n(r) + outer_k K_n(r) outside
  double inner_i = 0.0, outer_i = 0.0, outer_k = 0.0;
  // interior source coefficient: -Delta u + u = src_i I_n(r) for r < a
  double src_i = 0.0;
};

struct SteadyLifting {
  LiftingKind kind = LiftingKind::SingleLayer;
  Geometry geom = Geometry::Circle;
  double a = 0.0, outer_radius = 0.0, t = 0.0;
  std::vector<LiftingMode> modes;

  double h1 = 0.0;  // || u ||_{1, B \ Gamma}
  double l2 = 0.0;
  double lap = 0.0; // || Delta u ||_{L2(B \ Gamma)}
  // data functional matching the kind's a-priori bound, and realized ratios
  double data_norm = 0.0, lap_data_norm = 0.0;
  double ratio = 0.0, lap_ratio = 0.0;
  double trace_residual = 0.0, flux_residual = 0.0, outer_residual = 0.0;

  // radial factor of modes[q] at radius r (0 inside Gamma for the
  // exterior-only kinds)
  double radial(std::size_t q, double r) const;
  double radial_deriv(std::size_t q, double r) const;
};

SteadyLifting steady_lifting(LiftingKind kind, const FourierDensity& data,
                             double t, double outer_radius);

} // namespace rlp
