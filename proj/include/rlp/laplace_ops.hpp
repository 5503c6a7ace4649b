#pragma once

// Laplace-domain fundamental solutions and the layer/boundary operator
// symbols on the circle and sphere, diagonal per Fourier / zonal mode.
//
// Conventions (z = s a, jump = interior - exterior, nu points out of the
// bounded side):
//   circle:  Shat_n(r) = a I_n(s r_<) K_n(s r_>)
//            Dhat_n(r) = z I_n'(z) K_n(s r)   (r > a)
//                        z K_n'(z) I_n(s r)   (r < a)
//   sphere:  Shat_n(r) = s a^2 i_n(s r_<) k_n(s r_>)
//            Dhat_n(r) = s^2 a^2 i_n'(z) k_n(s r)  (r > a)
//                        s^2 a^2 k_n'(z) i_n(s r)  (r < a)
// These satisfy [trace S] = 0, [dnu S] = 1, [trace D] = -1, [dnu D] = 0
// per mode (Wronskian identities). Steklov symbols use the passive sign
// DtN_n = -s K_n'(z)/K_n(z) (resp. -s k_n'/k_n), so Re DtN > 0 on C_+.
//
// Everything is evaluated through the exponentially scaled Bessel pair;
// off-boundary values carry the explicit factor e^{-s|r-a|}.

#include "rlp/fourier_density.hpp"
#include "rlp/specfun.hpp"

namespace rlp {

enum class OperatorKind { S, D, V, K, Kt, W, NtD, DtN };
enum class Side { Interior, Exterior };

const char* kind_name(OperatorKind k);
OperatorKind kind_from_name(const std::string& name);

// E_2 = K_0(s r)/(2 pi);  E_3 = e^{-s r}/(4 pi r)
cplx fundamental_solution(int dim, double r, cplx s);

// Boundary operator symbols (V, K, Kt, W, NtD, DtN), all modes 0..nmax.
void boundary_symbols(Geometry g, OperatorKind kind, int nmax, cplx s, double a,
                      cplx* out);
cplx boundary_symbol(Geometry g, OperatorKind kind, int n, cplx s, double a);

// Potential symbols (kind S or D) at radius r, with optional radial
// derivative. r = a is allowed for S only (the common trace).
void potential_symbols(Geometry g, OperatorKind kind, int nmax, cplx s, double a,
                       double r, cplx* out, cplx* dout = nullptr);
cplx potential_symbol(Geometry g, OperatorKind kind, int n, cplx s, double a, double r);

// One-sided boundary traces of the potentials: deriv = 0 for the Dirichlet
// trace, 1 for the normal derivative.
cplx potential_trace(Geometry g, OperatorKind kind, Side side, int deriv, int n,
                     cplx s, double a);

// Exterior resolvent solutions driven by boundary data on Gamma, per mode:
//   Dirichlet data (trace^+ u = g):  u_n(r) = K_n(s r) / K_n(s a)
//   Neumann data   (dnu^+ u = g):    u_n(r) = K_n(s r) / (s K_n'(s a))
// (spherical k_n on the sphere). out = values, dout = d/dr; needs r >= a.
void exterior_solution_symbols(Geometry g, bool neumann_data, int nmax, cplx s,
                               double a, double r, cplx* out, cplx* dout = nullptr);

// Table row: ||F(s)|| <= C * C_F(Re s) |s|^mu with
// C_F(sigma) = 1/(sigma^p min(1,sigma)^q), non-increasing in sigma.
struct NormBound {
  double mu = 0.0;
  double p = 0.0, q = 0.0;
  double cf(double sigma) const;
};

NormBound table1_bound(OperatorKind k);

// A symbol family bundles geometry, kind and radii into one evaluator.
struct SymbolFamily {
  Geometry geom = Geometry::Circle;
  OperatorKind kind = OperatorKind::V;
  double a = 1.0;
  double r = 1.0; // observation radius, used by S and D only

  cplx eval(int n, cplx s) const;
  void eval_all(int nmax, cplx s, cplx* out) const;
  NormBound bound() const { return table1_bound(kind); }
};

} // namespace rlp
