#pragma once

// Direct space-time quadrature of the classical retarded layer potentials
// on the circle / sphere of radius a. Nothing here touches the Laplace
// domain, so these evaluators double as independent references for the
// CQ pipeline.

#include <stdexcept>

#include "rlp/fourier_density.hpp"

namespace rlp {

// Observation point sits on the boundary: the retarded kernel is singular
// there and direct quadrature does not apply.
class SingularityError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Point in R^2 or R^3, kept off Gamma by the evaluators.
struct ObservationPoint {
  double x = 0.0, y = 0.0, z = 0.0;
  int dim = 3;

  static ObservationPoint plane(double x, double y);
  static ObservationPoint space(double x, double y, double z);
  double radius() const;
};

// (S*lambda)(x,t) = int_Gamma lambda(y, t - |x-y|) / (4 pi |x-y|) dGamma(y)
double single_layer_3d(const ObservationPoint& x, double t,
                       const FourierDensity& lambda, int quad_order);

// (D*phi)(x,t) = int_Gamma (x-y).nu(y) / (4 pi R^3)
//                   * ( phi(y, t-R) + R phi_t(y, t-R) ) dGamma(y),  R = |x-y|
double double_layer_3d(const ObservationPoint& x, double t,
                       const FourierDensity& phi, int quad_order);

// (S*lambda)(x,t) = 1/(2 pi) int_Gamma int_0^{t-R}
//                      lambda(y,tau) / sqrt((t-tau)^2 - R^2) dtau dGamma(y).
// The inner integral is evaluated after t - tau = R cosh(u), which removes
// the inverse-square-root endpoint singularity.
double single_layer_2d(const ObservationPoint& x, double t,
                       const FourierDensity& lambda, int quad_order);

} // namespace rlp
