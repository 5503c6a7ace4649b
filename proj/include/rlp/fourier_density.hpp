#pragma once

// Causal boundary densities on the circle or sphere, represented as finite
// Fourier (2D) / zonal spherical-harmonic (3D) sums with TimeProfile
// coefficients. Norms use the fixed Fourier weights
//   ||rho(t)||^2_{H^s} = 2 pi a sum_n (1+n^2)^s |c_n(t)|^2 ,  s in {-1/2, 0, 1/2}.

#include <vector>

#include "rlp/time_profile.hpp"

namespace rlp {

enum class Geometry { Circle, Sphere };

struct DensityTerm {
  int n = 0;
  TimeProfile profile;
};

class FourierDensity {
 public:
  FourierDensity(Geometry g, double radius);

  // overwrites any previous profile on mode n
  void set_mode(int n, TimeProfile p);

  Geometry geometry() const { return geom_; }
  double radius() const { return a_; }
  const std::vector<DensityTerm>& terms() const { return terms_; }
  bool is_zero() const;

  double coeff(int n, double t) const;
  int max_mode() const;

  FourierDensity time_derivative(int order) const;
  FourierDensity scaled(double alpha) const;

  // earliest onset over terms; 0 for the empty density
  double onset() const;
  // latest support end over terms; +inf if any term has unbounded support
  double support_end() const;

  double sobolev_norm(double t, double s) const;

 private:
  Geometry geom_;
  double a_;
  std::vector<DensityTerm> terms_;
};

enum class BVariant { B2_minus, B2_plus, B4_plus };

// Time integral over [0, t] of the weighted Sobolev norms:
//   B2_minus: ||rho||_{-1/2} + ||rho''||_{-1/2}
//   B2_plus : ||rho||_{+1/2} + ||rho''||_{+1/2}
//   B4_plus : 4||rho||_{+1/2} + 5||rho''||_{+1/2} + ||rho''''||_{+1/2}
double b_functional(const FourierDensity& rho, BVariant variant, double t,
                    double rel_tol = 1e-8);

// Cumulative values of the same integral on a nondecreasing time grid,
// integrating each segment once (avoids O(n^2) work for norm histories).
std::vector<double> b_functional_grid(const FourierDensity& rho, BVariant variant,
                                      const std::vector<double>& t_grid,
                                      double rel_tol = 1e-8);

} // namespace rlp
