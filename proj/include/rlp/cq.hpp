#pragma once

// Convolution quadrature: turns a Laplace-domain symbol F(s) into causal
// convolution weights at step dt, by sampling F at delta(zeta)/dt over a
// circular contour and discrete Fourier inversion. delta is the generating
// function of the BDF method: 1-z (BDF1) or 3/2 - 2z + z^2/2 (BDF2).

#include <functional>
#include <vector>

#include "rlp/fourier_density.hpp"
#include "rlp/laplace_ops.hpp"

namespace rlp {

enum class CQMethod { BDF1, BDF2 };

cplx bdf_delta(CQMethod m, cplx zeta);

struct CQWeights {
  double dt = 0.0;
  int steps = 0; // N: weights w[0..N]
  CQMethod method = CQMethod::BDF2;
  std::vector<cplx> w;
};

// Contour radius rho = eps^{1/(2N)}: balances the rho^L aliasing error
// against the rho^{-N} roundoff amplification, giving ~sqrt(eps) accuracy.
CQWeights cq_weights(const std::function<cplx(cplx)>& F, double dt, int N, CQMethod m);

// All modes in one sweep: F_all(s, out) fills out[0..nmax]. One symbol
// evaluation per contour point serves every mode.
std::vector<CQWeights> cq_weights_modes(const std::function<void(cplx, cplx*)>& F_all,
                                        int nmax, double dt, int N, CQMethod m);

// out[j] = sum_{k<=j} w[k] g[j-k]  (causal; g[0] is the sample at t=0)
std::vector<cplx> cq_convolve(const CQWeights& w, const std::vector<cplx>& g);
std::vector<cplx> cq_convolve(const CQWeights& w, const std::vector<double>& g);

// Per-mode time series of (F * density_coeff)(j dt) for one symbol family.
struct ModeSeries {
  Geometry geom = Geometry::Circle;
  double a = 1.0;
  double dt = 0.0;
  int steps = 0;
  std::vector<int> modes;
  std::vector<std::vector<cplx>> series; // series[i][j], mode modes[i], time j*dt

  // 2 pi a sum_n (1+n^2)^s |c_n|^2 at time step j, with the same fixed
  // Fourier weights FourierDensity::sobolev_norm uses
  double sobolev_norm_at(int j, double s_exp) const;
  // sum of mode values at step j (the field at theta = 0 / the north pole)
  double value_at(int j) const;
};

ModeSeries evaluate_potential(const SymbolFamily& fam, const FourierDensity& rho,
                              double dt, int N, CQMethod m);

// power-of-two FFT, in place; sign = -1 forward, +1 inverse (unscaled)
void fft_pow2(std::vector<cplx>& x, int sign);

} // namespace rlp
