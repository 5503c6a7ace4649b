#ifndef RLP_SPECFUN_HPP
#define RLP_SPECFUN_HPP

#include <complex>
#include <vector>

// Bessel ladder used by the per-mode symbol and eigenbasis code.
//
// Real cylinder functions J_n, Y_n: n >= 0, x > 0 (J also accepts x = 0).
// Modified functions I_n, K_n and the modified spherical pair i_n, k_n
// accept complex z with Re z > 0. Scaled variants remove the exponential
// factor (e^{-z} I_n, e^{+z} K_n) and are the stable primitives; the plain
// ones are thin wrappers that can overflow for large |Re z|.
//
// Conventions: i_0(z) = sinh(z)/z, k_0(z) = e^{-z}/z,
// Wronskians  I_n'(z)K_n(z) - I_n(z)K_n'(z) = 1/z,
//             i_n(z)k_n'(z) - i_n'(z)k_n(z) = -1/z^2.

namespace rlp {

using cplx = std::complex<double>;

// ---- real Bessel, first kind -------------------------------------------

// J_0(x)..J_nmax(x) in one downward-recurrence pass.
std::vector<double> bessel_j_all(int nmax, double x);
double bessel_j(int n, double x);
double bessel_j_prime(int n, double x);

// ---- real Bessel, second kind ------------------------------------------

std::vector<double> bessel_y_all(int nmax, double x);
double bessel_y(int n, double x);
double bessel_y_prime(int n, double x);

// ---- zeros of J_n --------------------------------------------------------

// j_{n,1} .. j_{n,count}, increasing. Scan with bracketing (zero spacing
// is > 3.1) then bisection + Newton polish.
std::vector<double> bessel_j_zeros(int n, int count);
double bessel_j_zero(int n, int m); // m >= 1

// ---- modified Bessel, complex argument -----------------------------------

// Fills iout[0..nmax] = e^{-z} I_n(z), kout[0..nmax] = e^{+z} K_n(z).
// Either pointer may be null. Requires Re z > 0.
void mod_bessel_ik_scaled(int nmax, cplx z, cplx* iout, cplx* kout);

cplx mod_bessel_i(int n, cplx z);
cplx mod_bessel_k(int n, cplx z);
cplx mod_bessel_i_prime(int n, cplx z);
cplx mod_bessel_k_prime(int n, cplx z);
cplx mod_bessel_i_scaled(int n, cplx z);
cplx mod_bessel_k_scaled(int n, cplx z);

// ---- modified spherical Bessel -------------------------------------------

// Fills iout[0..nmax] = e^{-z} i_n(z), kout[0..nmax] = e^{+z} k_n(z).
void mod_sph_ik_scaled(int nmax, cplx z, cplx* iout, cplx* kout);

cplx mod_sph_i(int n, cplx z);
cplx mod_sph_k(int n, cplx z);
cplx mod_sph_i_prime(int n, cplx z);
cplx mod_sph_k_prime(int n, cplx z);

// ---- Legendre -------------------------------------------------------------

// P_0(x)..P_nmax(x), |x| <= 1.
std::vector<double> legendre_p_all(int nmax, double x);
double legendre_p(int n, double x);

} // namespace rlp

#endif
