#include "rlp/specfun.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace rlp {

namespace {

constexpr double kEulerGamma = 0.57721566490153286060651209008240;

void require(bool ok, const char* msg) {
  if (!ok) throw std::domain_error(msg);
}

// Start index for downward (Miller) recurrences: far enough above the
// turning point that the minimal solution has decayed by ~1e-18.
int miller_start(int nmax, double scale) {
  const double s = std::max(scale, 1.0);
  return std::max(nmax, int(std::ceil(s))) + 20 + int(std::ceil(15.5 * std::cbrt(s)));
}

} // namespace

// ---- J_n ------------------------------------------------------------------

std::vector<double> bessel_j_all(int nmax, double x) {
  require(nmax >= 0, "bessel_j: n < 0");
  require(x >= 0.0, "bessel_j: x < 0");
  require(x <= 2.0e5, "bessel_j: x out of supported range");
  std::vector<double> out(nmax + 1, 0.0);
  if (x == 0.0) {
    out[0] = 1.0;
    return out;
  }
  if (x < 1e-6) {
    // two-term series; avoids 2k/x blowup in the recurrence
    double t = 1.0;
    for (int n = 0; n <= nmax; ++n) {
      out[n] = t * (1.0 - 0.25 * x * x / (n + 1.0));
      t *= 0.5 * x / (n + 1.0);
    }
    return out;
  }
  const int M = miller_start(nmax, x);
  double jp = 0.0, jj = 1e-30, norm = 0.0;
  for (int k = M; k >= 1; --k) {
    double jm = (2.0 * k / x) * jj - jp;
    jp = jj;
    jj = jm;
    const int idx = k - 1; // jj now holds J_{k-1} (unnormalized)
    if (idx <= nmax) out[idx] = jj;
    if (idx >= 2 && idx % 2 == 0) norm += 2.0 * jj;
    if (std::abs(jj) > 1e250) {
      jj *= 1e-250;
      jp *= 1e-250;
      norm *= 1e-250;
      for (double& v : out) v *= 1e-250;
    }
  }
  norm += jj; // J_0 contribution
  for (double& v : out) v /= norm;
  return out;
}

double bessel_j(int n, double x) { return bessel_j_all(n, x)[n]; }

double bessel_j_prime(int n, double x) {
  if (n == 0) return -bessel_j(1, x);
  auto j = bessel_j_all(n + 1, x);
  return 0.5 * (j[n - 1] - j[n + 1]);
}

// ---- Y_n ------------------------------------------------------------------

std::vector<double> bessel_y_all(int nmax, double x) {
  require(nmax >= 0, "bessel_y: n < 0");
  require(x > 0.0, "bessel_y: x <= 0");
  require(x <= 5.0e4, "bessel_y: x out of supported range");
  // Y_0 and Y_0' from the Neumann series over J_{2k}, then upward recurrence.
  const int Mser = int(std::ceil(x)) + 12 + int(std::ceil(9.0 * std::cbrt(std::max(x, 1.0))));
  auto j = bessel_j_all(std::max(Mser + 1, nmax + 1), x);
  double s0 = 0.0, s1 = 0.0;
  double sgn = -1.0;
  for (int k = 1; 2 * k + 1 < int(j.size()); ++k) {
    s0 += sgn * j[2 * k] / k;
    s1 += sgn * 0.5 * (j[2 * k - 1] - j[2 * k + 1]) / k;
    sgn = -sgn;
  }
  const double lg = std::log(0.5 * x) + kEulerGamma;
  const double y0 = M_2_PI * (lg * j[0] - 2.0 * s0);
  const double y0p = M_2_PI * (lg * (-j[1]) + j[0] / x - 2.0 * s1);
  std::vector<double> out(nmax + 1);
  out[0] = y0;
  if (nmax >= 1) out[1] = -y0p;
  for (int k = 1; k < nmax; ++k) {
    out[k + 1] = (2.0 * k / x) * out[k] - out[k - 1];
    if (std::abs(out[k + 1]) > 1e290)
      throw std::overflow_error("bessel_y: order too deep in evanescent regime");
  }
  return out;
}

double bessel_y(int n, double x) { return bessel_y_all(n, x)[n]; }

double bessel_y_prime(int n, double x) {
  auto y = bessel_y_all(n + 1, x);
  if (n == 0) return -y[1];
  return 0.5 * (y[n - 1] - y[n + 1]);
}

// ---- zeros of J_n ----------------------------------------------------------

std::vector<double> bessel_j_zeros(int n, int count) {
  require(n >= 0, "bessel_j_zeros: n < 0");
  require(count >= 1, "bessel_j_zeros: count < 1");
  require(n <= 200 && count <= 2000, "bessel_j_zeros: out of supported range");
  std::vector<double> zeros;
  zeros.reserve(count);
  // J_n > 0 on (0, j_{n,1}) and j_{n,1} > n; successive zeros are > 3.1 apart,
  // so a 0.5 step cannot skip a sign change.
  const double step = 0.5;
  double lo = (n == 0) ? 0.5 : n + 0.01;
  double flo = bessel_j(n, lo);
  while (int(zeros.size()) < count) {
    double hi = lo + step;
    double fhi = bessel_j(n, hi);
    if ((flo < 0.0) != (fhi < 0.0)) {
      double a = lo, b = hi, fa = flo;
      for (int it = 0; it < 12; ++it) {
        double m = 0.5 * (a + b), fm = bessel_j(n, m);
        if ((fa < 0.0) != (fm < 0.0)) b = m;
        else { a = m; fa = fm; }
      }
      double r = 0.5 * (a + b);
      for (int it = 0; it < 8; ++it) {
        auto jv = bessel_j_all(n + 1, r);
        const double f = jv[n];
        const double fp = (n == 0) ? -jv[1] : jv[n - 1] - (n / r) * jv[n];
        const double dr = f / fp;
        r -= dr;
        if (r <= a || r >= b) { r = 0.5 * (a + b); break; }
        if (std::abs(dr) < 1e-14 * r) break;
      }
      zeros.push_back(r);
    }
    lo = hi;
    flo = fhi;
  }
  return zeros;
}

double bessel_j_zero(int n, int m) {
  require(m >= 1, "bessel_j_zero: m < 1");
  return bessel_j_zeros(n, m)[m - 1];
}

// ---- modified Bessel, complex ----------------------------------------------

namespace {

void check_z(cplx z) {
  require(z.real() > 0.0, "modified Bessel: Re z must be > 0");
  require(std::abs(z) >= 1e-8 && std::abs(z) <= 1e7,
          "modified Bessel: |z| out of supported range");
}

// e^{-z} I_n(z) by the uniform asymptotic sum with the second exponential
// retained (it matters near the imaginary axis). Valid for n^2 <= |z|/2,
// |z| >= 40.
cplx i_scaled_asymptotic(int n, cplx z) {
  const double mu = 4.0 * double(n) * double(n);
  cplx s1(1.0, 0.0), s2(1.0, 0.0), t(1.0, 0.0);
  for (int k = 1; k <= 60; ++k) {
    const double d = 2.0 * k - 1.0;
    t *= (mu - d * d) / (8.0 * k * z);
    s1 += (k % 2 ? -t : t);
    s2 += t;
    if (std::abs(t) < 1e-18 * std::abs(s1)) break;
  }
  const cplx pm = (z.imag() >= 0.0) ? cplx(0.0, 1.0) : cplx(0.0, -1.0);
  const double parity = (n % 2 == 0) ? 1.0 : -1.0;
  return (s1 + parity * pm * std::exp(-2.0 * z) * s2) / std::sqrt(2.0 * M_PI * z);
}

// Fills out[0..nmax] with e^{-z} I_n(z) via downward recurrence normalized by
// \hat I_0 + 2 sum \hat I_k = 1.
void i_scaled_all(int nmax, cplx z, cplx* out) {
  const double az = std::abs(z);
  if (az >= 40.0 && double(nmax) * nmax <= 0.5 * az) {
    for (int n = 0; n <= nmax; ++n) out[n] = i_scaled_asymptotic(n, z);
    return;
  }
  const int M = miller_start(nmax, az);
  cplx ip(0.0, 0.0), ii(1e-30, 0.0), norm(0.0, 0.0);
  for (int k = M; k >= 1; --k) {
    cplx im = ii * (2.0 * k / z) + ip;
    ip = ii;
    ii = im;
    const int idx = k - 1;
    if (idx <= nmax) out[idx] = ii;
    if (idx >= 1) norm += 2.0 * ii;
    if (std::abs(ii.real()) + std::abs(ii.imag()) > 1e250) {
      ii *= 1e-250;
      ip *= 1e-250;
      norm *= 1e-250;
      for (int q = std::min(idx, nmax); q <= nmax; ++q) out[q] *= 1e-250;
    }
  }
  norm += ii;
  for (int q = 0; q <= nmax; ++q) out[q] /= norm;
}

// Temme/Thompson-Barnett CF2 at order 0: returns scaled K_0, K_1.
void k01_cf2(cplx z, cplx& k0, cplx& k1) {
  cplx b = 2.0 * (1.0 + z);
  cplx d = 1.0 / b;
  cplx h = d, delh = d;
  cplx q1(0.0, 0.0), q2(1.0, 0.0);
  const double a1 = 0.25;
  cplx q(a1, 0.0), c(a1, 0.0);
  double a = -a1;
  cplx s = 1.0 + q * delh;
  bool ok = false;
  for (int i = 1; i <= 40000; ++i) {
    a -= 2.0 * i;
    c = -a * c / (i + 1.0);
    cplx qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    cplx dels = q * delh;
    s += dels;
    if (std::abs(dels) <= 1e-16 * std::abs(s)) { ok = true; break; }
  }
  if (!ok) throw std::runtime_error("modified Bessel K: CF2 did not converge");
  h *= a1;
  k0 = std::sqrt(M_PI / (2.0 * z)) / s;
  k1 = k0 * (z + 0.5 - h) / z;
}

// Power-series K_0, K_1 (unscaled has no overflow risk for |z| <= 2.5);
// returns the scaled pair.
void k01_series(cplx z, cplx& k0s, cplx& k1s) {
  const cplx z2 = 0.25 * z * z;
  cplx i0(1.0, 0.0), i1(0.5 * z);
  cplx term(1.0, 0.0);
  cplx sum0(0.0, 0.0), sum1(0.0, 0.0);
  double hk = 0.0;
  // sum0 = sum_{k>=1} H_k (z^2/4)^k / (k!)^2
  // sum1 = sum_{k>=0} (psi(k+1)+psi(k+2)) (z^2/4)^k / (k! (k+1)!)
  cplx t1(1.0, 0.0);
  sum1 += (-2.0 * kEulerGamma + 1.0) * t1; // psi(1)+psi(2) = -2g+1
  for (int k = 1; k <= 40; ++k) {
    term *= z2 / double(k * k);
    hk += 1.0 / k;
    sum0 += hk * term;
    i0 += term;
    t1 *= z2 / double(k * (k + 1));
    const double psis = -2.0 * kEulerGamma + 2.0 * hk + 1.0 / (k + 1.0);
    sum1 += psis * t1;
    i1 += 0.5 * z * term / (k + 1.0);
    if (std::abs(term) < 1e-20) break;
  }
  const cplx lg = std::log(0.5 * z);
  const cplx k0 = -(lg + kEulerGamma) * i0 + sum0;
  const cplx k1 = 1.0 / z + lg * i1 - 0.25 * z * sum1;
  const cplx ez = std::exp(z);
  k0s = k0 * ez;
  k1s = k1 * ez;
}

} // namespace

void mod_bessel_ik_scaled(int nmax, cplx z, cplx* iout, cplx* kout) {
  require(nmax >= 0 && nmax <= 400, "modified Bessel: order out of range");
  check_z(z);
  if (iout) i_scaled_all(nmax, z, iout);
  if (kout) {
    cplx k0, k1;
    if (std::abs(z) < 2.5) k01_series(z, k0, k1);
    else k01_cf2(z, k0, k1);
    kout[0] = k0;
    if (nmax >= 1) kout[1] = k1;
    for (int n = 1; n < nmax; ++n) kout[n + 1] = kout[n - 1] + (2.0 * n / z) * kout[n];
  }
}

cplx mod_bessel_i_scaled(int n, cplx z) {
  std::vector<cplx> buf(n + 1);
  mod_bessel_ik_scaled(n, z, buf.data(), nullptr);
  return buf[n];
}

cplx mod_bessel_k_scaled(int n, cplx z) {
  std::vector<cplx> buf(n + 1);
  mod_bessel_ik_scaled(n, z, nullptr, buf.data());
  return buf[n];
}

cplx mod_bessel_i(int n, cplx z) { return mod_bessel_i_scaled(n, z) * std::exp(z); }
cplx mod_bessel_k(int n, cplx z) { return mod_bessel_k_scaled(n, z) * std::exp(-z); }

cplx mod_bessel_i_prime(int n, cplx z) {
  std::vector<cplx> buf(n + 2);
  mod_bessel_ik_scaled(n + 1, z, buf.data(), nullptr);
  const cplx d = (n == 0) ? buf[1] : 0.5 * (buf[n - 1] + buf[n + 1]);
  return d * std::exp(z);
}

cplx mod_bessel_k_prime(int n, cplx z) {
  std::vector<cplx> buf(n + 2);
  mod_bessel_ik_scaled(n + 1, z, nullptr, buf.data());
  const cplx d = (n == 0) ? -buf[1] : -0.5 * (buf[n - 1] + buf[n + 1]);
  return d * std::exp(-z);
}

// ---- modified spherical ------------------------------------------------------

namespace {

// exp(z)-1 without cancellation for small |z|.
cplx cexpm1(cplx z) {
  if (std::abs(z) > 0.5) return std::exp(z) - 1.0;
  cplx sum(0.0, 0.0), term(1.0, 0.0);
  for (int k = 1; k <= 30; ++k) {
    term *= z / double(k);
    sum += term;
    if (std::abs(term) < 1e-20 * std::abs(sum)) break;
  }
  return sum;
}

} // namespace

void mod_sph_ik_scaled(int nmax, cplx z, cplx* iout, cplx* kout) {
  require(nmax >= 0 && nmax <= 400, "modified spherical Bessel: order out of range");
  check_z(z);
  const cplx em2z = std::exp(-2.0 * z);
  if (kout) {
    kout[0] = 1.0 / z;
    if (nmax >= 1) kout[1] = 1.0 / z + 1.0 / (z * z);
    for (int n = 1; n < nmax; ++n)
      kout[n + 1] = kout[n - 1] + ((2.0 * n + 1.0) / z) * kout[n];
  }
  if (iout) {
    const cplx i0 = -cexpm1(-2.0 * z) / (2.0 * z);
    if (nmax == 0) {
      iout[0] = i0;
      return;
    }
    const cplx i1 = ((z - 1.0) + (z + 1.0) * em2z) / (2.0 * z * z);
    const int M = miller_start(nmax, std::abs(z));
    cplx ip(0.0, 0.0), ii(1e-30, 0.0);
    std::vector<cplx> raw(nmax + 1);
    double rescale_log = 0.0;
    (void)rescale_log;
    for (int k = M; k >= 1; --k) {
      cplx im = ip + ((2.0 * k + 1.0) / z) * ii;
      ip = ii;
      ii = im;
      const int idx = k - 1;
      if (idx <= nmax) raw[idx] = ii;
      if (idx + 1 <= nmax) raw[idx + 1] = ip;
      if (std::abs(ii.real()) + std::abs(ii.imag()) > 1e250) {
        ii *= 1e-250;
        ip *= 1e-250;
        for (int q = std::min(idx, nmax); q <= nmax; ++q) raw[q] *= 1e-250;
      }
    }
    // normalize against whichever closed-form value is larger
    cplx scale;
    if (std::abs(i0) >= std::abs(i1)) scale = i0 / raw[0];
    else scale = i1 / raw[1];
    for (int q = 0; q <= nmax; ++q) iout[q] = raw[q] * scale;
  }
}

cplx mod_sph_i(int n, cplx z) {
  std::vector<cplx> buf(n + 1);
  mod_sph_ik_scaled(n, z, buf.data(), nullptr);
  return buf[n] * std::exp(z);
}

cplx mod_sph_k(int n, cplx z) {
  std::vector<cplx> buf(n + 1);
  mod_sph_ik_scaled(n, z, nullptr, buf.data());
  return buf[n] * std::exp(-z);
}

cplx mod_sph_i_prime(int n, cplx z) {
  // i_n' = i_{n-1} - ((n+1)/z) i_n, with i_{-1}(z) = cosh(z)/z
  std::vector<cplx> buf(std::max(n, 1) + 1);
  mod_sph_ik_scaled(std::max(n, 1), z, buf.data(), nullptr);
  cplx prev;
  if (n == 0) prev = (1.0 + std::exp(-2.0 * z)) / (2.0 * z); // e^{-z} cosh z / z
  else prev = buf[n - 1];
  return (prev - ((n + 1.0) / z) * buf[n]) * std::exp(z);
}

cplx mod_sph_k_prime(int n, cplx z) {
  // k_n' = -k_{n-1} - ((n+1)/z) k_n, with k_{-1} = k_0
  std::vector<cplx> buf(std::max(n, 1) + 1);
  mod_sph_ik_scaled(std::max(n, 1), z, nullptr, buf.data());
  const cplx prev = (n == 0) ? buf[0] : buf[n - 1];
  return (-prev - ((n + 1.0) / z) * buf[n]) * std::exp(-z);
}

// ---- Legendre ---------------------------------------------------------------

std::vector<double> legendre_p_all(int nmax, double x) {
  require(nmax >= 0, "legendre_p: n < 0");
  require(std::abs(x) <= 1.0 + 1e-12, "legendre_p: |x| > 1");
  std::vector<double> out(nmax + 1);
  out[0] = 1.0;
  if (nmax >= 1) out[1] = x;
  for (int k = 1; k < nmax; ++k)
    out[k + 1] = ((2.0 * k + 1.0) * x * out[k] - k * out[k - 1]) / (k + 1.0);
  return out;
}

double legendre_p(int n, double x) { return legendre_p_all(n, x)[n]; }

} // namespace rlp
