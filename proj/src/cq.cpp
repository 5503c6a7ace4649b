#include "rlp/cq.hpp"

#include <cmath>
#include <stdexcept>

namespace rlp {

void fft_pow2(std::vector<cplx>& x, int sign) {
  const size_t n = x.size();
  if (n == 0 || (n & (n - 1)) != 0) throw std::invalid_argument("fft: length not a power of 2");
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(x[i], x[j]);
  }
  for (size_t len = 2; len <= n; len <<= 1) {
    const double ang = sign * 2.0 * M_PI / double(len);
    const cplx wl(std::cos(ang), std::sin(ang));
    for (size_t i = 0; i < n; i += len) {
      cplx w(1.0, 0.0);
      for (size_t k = 0; k < len / 2; ++k) {
        const cplx u = x[i + k];
        const cplx v = x[i + k + len / 2] * w;
        x[i + k] = u + v;
        x[i + k + len / 2] = u - v;
        w *= wl;
      }
    }
  }
}

cplx bdf_delta(CQMethod m, cplx zeta) {
  if (m == CQMethod::BDF1) return 1.0 - zeta;
  return 1.5 - 2.0 * zeta + 0.5 * zeta * zeta;
}

namespace {

size_t contour_length(int N) {
  size_t L = 1;
  while (L < size_t(N) + 1) L <<= 1;
  return L;
}

// F_all fills values for modes 0..nmax at one s; returns weights per mode.
std::vector<CQWeights> weights_impl(const std::function<void(cplx, cplx*)>& F_all,
                                    int nmax, double dt, int N, CQMethod m) {
  if (!(dt > 0.0)) throw std::invalid_argument("cq: dt <= 0");
  if (N < 0 || N > 1000000) throw std::invalid_argument("cq: steps out of range");
  const size_t L = contour_length(N);
  const double rho = std::pow(std::numeric_limits<double>::epsilon(), 1.0 / (2.0 * N));
  std::vector<std::vector<cplx>> v(nmax + 1, std::vector<cplx>(L));
  std::vector<cplx> buf(nmax + 1);
  for (size_t l = 0; l < L; ++l) {
    const double ang = 2.0 * M_PI * double(l) / double(L);
    const cplx zeta = rho * cplx(std::cos(ang), std::sin(ang));
    const cplx s = bdf_delta(m, zeta) / dt;
    F_all(s, buf.data());
    for (int n = 0; n <= nmax; ++n) v[n][l] = buf[n];
  }
  std::vector<CQWeights> out(nmax + 1);
  for (int n = 0; n <= nmax; ++n) {
    fft_pow2(v[n], -1); // w_j = rho^{-j} (1/L) sum_l v_l e^{-2 pi i jl/L}
    CQWeights& W = out[n];
    W.dt = dt;
    W.steps = N;
    W.method = m;
    W.w.resize(N + 1);
    double rp = 1.0;
    for (int j = 0; j <= N; ++j) {
      W.w[j] = v[n][j] / (double(L) * rp);
      rp *= rho;
    }
  }
  return out;
}

} // namespace

CQWeights cq_weights(const std::function<cplx(cplx)>& F, double dt, int N, CQMethod m) {
  auto fa = [&F](cplx s, cplx* out) { out[0] = F(s); };
  return weights_impl(fa, 0, dt, N, m)[0];
}

std::vector<CQWeights> cq_weights_modes(const std::function<void(cplx, cplx*)>& F_all,
                                        int nmax, double dt, int N, CQMethod m) {
  return weights_impl(F_all, nmax, dt, N, m);
}

std::vector<cplx> cq_convolve(const CQWeights& w, const std::vector<cplx>& g) {
  if (int(g.size()) != w.steps + 1) throw std::invalid_argument("cq_convolve: length mismatch");
  const int N = w.steps;
  std::vector<cplx> out(N + 1, cplx(0.0, 0.0));
  for (int j = 0; j <= N; ++j) {
    cplx acc(0.0, 0.0);
    for (int k = 0; k <= j; ++k) acc += w.w[k] * g[j - k];
    out[j] = acc;
  }
  return out;
}

std::vector<cplx> cq_convolve(const CQWeights& w, const std::vector<double>& g) {
  std::vector<cplx> gc(g.begin(), g.end());
  return cq_convolve(w, gc);
}

double ModeSeries::sobolev_norm_at(int j, double s_exp) const {
  double acc = 0.0;
  for (size_t i = 0; i < modes.size(); ++i) {
    const double n = modes[i];
    acc += std::pow(1.0 + n * n, s_exp) * std::norm(series[i][j]);
  }
  return std::sqrt(2.0 * M_PI * a * acc);
}

double ModeSeries::value_at(int j) const {
  double acc = 0.0;
  for (const auto& s : series) acc += s[j].real();
  return acc;
}

ModeSeries evaluate_potential(const SymbolFamily& fam, const FourierDensity& rho,
                              double dt, int N, CQMethod m) {
  ModeSeries out;
  out.geom = fam.geom;
  out.a = fam.a;
  out.dt = dt;
  out.steps = N;
  int nmax = 0;
  for (const auto& t : rho.terms())
    if (!t.profile.is_zero()) nmax = std::max(nmax, t.n);
  // one contour sweep covers every mode of the density
  auto evaluator = [&fam, nmax](cplx s, cplx* buf) { fam.eval_all(nmax, s, buf); };
  std::vector<CQWeights> ws = cq_weights_modes(evaluator, nmax, dt, N, m);
  for (const auto& t : rho.terms()) {
    if (t.profile.is_zero()) continue;
    std::vector<double> g(N + 1);
    for (int j = 0; j <= N; ++j) g[j] = t.profile(j * dt);
    out.modes.push_back(t.n);
    out.series.push_back(cq_convolve(ws[t.n], g));
  }
  return out;
}

} // namespace rlp
