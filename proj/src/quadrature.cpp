#include "rlp/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <queue>

namespace rlp {

namespace {

// QK15 nodes/weights (Kronrod 15 with embedded Gauss 7).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class T> double absval(const T& v) { return std::abs(v); }

// One QK15 panel: integral plus QUADPACK-sharpened error estimate.
template <class T>
void qk15(const std::function<T(double)>& f, double a, double b, T& out,
          double& err) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  T fv[15];
  fv[14] = f(c);
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    fv[2 * j] = f(c - dx);
    fv[2 * j + 1] = f(c + dx);
  }
  T resg = kWg[3] * fv[14];
  T resk = kWgk[7] * fv[14];
  for (int j = 0; j < 7; ++j) {
    resk += kWgk[j] * (fv[2 * j] + fv[2 * j + 1]);
    if (j % 2 == 1) resg += kWg[j / 2] * (fv[2 * j] + fv[2 * j + 1]);
  }
  out = resk * h;
  err = absval((resk - resg) * h);
  T mean = resk * 0.5;
  double resasc = kWgk[7] * absval(fv[14] - mean);
  for (int j = 0; j < 7; ++j)
    resasc +=
        kWgk[j] * (absval(fv[2 * j] - mean) + absval(fv[2 * j + 1] - mean));
  resasc *= std::abs(h);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
}

struct Interval {
  double a, b, err;
  int idx; // slot in the value table
  bool operator<(const Interval& o) const { return err < o.err; }
};

template <class T, class R>
R adaptive(const std::function<T(double)>& f, double a, double b,
           double rel_tol, double abs_tol, const std::vector<double>& breaks,
           int max_intervals) {
  if (!(b > a)) return R{};
  std::vector<double> pts{a, b};
  for (double p : breaks)
    if (p > a && p < b) pts.push_back(p);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  std::vector<T> vals;
  std::priority_queue<Interval> q;
  double queue_err = 0.0, frozen_err = 0.0;
  long evals = 0;
  auto push = [&](double lo, double hi) {
    T v;
    double e;
    qk15<T>(f, lo, hi, v, e);
    evals += 15;
    vals.push_back(v);
    queue_err += e;
    q.push({lo, hi, e, int(vals.size() - 1)});
  };
  for (size_t i = 0; i + 1 < pts.size(); ++i) push(pts[i], pts[i + 1]);

  auto total_of = [&] {
    T t{};
    for (const T& v : vals) t += v;
    return t;
  };
  while (int(vals.size()) < max_intervals && !q.empty()) {
    const T total = total_of();
    const double tol = std::max(abs_tol, rel_tol * absval(total));
    if (queue_err + frozen_err <= tol) break;
    Interval worst = q.top();
    q.pop();
    queue_err -= worst.err;
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      frozen_err += worst.err; // rounding limit: keep but stop refining
      continue;
    }
    vals[worst.idx] = T{};
    push(worst.a, mid);
    push(mid, worst.b);
  }
  const T total = total_of();
  const double err = queue_err + frozen_err;
  const double tol = std::max(abs_tol, rel_tol * absval(total));
  if (err > tol && err > 16.0 * tol)
    throw ResolutionError("adaptive quadrature: interval budget exhausted");
  return R{total, err, evals};
}

} // namespace

const GaussRule& gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n < 1");
  static std::map<int, GaussRule> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  GaussRule r;
  r.x.resize(n);
  r.w.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Chebyshev-like initial guess, then Newton on P_n.
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    r.x[i] = -x;
    r.x[n - 1 - i] = x;
    r.w[i] = r.w[n - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
  }
  auto [pos, ok] = cache.emplace(n, std::move(r));
  (void)ok;
  return pos->second;
}

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double rel_tol, double abs_tol,
                     const std::vector<double>& breaks, int max_intervals) {
  return adaptive<double, QuadResult>(f, a, b, rel_tol, abs_tol, breaks,
                                      max_intervals);
}

QuadResultC integrate_c(const std::function<std::complex<double>(double)>& f,
                        double a, double b, double rel_tol, double abs_tol,
                        const std::vector<double>& breaks, int max_intervals) {
  return adaptive<std::complex<double>, QuadResultC>(f, a, b, rel_tol, abs_tol,
                                                     breaks, max_intervals);
}

double integrate_gl(const std::function<double(double)>& f, double a, double b,
                    int panels, int order) {
  const GaussRule& g = gauss_legendre(order);
  const double h = (b - a) / panels;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h, c = lo + 0.5 * h;
    for (int j = 0; j < order; ++j) sum += g.w[j] * f(c + 0.5 * h * g.x[j]);
  }
  return sum * 0.5 * h;
}

} // namespace rlp
