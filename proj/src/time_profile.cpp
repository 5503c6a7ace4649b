#include "rlp/time_profile.hpp"

#include <cmath>

namespace rlp {

namespace {

const double kInf = std::numeric_limits<double>::infinity();

// multiply a trig polynomial by sin(w tau) (product-to-sum, exact)
void mul_sin(double& c0, std::vector<double>& ca, std::vector<double>& cb) {
  const int K = int(ca.size());
  std::vector<double> na(K + 1, 0.0), nb(K + 1, 0.0);
  double nc0 = 0.0;
  if (c0 != 0.0) nb[0] += c0; // c0 sin(w tau), harmonic 1 is index 0
  for (int k = 1; k <= K; ++k) {
    const double a = ca[k - 1], b = cb[k - 1];
    // sin(w)cos(kw) = [sin((k+1)w) - sin((k-1)w)]/2
    if (a != 0.0) {
      nb[k] += 0.5 * a;
      if (k == 1) /* sin(0)=0 */;
      else nb[k - 2] -= 0.5 * a;
    }
    // sin(w)sin(kw) = [cos((k-1)w) - cos((k+1)w)]/2
    if (b != 0.0) {
      if (k == 1) nc0 += 0.5 * b;
      else na[k - 2] += 0.5 * b;
      na[k] -= 0.5 * b;
    }
  }
  c0 = nc0;
  ca = std::move(na);
  cb = std::move(nb);
}

// multiply by (1 - cos(w tau))/2
void mul_half_one_minus_cos(double& c0, std::vector<double>& ca, std::vector<double>& cb) {
  const int K = int(ca.size());
  std::vector<double> na(K + 1, 0.0), nb(K + 1, 0.0);
  double nc0 = 0.5 * c0;
  if (c0 != 0.0) na[0] -= 0.5 * c0;
  for (int k = 1; k <= K; ++k) {
    const double a = 0.5 * ca[k - 1], b = 0.5 * cb[k - 1];
    na[k - 1] += a;
    nb[k - 1] += b;
    // cos(w)cos(kw) = [cos((k+1)w)+cos((k-1)w)]/2, with the minus sign folded in
    if (a != 0.0) {
      na[k] -= 0.5 * a;
      if (k == 1) nc0 -= 0.5 * a;
      else na[k - 2] -= 0.5 * a;
    }
    // cos(w)sin(kw) = [sin((k+1)w)+sin((k-1)w)]/2
    if (b != 0.0) {
      nb[k] -= 0.5 * b;
      if (k >= 2) nb[k - 2] -= 0.5 * b;
    }
  }
  c0 = nc0;
  ca = std::move(na);
  cb = std::move(nb);
}

void trim(std::vector<double>& v) {
  while (!v.empty() && v.back() == 0.0) v.pop_back();
}

} // namespace

TimeProfile TimeProfile::poly_exp(std::vector<double> coeffs, double sigma, double onset) {
  TimeProfile p;
  p.kind_ = Kind::PolyExp;
  p.coef_ = std::move(coeffs);
  trim(p.coef_);
  p.sigma_ = sigma;
  p.onset_ = onset;
  if (p.coef_.empty()) p.kind_ = Kind::Zero;
  return p;
}

TimeProfile TimeProfile::trig_poly(double c0, std::vector<double> cos_coeffs,
                                   std::vector<double> sin_coeffs, double omega,
                                   double onset, double length) {
  TimeProfile p;
  p.kind_ = Kind::TrigPoly;
  p.c0_ = c0;
  p.ca_ = std::move(cos_coeffs);
  p.cb_ = std::move(sin_coeffs);
  p.cb_.resize(std::max(p.ca_.size(), p.cb_.size()), 0.0);
  p.ca_.resize(p.cb_.size(), 0.0);
  p.omega_ = omega;
  p.onset_ = onset;
  p.length_ = length;
  if (p.c0_ == 0.0 && p.ca_.empty()) p.kind_ = Kind::Zero;
  return p;
}

TimeProfile TimeProfile::sine_power(int power, double omega, double onset, double length) {
  if (power < 1) throw std::invalid_argument("sine_power: power < 1");
  double c0 = 1.0;
  std::vector<double> ca, cb;
  for (int i = 0; i < power; ++i) mul_sin(c0, ca, cb);
  return trig_poly(c0, std::move(ca), std::move(cb), omega, onset, length);
}

TimeProfile TimeProfile::raised_cosine(int q, double width, double onset) {
  if (q < 1) throw std::invalid_argument("raised_cosine: q < 1");
  if (!(width > 0.0)) throw std::invalid_argument("raised_cosine: width <= 0");
  double c0 = 1.0;
  std::vector<double> ca, cb;
  for (int i = 0; i < q; ++i) mul_half_one_minus_cos(c0, ca, cb);
  return trig_poly(c0, std::move(ca), std::move(cb), 2.0 * M_PI / width, onset, width);
}

double TimeProfile::operator()(double t) const {
  if (kind_ == Kind::Zero) return 0.0;
  const double tau = t - onset_;
  if (tau <= 0.0) return 0.0;
  if (kind_ == Kind::TrigPoly && tau >= length_) return 0.0;
  if (kind_ == Kind::PolyExp) {
    double p = 0.0;
    for (size_t i = coef_.size(); i-- > 0;) p = p * tau + coef_[i];
    return p * std::exp(-sigma_ * tau);
  }
  double v = c0_;
  for (size_t k = 0; k < ca_.size(); ++k) {
    const double ph = (k + 1) * omega_ * tau;
    v += ca_[k] * std::cos(ph) + cb_[k] * std::sin(ph);
  }
  return v;
}

TimeProfile TimeProfile::derivative() const {
  const int so = smoothness_order();
  if (so < 0)
    throw SmoothnessError("profile jumps at its support boundary; derivative not locally integrable");
  TimeProfile d = *this;
  if (kind_ == Kind::Zero) return d;
  if (kind_ == Kind::PolyExp) {
    // (p e^{-s tau})' = (p' - s p) e^{-s tau}
    std::vector<double> c(coef_.size(), 0.0);
    for (size_t i = 0; i + 1 < coef_.size(); ++i) c[i] = (i + 1) * coef_[i + 1];
    for (size_t i = 0; i < coef_.size(); ++i) c[i] -= sigma_ * coef_[i];
    trim(c);
    d.coef_ = std::move(c);
    if (d.coef_.empty()) d.kind_ = Kind::Zero;
    return d;
  }
  std::vector<double> na(ca_.size()), nb(cb_.size());
  for (size_t k = 0; k < ca_.size(); ++k) {
    const double kw = (k + 1) * omega_;
    na[k] = kw * cb_[k];
    nb[k] = -kw * ca_[k];
  }
  d.c0_ = 0.0;
  d.ca_ = std::move(na);
  d.cb_ = std::move(nb);
  trim(d.ca_);
  trim(d.cb_);
  d.cb_.resize(std::max(d.ca_.size(), d.cb_.size()), 0.0);
  d.ca_.resize(d.cb_.size(), 0.0);
  if (d.c0_ == 0.0 && d.ca_.empty()) d.kind_ = Kind::Zero;
  return d;
}

TimeProfile TimeProfile::derivative(int order) const {
  if (order < 0) throw std::invalid_argument("derivative: order < 0");
  TimeProfile d = *this;
  for (int i = 0; i < order; ++i) d = d.derivative();
  return d;
}

TimeProfile TimeProfile::scaled(double alpha) const {
  TimeProfile p = *this;
  if (alpha == 0.0) return zero();
  for (double& c : p.coef_) c *= alpha;
  p.c0_ *= alpha;
  for (double& c : p.ca_) c *= alpha;
  for (double& c : p.cb_) c *= alpha;
  return p;
}

double TimeProfile::edge_value(int side) const {
  if (kind_ == Kind::Zero) return 0.0;
  if (kind_ == Kind::PolyExp) return side == 0 ? (coef_.empty() ? 0.0 : coef_[0]) : 0.0;
  if (side == 0) {
    double v = c0_;
    for (double a : ca_) v += a;
    return v;
  }
  if (length_ == kInf) return 0.0;
  double v = c0_;
  for (size_t k = 0; k < ca_.size(); ++k) {
    const double ph = (k + 1) * omega_ * length_;
    v += ca_[k] * std::cos(ph) + cb_[k] * std::sin(ph);
  }
  return v;
}

int TimeProfile::smoothness_order() const {
  if (kind_ == Kind::Zero) return 4;
  // scale for the zero test: largest coefficient magnitude
  double scale = std::abs(c0_);
  for (double c : coef_) scale = std::max(scale, std::abs(c));
  for (double c : ca_) scale = std::max(scale, std::abs(c));
  for (double c : cb_) scale = std::max(scale, std::abs(c));
  TimeProfile d = *this;
  for (int j = 0; j <= 4; ++j) {
    if (std::abs(d.edge_value(0)) > 1e-12 * scale) return j - 1;
    if (std::abs(d.edge_value(1)) > 1e-12 * scale) return j - 1;
    if (j < 4) {
      // bypass the smoothness gate: we differentiate only to probe edges
      TimeProfile nxt = d;
      if (nxt.kind_ == Kind::PolyExp) {
        std::vector<double> c(nxt.coef_.size(), 0.0);
        for (size_t i = 0; i + 1 < nxt.coef_.size(); ++i) c[i] = (i + 1) * nxt.coef_[i + 1];
        for (size_t i = 0; i < nxt.coef_.size(); ++i) c[i] -= nxt.sigma_ * nxt.coef_[i];
        nxt.coef_ = std::move(c);
      } else {
        std::vector<double> na(nxt.ca_.size()), nb(nxt.cb_.size());
        for (size_t k = 0; k < nxt.ca_.size(); ++k) {
          const double kw = (k + 1) * nxt.omega_;
          na[k] = kw * nxt.cb_[k];
          nb[k] = -kw * nxt.ca_[k];
        }
        nxt.c0_ = 0.0;
        nxt.ca_ = std::move(na);
        nxt.cb_ = std::move(nb);
      }
      d = nxt;
      // derivative magnitudes grow with omega/sigma; rescale the zero test
      double s2 = std::abs(d.c0_);
      for (double c : d.coef_) s2 = std::max(s2, std::abs(c));
      for (double c : d.ca_) s2 = std::max(s2, std::abs(c));
      for (double c : d.cb_) s2 = std::max(s2, std::abs(c));
      scale = std::max(s2, scale);
    }
  }
  return 4;
}

bool TimeProfile::is_zero() const { return kind_ == Kind::Zero; }

double TimeProfile::support_end() const {
  if (kind_ == Kind::Zero) return onset_;
  if (kind_ == Kind::PolyExp || length_ == kInf) return kInf;
  return onset_ + length_;
}

} // namespace rlp
