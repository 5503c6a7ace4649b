#include "rlp/laplace_ops.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace rlp {

namespace {

void check_s(cplx s) {
  if (!(s.real() > 0.0)) throw std::domain_error("symbol: Re s must be > 0");
}

// Scaled cylindrical pair on the boundary plus derivative helpers.
struct CylPair {
  std::vector<cplx> i, k; // e^{-z} I_n(z), e^{+z} K_n(z), n = 0..nmax+1
  cplx ip(int n) const { return n == 0 ? i[1] : 0.5 * (i[n - 1] + i[n + 1]); }
  cplx kp(int n) const { return n == 0 ? -k[1] : -0.5 * (k[n - 1] + k[n + 1]); }
};

CylPair cyl_at(int nmax, cplx z) {
  CylPair p;
  p.i.resize(nmax + 2);
  p.k.resize(nmax + 2);
  mod_bessel_ik_scaled(nmax + 1, z, p.i.data(), p.k.data());
  return p;
}

// Scaled spherical pair; i_{-1} and k_{-1} are supplied in closed form.
struct SphPair {
  std::vector<cplx> i, k; // e^{-z} i_n(z), e^{+z} k_n(z)
  cplx z;
  cplx ip(int n) const {
    const cplx prev = n == 0 ? (1.0 + std::exp(-2.0 * z)) / (2.0 * z) : i[n - 1];
    return prev - ((n + 1.0) / z) * i[n];
  }
  cplx kp(int n) const {
    const cplx prev = n == 0 ? k[0] : k[n - 1];
    return -prev - ((n + 1.0) / z) * k[n];
  }
};

SphPair sph_at(int nmax, cplx z) {
  SphPair p;
  p.z = z;
  p.i.resize(nmax + 1);
  p.k.resize(nmax + 1);
  mod_sph_ik_scaled(nmax, z, p.i.data(), p.k.data());
  return p;
}

} // namespace

const char* kind_name(OperatorKind k) {
  switch (k) {
    case OperatorKind::S: return "S";
    case OperatorKind::D: return "D";
    case OperatorKind::V: return "V";
    case OperatorKind::K: return "K";
    case OperatorKind::Kt: return "Kt";
    case OperatorKind::W: return "W";
    case OperatorKind::NtD: return "NtD";
    case OperatorKind::DtN: return "DtN";
  }
  return "?";
}

OperatorKind kind_from_name(const std::string& name) {
  for (OperatorKind k : {OperatorKind::S, OperatorKind::D, OperatorKind::V,
                         OperatorKind::K, OperatorKind::Kt, OperatorKind::W,
                         OperatorKind::NtD, OperatorKind::DtN})
    if (name == kind_name(k)) return k;
  throw std::invalid_argument("unknown operator kind: " + name);
}

cplx fundamental_solution(int dim, double r, cplx s) {
  check_s(s);
  if (!(r > 0.0)) throw std::domain_error("fundamental solution: r must be > 0");
  if (dim == 2) return mod_bessel_k(0, s * r) / (2.0 * M_PI);
  if (dim == 3) return std::exp(-s * r) / (4.0 * M_PI * r);
  throw std::invalid_argument("fundamental solution: dimension must be 2 or 3");
}

void boundary_symbols(Geometry g, OperatorKind kind, int nmax, cplx s, double a,
                      cplx* out) {
  check_s(s);
  const cplx z = s * a;
  if (g == Geometry::Circle) {
    const CylPair p = cyl_at(nmax, z);
    for (int n = 0; n <= nmax; ++n) {
      switch (kind) {
        case OperatorKind::V: out[n] = a * p.i[n] * p.k[n]; break;
        case OperatorKind::K:
        case OperatorKind::Kt: out[n] = 0.5 * z * (p.ip(n) * p.k[n] + p.i[n] * p.kp(n)); break;
        case OperatorKind::W: out[n] = -(z * z / a) * p.ip(n) * p.kp(n); break;
        case OperatorKind::DtN: out[n] = -s * p.kp(n) / p.k[n]; break;
        case OperatorKind::NtD: out[n] = -p.k[n] / (s * p.kp(n)); break;
        default: throw std::invalid_argument("boundary_symbols: S/D need a radius");
      }
    }
    return;
  }
  const SphPair p = sph_at(nmax, z);
  const cplx sa2 = s * a * a;
  for (int n = 0; n <= nmax; ++n) {
    switch (kind) {
      case OperatorKind::V: out[n] = sa2 * p.i[n] * p.k[n]; break;
      case OperatorKind::K:
      case OperatorKind::Kt: out[n] = 0.5 * s * sa2 * (p.ip(n) * p.k[n] + p.i[n] * p.kp(n)); break;
      case OperatorKind::W: out[n] = -s * s * sa2 * p.ip(n) * p.kp(n); break;
      case OperatorKind::DtN: out[n] = -s * p.kp(n) / p.k[n]; break;
      case OperatorKind::NtD: out[n] = -p.k[n] / (s * p.kp(n)); break;
      default: throw std::invalid_argument("boundary_symbols: S/D need a radius");
    }
  }
}

cplx boundary_symbol(Geometry g, OperatorKind kind, int n, cplx s, double a) {
  std::vector<cplx> buf(n + 1);
  boundary_symbols(g, kind, n, s, a, buf.data());
  return buf[n];
}

void potential_symbols(Geometry g, OperatorKind kind, int nmax, cplx s, double a,
                       double r, cplx* out, cplx* dout) {
  check_s(s);
  if (!(r > 0.0)) throw std::domain_error("potential symbol: r must be > 0");
  if (kind != OperatorKind::S && kind != OperatorKind::D)
    throw std::invalid_argument("potential_symbols: kind must be S or D");
  if (kind == OperatorKind::D && r == a)
    throw std::domain_error("potential symbol: D jumps across r = a; take a one-sided trace");
  const cplx z = s * a;
  const cplx zr = s * r;
  const bool outside = r >= a;
  const cplx decay = std::exp(-s * std::abs(r - a));
  if (g == Geometry::Circle) {
    const CylPair pa = cyl_at(nmax, z);
    const CylPair pr = cyl_at(nmax, zr);
    for (int n = 0; n <= nmax; ++n) {
      if (kind == OperatorKind::S) {
        if (outside) {
          out[n] = a * pa.i[n] * pr.k[n] * decay;
          if (dout) dout[n] = a * s * pa.i[n] * pr.kp(n) * decay;
        } else {
          out[n] = a * pr.i[n] * pa.k[n] * decay;
          if (dout) dout[n] = a * s * pr.ip(n) * pa.k[n] * decay;
        }
      } else {
        if (outside) {
          out[n] = z * pa.ip(n) * pr.k[n] * decay;
          if (dout) dout[n] = z * s * pa.ip(n) * pr.kp(n) * decay;
        } else {
          out[n] = z * pa.kp(n) * pr.i[n] * decay;
          if (dout) dout[n] = z * s * pa.kp(n) * pr.ip(n) * decay;
        }
      }
    }
    return;
  }
  const SphPair pa = sph_at(nmax, z);
  const SphPair pr = sph_at(nmax, zr);
  const cplx sa2 = s * a * a;
  for (int n = 0; n <= nmax; ++n) {
    if (kind == OperatorKind::S) {
      if (outside) {
        out[n] = sa2 * pa.i[n] * pr.k[n] * decay;
        if (dout) dout[n] = sa2 * s * pa.i[n] * pr.kp(n) * decay;
      } else {
        out[n] = sa2 * pr.i[n] * pa.k[n] * decay;
        if (dout) dout[n] = sa2 * s * pr.ip(n) * pa.k[n] * decay;
      }
    } else {
      if (outside) {
        out[n] = s * sa2 * pa.ip(n) * pr.k[n] * decay;
        if (dout) dout[n] = s * s * sa2 * pa.ip(n) * pr.kp(n) * decay;
      } else {
        out[n] = s * sa2 * pa.kp(n) * pr.i[n] * decay;
        if (dout) dout[n] = s * s * sa2 * pa.kp(n) * pr.ip(n) * decay;
      }
    }
  }
}

cplx potential_symbol(Geometry g, OperatorKind kind, int n, cplx s, double a, double r) {
  std::vector<cplx> buf(n + 1);
  potential_symbols(g, kind, n, s, a, r, buf.data());
  return buf[n];
}

cplx potential_trace(Geometry g, OperatorKind kind, Side side, int deriv, int n,
                     cplx s, double a) {
  check_s(s);
  if (kind != OperatorKind::S && kind != OperatorKind::D)
    throw std::invalid_argument("potential_trace: kind must be S or D");
  if (deriv != 0 && deriv != 1) throw std::invalid_argument("potential_trace: deriv must be 0 or 1");
  const cplx z = s * a;
  const bool in = side == Side::Interior;
  if (g == Geometry::Circle) {
    const CylPair p = cyl_at(n, z);
    if (kind == OperatorKind::S)
      return deriv == 0 ? a * p.i[n] * p.k[n]
                        : (in ? z * p.ip(n) * p.k[n] : z * p.i[n] * p.kp(n));
    return deriv == 0 ? (in ? z * p.kp(n) * p.i[n] : z * p.ip(n) * p.k[n])
                      : (z * z / a) * p.ip(n) * p.kp(n);
  }
  const SphPair p = sph_at(n, z);
  const cplx sa2 = s * a * a;
  if (kind == OperatorKind::S)
    return deriv == 0 ? sa2 * p.i[n] * p.k[n]
                      : (in ? s * sa2 * p.ip(n) * p.k[n] : s * sa2 * p.i[n] * p.kp(n));
  return deriv == 0 ? (in ? s * sa2 * p.kp(n) * p.i[n] : s * sa2 * p.ip(n) * p.k[n])
                    : s * s * sa2 * p.ip(n) * p.kp(n);
}

void exterior_solution_symbols(Geometry g, bool neumann_data, int nmax, cplx s,
                               double a, double r, cplx* out, cplx* dout) {
  check_s(s);
  if (!(r >= a)) throw std::domain_error("exterior solution: r must be >= a");
  const cplx z = s * a;
  const cplx zr = s * r;
  const cplx decay = std::exp(-s * (r - a));
  if (g == Geometry::Circle) {
    const CylPair pa = cyl_at(nmax, z);
    const CylPair pr = cyl_at(nmax, zr);
    for (int n = 0; n <= nmax; ++n) {
      const cplx den = neumann_data ? s * pa.kp(n) : pa.k[n];
      out[n] = pr.k[n] * decay / den;
      if (dout) dout[n] = s * pr.kp(n) * decay / den;
    }
    return;
  }
  const SphPair pa = sph_at(nmax, z);
  const SphPair pr = sph_at(nmax, zr);
  for (int n = 0; n <= nmax; ++n) {
    const cplx den = neumann_data ? s * pa.kp(n) : pa.k[n];
    out[n] = pr.k[n] * decay / den;
    if (dout) dout[n] = s * pr.kp(n) * decay / den;
  }
}

double NormBound::cf(double sigma) const {
  return 1.0 / (std::pow(sigma, p) * std::pow(std::min(1.0, sigma), q));
}

NormBound table1_bound(OperatorKind k) {
  switch (k) {
    case OperatorKind::S:
    case OperatorKind::V:
    case OperatorKind::NtD: return {1.0, 1.0, 2.0};
    case OperatorKind::Kt:
    case OperatorKind::D:
    case OperatorKind::K: return {1.5, 1.0, 1.5};
    case OperatorKind::W:
    case OperatorKind::DtN: return {2.0, 1.0, 1.0};
  }
  throw std::invalid_argument("table1_bound: unknown kind");
}

cplx SymbolFamily::eval(int n, cplx s) const {
  if (kind == OperatorKind::S || kind == OperatorKind::D)
    return potential_symbol(geom, kind, n, s, a, r);
  return boundary_symbol(geom, kind, n, s, a);
}

void SymbolFamily::eval_all(int nmax, cplx s, cplx* out) const {
  if (kind == OperatorKind::S || kind == OperatorKind::D)
    potential_symbols(geom, kind, nmax, s, a, r, out);
  else
    boundary_symbols(geom, kind, nmax, s, a, out);
}

} // namespace rlp
