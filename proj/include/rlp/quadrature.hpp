#ifndef RLP_QUADRATURE_HPP
#define RLP_QUADRATURE_HPP

#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

namespace rlp {

// Raised when a quadrature or series cannot reach the requested accuracy
// within its interval/iteration budget.
class ResolutionError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Gauss-Legendre nodes and weights on [-1,1]. Cached per n; thread-safe.
struct GaussRule {
  std::vector<double> x;
  std::vector<double> w;
};
const GaussRule& gauss_legendre(int n);

struct QuadResult {
  double value = 0.0;
  double abs_err = 0.0;
  long evals = 0;
};
struct QuadResultC {
  std::complex<double> value{0.0, 0.0};
  double abs_err = 0.0;
  long evals = 0;
};

// Adaptive Gauss-Kronrod 7-15. Splits the worst interval until
// |err| <= max(abs_tol, rel_tol*|I|) or the interval budget is exhausted
// (then throws ResolutionError). `breaks` seeds the initial subdivision;
// entries outside (a,b) are ignored.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double rel_tol = 1e-10, double abs_tol = 0.0,
                     const std::vector<double>& breaks = {},
                     int max_intervals = 20000);

QuadResultC integrate_c(const std::function<std::complex<double>(double)>& f,
                        double a, double b, double rel_tol = 1e-10,
                        double abs_tol = 0.0,
                        const std::vector<double>& breaks = {},
                        int max_intervals = 20000);

// Fixed composite Gauss-Legendre: `panels` equal panels of `order` points.
double integrate_gl(const std::function<double(double)>& f, double a, double b,
                    int panels, int order);

} // namespace rlp

#endif
