#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace ernoma {

// Raised when a contour or real-axis quadrature cannot reach the requested
// tolerance within its node budget. Carries the achieved error estimate.
class AccuracyError : public std::runtime_error {
 public:
  AccuracyError(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_error(achieved) {}
  double achieved_error;
};

// log Gamma(x) for x > 0; throws std::domain_error otherwise.
double ln_gamma(double x);

// log|Gamma(x)| and the sign of Gamma(x) for any real x off the poles.
struct SignedLogGamma {
  double log_abs;
  int sign;
};
SignedLogGamma ln_gamma_signed(double x);

// Principal-branch-agnostic complex log gamma: exp(ln_gamma(z)) == Gamma(z),
// but the imaginary part may differ from the principal branch by 2*pi*k.
// That is sufficient here because results are only ever exponentiated.
std::complex<double> ln_gamma(std::complex<double> z);

struct QuadratureConfig {
  double rel_tol = 1e-10;
  double abs_tol = 0.0;
  double initial_half_height = 40.0;  // contour truncation half-height L
  int node_budget = 512;              // max quadrature nodes per contour axis
  double pole_eps = 1e-8;             // pole-separation guard
  void validate() const;
};

// G^{m,n}_{p,q}(z | a_1..a_p ; b_1..b_q) with real parameters and z > 0,
// evaluated as a Mellin-Barnes integral on the vertical line Re(s) = c, where
// c is the midpoint of the gap between the poles of Gamma(b_j - s) (right
// group, j <= m) and those of Gamma(1 - a_k + s) (left group, k <= n).
// Only classes without denominator gamma factors are supported (m == q,
// n == p); the ones exercised here are G^{1,1}_{1,1}, G^{2,2}_{2,2} and
// G^{1,2}_{2,1}.
struct MeijerGSpec {
  int m = 0, n = 0, p = 0, q = 0;
  std::vector<double> a;
  std::vector<double> b;
  double z = 1.0;
  void validate() const;
};

struct GResult {
  double value = 0.0;
  double abs_error = 0.0;
  bool perturbed = false;  // a pole-separation perturbation was applied
};

GResult meijer_g(const MeijerGSpec& spec, const QuadratureConfig& cfg = {});
// Same, with the result scaled by exp(log_scale). The scale is folded into
// the integrand so that arbitrarily large prefactors never overflow.
GResult meijer_g(const MeijerGSpec& spec, const QuadratureConfig& cfg,
                 double log_scale);

// Extended generalized bivariate Meijer G-function over a tensor product of
// vertical contours:
//
//   G([a;b] | [c;d] | [e;f] | z1, z2) =
//     (1/(2*pi*i))^2 Int Int  Gamma(b-s-t) Gamma(1-a+s+t)
//                           * Gamma(d-s) Gamma(1-c+s)
//                           * Gamma(f-t) [Gamma(1-e+t)]
//                           * z1^s z2^t ds dt
//
// restricted to the two block shapes used by the weak-user rate expressions:
// outer (1,1;1,1), inner-1 (1,1;1,1), inner-2 either (1,1;1,1) or (1,0;0,1).
// Writing A = 1-a and nu = b+A, the supported specs have c = 1+nu, d = f = 0
// and (for the three-entry inner-2) e = -A. The inner-1 factor
// Gamma(d-s)Gamma(1-c+s) = Gamma(-s)Gamma(s-nu) has no straight separating
// contour for nu > 0; the integral is therefore evaluated as a straight-line
// double integral plus ceil(nu) one-dimensional residue corrections, which
// reproduces the defining real-axis integrals exactly (see the tests).
struct GBlock {
  std::vector<double> upper;
  std::vector<double> lower;
};

struct Egbmgf2Spec {
  GBlock outer;
  GBlock inner1;
  GBlock inner2;
  double z1 = 1.0;
  double z2 = 1.0;
  void validate() const;
};

GResult egbmgf(const Egbmgf2Spec& spec, const QuadratureConfig& cfg = {});
GResult egbmgf(const Egbmgf2Spec& spec, const QuadratureConfig& cfg,
               double log_scale);

}  // namespace ernoma
