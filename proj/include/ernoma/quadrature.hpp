#pragma once

#include <functional>

namespace ernoma::quad {

struct Result {
  double value = 0.0;
  double abs_error = 0.0;
  long evals = 0;
};

// Adaptive Gauss-Kronrod 15(7) on [a, b]. Stops when the summed panel error
// estimate drops below max(abs_tol, rel_tol * |value|).
Result integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol, double abs_tol = 0.0, long max_evals = 2000000);

// Integral over [0, inf). The upper limit starts at x0 and doubles until the
// increment contributed by the last octave is negligible against the total;
// heavy algebraic tails (x^-(1+nu) and slower than x^-1.2 are still fine)
// just take more doublings.
Result integrate_half_line(const std::function<double(double)>& f,
                           double rel_tol, double x0 = 1.0,
                           long max_evals = 4000000);

}  // namespace ernoma::quad
