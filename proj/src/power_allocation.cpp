#include "ernoma/power_allocation.hpp"

#include <cmath>
#include <stdexcept>

#include "ernoma/oma_baseline.hpp"

namespace ernoma {

PowerAllocationResult match_strong_user(CsiCase c, const PairStats& pair,
                                        const ScenarioParams& sp, double tol,
                                        Method method) {
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  if (method == Method::MonteCarlo)
    throw std::invalid_argument(
        "bisection needs a deterministic ER evaluator");
  pair.validate();
  sp.validate();

  auto r_strong = [&](double a_s) {
    const PowerSplit ps = PowerSplit::make(a_s, sp.n_users);
    return method == Method::ClosedForm
               ? er_closed_strong(c, pair, sp, ps)
               : er_quadrature(c, UserRole::Strong, pair, sp, ps);
  };

  PowerAllocationResult out;
  out.r_strong_oma = oma_effective_rate(c, UserRole::Strong, pair, sp);

  const double budget = 2.0 / sp.n_users;        // a_s + a_w
  const double eps = 1e-9 * budget;              // open-interval guard
  const double hi = 0.5 * budget - eps;          // a_s < a_w
  const double r_hi = r_strong(hi);
  if (r_hi < out.r_strong_oma) {
    // equal split still falls short of the OMA strong user: clamp
    out.split = PowerSplit::make(hi, sp.n_users);
    out.clamped = true;
    out.r_strong_noma = r_hi;
    return out;
  }

  double lo = eps;
  double hi_b = hi;
  double mid = 0.5 * (lo + hi_b);
  for (int it = 0; it < 60; ++it) {
    mid = 0.5 * (lo + hi_b);
    const double r = r_strong(mid);
    out.iterations = it + 1;
    if (std::abs(r - out.r_strong_oma) <= tol) {
      out.r_strong_noma = r;
      out.split = PowerSplit::make(mid, sp.n_users);
      return out;
    }
    if (r < out.r_strong_oma)
      lo = mid;
    else
      hi_b = mid;
    if (hi_b - lo <= 1e-12 * budget) break;
  }
  out.r_strong_noma = r_strong(mid);
  out.split = PowerSplit::make(mid, sp.n_users);
  return out;
}

}  // namespace ernoma
