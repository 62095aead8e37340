#pragma once

#include "ernoma/effective_rate.hpp"

namespace ernoma {

struct PowerAllocationResult {
  PowerSplit split{0.0, 0.0};
  bool clamped = false;      // target unattainable under a_s < a_w
  double r_strong_noma = 0.0;
  double r_strong_oma = 0.0;
  int iterations = 0;
};

// Bisection search for the strong-user coefficient a_s* such that the NOMA
// strong-user ER equals the OMA strong-user ER, exploiting monotonicity of
// R_s in a_s. If even a_s -> (1/K)- cannot reach the OMA target, the split
// clamps there and `clamped` is set; this is a reported condition, never a
// failure. `method` selects the ER evaluator used inside the search.
PowerAllocationResult match_strong_user(CsiCase c, const PairStats& pair,
                                        const ScenarioParams& sp,
                                        double tol = 1e-6,
                                        Method method = Method::Quadrature);

}  // namespace ernoma
