#pragma once

#include "ernoma/effective_rate.hpp"

namespace ernoma {

// ER of the time-frequency-division OMA comparison system: each slot serves
// one user of every pair on its own band with power fraction 2/K, so the
// per-block service time is halved and the moment exponent becomes nu/2:
//   R = -(1/nu) log2 E[(1 + (2/K) Phat g)^(-nu/2)].
// The role gain g mirrors the CSI level: max/min combined gain under
// instantaneous SL-CSI, near/far under statistical.
double oma_effective_rate(CsiCase c, UserRole role, const PairStats& pair,
                          const ScenarioParams& sp);

// E[(1+gamma_oma)^(-nu/2)] by quadrature.
double oma_moment_quadrature(CsiCase c, UserRole role, const PairStats& pair,
                             const ScenarioParams& sp);

// E[(1/2) log2(1+gamma_oma)]: the half-duty average rate (Jensen bound and
// theta -> 0 limit for the OMA system).
double oma_mean_log_rate_quadrature(CsiCase c, UserRole role,
                                    const PairStats& pair,
                                    const ScenarioParams& sp);

}  // namespace ernoma
