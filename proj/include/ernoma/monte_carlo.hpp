#pragma once

#include <cstdint>

#include "ernoma/effective_rate.hpp"

namespace ernoma {

enum class Scheme { Noma, Oma };

struct McConfig {
  long long samples = 1000000;
  std::uint64_t seed = 1;
  int streams = 8;   // independent sub-streams, merged in fixed order
  int threads = 1;   // worker threads; never affects the result
  void validate() const;
};

struct MomentEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  long long n = 0;
};

// One fading-block pass estimating E[(1+gamma)^-nu] (NOMA) or
// E[(1+gamma)^-nu/2] (OMA, half-block service) for one case/role.
MomentEstimate mc_moment(CsiCase c, Scheme scheme, UserRole role,
                         const PairStats& pair, const ScenarioParams& sp,
                         const PowerSplit& ps, const McConfig& mc);

// All four moments of a pair from a single pass over the same blocks.
struct PairMoments {
  MomentEstimate noma_strong, noma_weak, oma_strong, oma_weak;
};
PairMoments mc_pair_moments(CsiCase c, const PairStats& pair,
                            const ScenarioParams& sp, const PowerSplit& ps,
                            const McConfig& mc);

ErReport mc_effective_rate(CsiCase c, Scheme scheme, const PairStats& pair,
                           const ScenarioParams& sp, const PowerSplit& ps,
                           const McConfig& mc);

}  // namespace ernoma
