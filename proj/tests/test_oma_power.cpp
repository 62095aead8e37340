#include <cmath>

#include "doctest.h"
#include "ernoma/monte_carlo.hpp"
#include "ernoma/oma_baseline.hpp"
#include "ernoma/power_allocation.hpp"
#include "test_support.hpp"

using namespace ernoma;

namespace {

PairStats scenario_pair(int n_antennas) {
  PairStats p;
  p.near_user = {3.1622776601683793e-6, n_antennas};
  p.far_user = {5.6568542494923802e-8, n_antennas};
  p.pr = {9.8821176880261854e-8, 1};
  return p;
}

}  // namespace

TEST_SUITE_BEGIN("oma_power");

TEST_CASE("half-duty constant channel gives exactly half the rate") {
  // combined gain pinned at g0 with gamma_oma = (2/K) Phat g0 = 3
  const ScenarioParams sp{};
  PairStats pair;
  pair.pr = {9.8821176880261854e-8, 1};
  const double g0 = 3.0 / sp.p_hat_stat(pair.pr.omega);
  pair.near_user = {g0 / 20000.0, 20000};
  pair.far_user = {1e-12, 1};
  const double got = oma_effective_rate(CsiCase::SS, UserRole::Strong, pair,
                                        sp);
  CHECK(testsup::rel_err(got, 1.0) < 2e-3);  // log2(4)/2
}

TEST_CASE("OMA rate agrees with the Monte Carlo oracle") {
  const PairStats pair = scenario_pair(2);
  const ScenarioParams sp{};
  const PowerSplit ps = PowerSplit::make(0.2, 2);  // OMA ignores the split
  McConfig mc;
  mc.samples = 1000000;
  mc.seed = 31;
  for (CsiCase c : {CsiCase::II, CsiCase::SI}) {
    const ErReport sim =
        mc_effective_rate(c, Scheme::Oma, pair, sp, ps, mc);
    CHECK(testsup::rel_err(oma_effective_rate(c, UserRole::Strong, pair, sp),
                           sim.r_strong) < 0.02);
    CHECK(testsup::rel_err(oma_effective_rate(c, UserRole::Weak, pair, sp),
                           sim.r_weak) < 0.02);
  }
}

TEST_CASE("OMA obeys the Jensen bound and theta-monotonicity") {
  const PairStats pair = scenario_pair(2);
  double prev = 1e300;
  for (int i = 0; i < 8; ++i) {
    ScenarioParams sp{};
    sp.theta = 0.05 * std::pow(4.0, 0.5 * i);
    const double r = oma_effective_rate(CsiCase::II, UserRole::Strong, pair,
                                        sp) +
                     oma_effective_rate(CsiCase::II, UserRole::Weak, pair,
                                        sp);
    CHECK(r <= prev * (1.0 + 1e-12));
    prev = r;
  }
  const ScenarioParams sp{};
  for (UserRole role : {UserRole::Strong, UserRole::Weak}) {
    CHECK(oma_effective_rate(CsiCase::SI, role, pair, sp) <=
          oma_mean_log_rate_quadrature(CsiCase::SI, role, pair, sp) + 1e-9);
  }
}

TEST_CASE("bisection matches the strong users") {
  const PairStats pair = scenario_pair(1);
  const ScenarioParams sp{};
  for (CsiCase c : {CsiCase::II, CsiCase::SS}) {
    const PowerAllocationResult res = match_strong_user(c, pair, sp);
    CHECK(res.split.a_s + res.split.a_w == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(res.split.a_s < res.split.a_w);
    if (!res.clamped)
      CHECK(std::abs(res.r_strong_noma - res.r_strong_oma) <= 1e-6);
  }
}

TEST_CASE("strong-user rate is strictly increasing in a_s") {
  const PairStats pair = scenario_pair(2);
  const ScenarioParams sp{};
  double prev = -1.0;
  for (int i = 1; i <= 12; ++i) {
    const PowerSplit ps = PowerSplit::make(0.499 * i / 12.0, 2);
    const double r = er_quadrature(CsiCase::II, UserRole::Strong, pair, sp,
                                   ps);
    CHECK(r > prev);
    prev = r;
  }
}

TEST_CASE("bisection endpoint: vanishing a_s starves the strong user") {
  const PairStats pair = scenario_pair(1);
  const ScenarioParams sp{};
  const PowerSplit eps_split = PowerSplit::make(1e-9, 2);
  const double r =
      er_quadrature(CsiCase::II, UserRole::Strong, pair, sp, eps_split);
  CHECK(r < 1e-6);
  CHECK(r <
        oma_effective_rate(CsiCase::II, UserRole::Strong, pair, sp));
}

TEST_CASE("bisection result sits on the grid-scan crossing") {
  const PairStats pair = scenario_pair(1);
  const ScenarioParams sp{};
  const PowerAllocationResult res = match_strong_user(CsiCase::II, pair, sp);
  REQUIRE(!res.clamped);
  // a scan of R_s over a_s brackets the returned split tightly
  auto r_of = [&](double a_s) {
    return er_quadrature(CsiCase::II, UserRole::Strong, pair, sp,
                         PowerSplit::make(a_s, 2));
  };
  const double lo = res.split.a_s - 1e-5;
  const double hi = res.split.a_s + 1e-5;
  CHECK(r_of(lo) < res.r_strong_oma);
  CHECK(r_of(hi) > res.r_strong_oma);
}

TEST_SUITE_END();
