#include "ernoma/oma_baseline.hpp"

#include <cmath>

#include "ernoma/quadrature.hpp"

namespace ernoma {
namespace {

constexpr double kLn2 = 0.69314718055994530942;

struct OmaIntegrand {
  CsiCase c;
  UserRole role;
  const PairStats* pair;
  double nu, q;  // q = (2/K) * Qhat

  double density(double x) const {
    const bool inst_sl = sl_instantaneous(c);
    if (il_instantaneous(c)) {
      if (inst_sl)
        return pdf_ratio(x, role == UserRole::Strong ? RatioKind::Max
                                                     : RatioKind::Min,
                         *pair);
      return pdf_ratio(x, role == UserRole::Strong ? RatioKind::Near
                                                   : RatioKind::Far,
                       *pair);
    }
    if (inst_sl)
      return role == UserRole::Strong ? pdf_max_gain(x, *pair)
                                      : pdf_min_gain(x, *pair);
    return pdf_gain(x, role == UserRole::Strong ? pair->near_user
                                                : pair->far_user);
  }

  double scale_hint() const {
    const double g = std::max(
        pair->near_user.n_antennas * pair->near_user.omega,
        pair->far_user.n_antennas * pair->far_user.omega);
    const double body = il_instantaneous(c) ? g / pair->pr.omega : g;
    return std::min(body, 6.0 / (std::max(nu, 1.0) * q));
  }
};

OmaIntegrand make_integrand(CsiCase c, UserRole role, const PairStats& pair,
                            const ScenarioParams& sp) {
  pair.validate();
  sp.validate();
  const double qhat = il_instantaneous(c)
                          ? sp.i_hat()
                          : sp.p_hat_stat(pair.pr.omega);
  return {c, role, &pair, sp.nu(), (2.0 / sp.n_users) * qhat};
}

}  // namespace

double oma_moment_quadrature(CsiCase c, UserRole role, const PairStats& pair,
                             const ScenarioParams& sp) {
  const OmaIntegrand oi = make_integrand(c, role, pair, sp);
  auto f = [&](double x) {
    return std::exp(-0.5 * oi.nu * std::log1p(oi.q * x)) * oi.density(x);
  };
  return quad::integrate_half_line(f, 1e-10, oi.scale_hint()).value;
}

double oma_effective_rate(CsiCase c, UserRole role, const PairStats& pair,
                          const ScenarioParams& sp) {
  const OmaIntegrand oi = make_integrand(c, role, pair, sp);
  if (oi.nu < 1e-3) {
    auto f = [&](double x) {
      return std::expm1(-0.5 * oi.nu * std::log1p(oi.q * x)) * oi.density(x);
    };
    const double delta =
        quad::integrate_half_line(f, 1e-10, oi.scale_hint()).value;
    return -std::log1p(std::max(delta, -1.0 + 1e-300)) / (oi.nu * kLn2);
  }
  return er_from_moment(std::min(oma_moment_quadrature(c, role, pair, sp), 1.0),
                        oi.nu);
}

double oma_mean_log_rate_quadrature(CsiCase c, UserRole role,
                                    const PairStats& pair,
                                    const ScenarioParams& sp) {
  const OmaIntegrand oi = make_integrand(c, role, pair, sp);
  auto f = [&](double x) {
    return 0.5 * std::log1p(oi.q * x) / kLn2 * oi.density(x);
  };
  return quad::integrate_half_line(f, 1e-10, oi.scale_hint()).value;
}

}  // namespace ernoma
