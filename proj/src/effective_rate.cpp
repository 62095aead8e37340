#include "ernoma/effective_rate.hpp"

#include <cmath>
#include <stdexcept>

#include "ernoma/quadrature.hpp"

namespace ernoma {
namespace {

constexpr double kLn2 = 0.69314718055994530942;

// the assembled moments live in (0, 1], so the per-term absolute floor keeps
// cancelling or vanishing terms from demanding impossible relative accuracy
QuadratureConfig strong_cfg() {
  QuadratureConfig cfg;
  cfg.rel_tol = 1e-11;
  cfg.abs_tol = 1e-13;
  cfg.node_budget = 8192;
  return cfg;
}

QuadratureConfig weak_cfg() {
  QuadratureConfig cfg;
  cfg.rel_tol = 1e-9;
  cfg.abs_tol = 3e-13;
  cfg.node_budget = 2048;
  return cfg;
}

// T1(alpha, beta) = [w^alpha / (Gamma(alpha) Gamma(nu))]
//                   * G^{2,2}_{2,2}(w | -alpha, 1-alpha ; 0, nu-alpha),
// w = omega_p / (beta q), the moment of (1 + q x)^-nu against the
// single-link ratio density with shape alpha and scale beta.
double t_one(double alpha, double beta, double nu, double q, double omega_p,
             bool* perturbed) {
  MeijerGSpec g;
  g.m = g.n = g.p = g.q = 2;
  g.a = {-alpha, 1.0 - alpha};
  g.b = {0.0, nu - alpha};
  g.z = omega_p / (beta * q);
  const double log_scale =
      alpha * std::log(g.z) - std::lgamma(alpha) - std::lgamma(nu);
  GResult r = meijer_g(g, strong_cfg(), log_scale);
  if (perturbed && r.perturbed) *perturbed = true;
  return r.value;
}

// T2: the cross (order-statistics) terms of the max-ratio density.
double t_two(int alpha1, int alpha2, double beta1, double beta2, double nu,
             double q, double omega_p, double omega_tilde, bool* perturbed) {
  double acc = 0.0;
  for (int tau = 0; tau < alpha2; ++tau) {
    const double a = alpha1 + tau;
    MeijerGSpec g;
    g.m = g.n = g.p = g.q = 2;
    g.a = {-a, 1.0 - a};
    g.b = {0.0, nu - a};
    g.z = omega_p / (omega_tilde * q);
    const double log_scale = a * std::log(omega_p / q) -
                             std::lgamma(static_cast<double>(alpha1)) -
                             std::lgamma(nu) - alpha1 * std::log(beta1) -
                             tau * std::log(beta2) - std::lgamma(tau + 1.0);
    GResult r = meijer_g(g, strong_cfg(), log_scale);
    if (perturbed && r.perturbed) *perturbed = true;
    acc += r.value;
  }
  return acc;
}

// T4(alpha, beta) = G^{1,2}_{2,1}(q beta | 1-nu, 1-alpha ; 0)
//                   / (Gamma(alpha) Gamma(nu)),
// the moment of (1 + q x)^-nu against a gamma density.
double t_four(double alpha, double beta, double nu, double q,
              bool* perturbed) {
  MeijerGSpec g;
  g.m = 1;
  g.n = 2;
  g.p = 2;
  g.q = 1;
  g.a = {1.0 - nu, 1.0 - alpha};
  g.b = {0.0};
  g.z = q * beta;
  const double log_scale = -std::lgamma(alpha) - std::lgamma(nu);
  GResult r = meijer_g(g, strong_cfg(), log_scale);
  if (perturbed && r.perturbed) *perturbed = true;
  return r.value;
}

double t_five(int alpha1, int alpha2, double beta1, double beta2, double nu,
              double q, double omega_tilde, bool* perturbed) {
  double acc = 0.0;
  for (int tau = 0; tau < alpha2; ++tau) {
    const double a = alpha1 + tau;
    MeijerGSpec g;
    g.m = 1;
    g.n = 2;
    g.p = 2;
    g.q = 1;
    g.a = {1.0 - nu, 1.0 - a};
    g.b = {0.0};
    g.z = q * omega_tilde;
    const double log_scale = a * std::log(omega_tilde) -
                             std::lgamma(static_cast<double>(alpha1)) -
                             std::lgamma(nu) - alpha1 * std::log(beta1) -
                             tau * std::log(beta2) - std::lgamma(tau + 1.0);
    GResult r = meijer_g(g, strong_cfg(), log_scale);
    if (perturbed && r.perturbed) *perturbed = true;
    acc += r.value;
  }
  return acc;
}

// T3 / T6: the weak-user bivariate terms. q_pair = (2/K) Qhat is the
// coefficient of the full-power factor, q_s = a_s Qhat the strong one.
// `ratio` selects the interference-normalized argument:
//   T3 (instantaneous IL): z2 = omega_p / (omega_tilde q_pair), extra
//     prefactor omega_p^A; T6 (statistical IL): z2 = 1 / (omega_tilde
//     q_pair), no omega_p.
double t_weak(int alpha1, int alpha2, double beta1, double beta2, double nu,
              double k_half_as, double q_pair, double omega_tilde,
              double omega_p, bool instantaneous_il, bool* perturbed) {
  const SignedLogGamma lg_neg_nu = ln_gamma_signed(-nu);
  double acc = 0.0;
  for (int tau = 0; tau < alpha2; ++tau) {
    const double a = alpha1 + tau;
    Egbmgf2Spec g;
    g.outer = {{1.0 - a}, {nu - a}};
    g.inner1 = {{1.0 + nu}, {0.0}};
    g.z1 = k_half_as;
    double log_scale = -std::lgamma(static_cast<double>(alpha1)) -
                       std::lgamma(nu) - lg_neg_nu.log_abs -
                       alpha1 * std::log(beta1) - tau * std::log(beta2) -
                       std::lgamma(tau + 1.0) - a * std::log(q_pair);
    if (instantaneous_il) {
      g.inner2 = {{-a}, {0.0}};
      g.z2 = omega_p / (omega_tilde * q_pair);
      log_scale += a * std::log(omega_p);
    } else {
      g.inner2 = {{}, {0.0}};
      g.z2 = 1.0 / (omega_tilde * q_pair);
    }
    GResult r = egbmgf(g, weak_cfg(), log_scale);
    if (perturbed && r.perturbed) *perturbed = true;
    acc += lg_neg_nu.sign * r.value;
  }
  return acc;
}

double normalized_power(CsiCase c, const PairStats& pair,
                        const ScenarioParams& sp) {
  return il_instantaneous(c) ? sp.i_hat() : sp.p_hat_stat(pair.pr.omega);
}

}  // namespace

const char* to_string(CsiCase c) {
  switch (c) {
    case CsiCase::II: return "II";
    case CsiCase::IS: return "IS";
    case CsiCase::SI: return "SI";
    case CsiCase::SS: return "SS";
  }
  return "?";
}

CsiCase csi_case_from_string(const std::string& s) {
  if (s == "II") return CsiCase::II;
  if (s == "IS") return CsiCase::IS;
  if (s == "SI") return CsiCase::SI;
  if (s == "SS") return CsiCase::SS;
  throw std::invalid_argument("unknown CSI case: " + s);
}

const char* to_string(Method m) {
  switch (m) {
    case Method::ClosedForm: return "closed-form";
    case Method::Quadrature: return "quadrature";
    case Method::MonteCarlo: return "monte-carlo";
  }
  return "?";
}

Method method_from_string(const std::string& s) {
  if (s == "closed-form") return Method::ClosedForm;
  if (s == "quadrature") return Method::Quadrature;
  if (s == "monte-carlo") return Method::MonteCarlo;
  throw std::invalid_argument("unknown method: " + s);
}

void ScenarioParams::validate() const {
  if (!(peak_interference > 0.0) || !(theta > 0.0) || !(bandwidth > 0.0) ||
      !(block_length > 0.0) || !(noise_psd > 0.0))
    throw std::domain_error("scenario parameters must be positive");
  if (!(violation_prob > 0.0 && violation_prob < 1.0))
    throw std::domain_error("delta must lie in (0, 1)");
  if (n_users < 2 || n_users % 2 != 0)
    throw std::domain_error("K must be an even positive integer");
}

double ScenarioParams::nu() const {
  return theta * block_length * pair_bandwidth() / kLn2;
}

double ScenarioParams::i_hat() const {
  return peak_interference / (noise_psd * pair_bandwidth());
}

double ScenarioParams::p_hat_stat(double omega_p) const {
  return transmit_power_statistical(omega_p, peak_interference,
                                    violation_prob) /
         (noise_psd * pair_bandwidth());
}

PowerSplit PowerSplit::make(double a_s, int n_users) {
  if (n_users < 2 || n_users % 2 != 0)
    throw std::domain_error("K must be an even positive integer");
  const double budget = 2.0 / n_users;
  if (!(a_s > 0.0) || !(a_s < budget - a_s))
    throw std::domain_error("power split requires 0 < a_s < a_w");
  return {a_s, budget - a_s};
}

double transmit_power_instantaneous(double g_p, double peak_interference) {
  if (!(g_p > 0.0)) throw std::domain_error("g_p must be positive");
  return peak_interference / g_p;
}

double transmit_power_statistical(double omega_p, double peak_interference,
                                  double delta) {
  if (!(omega_p > 0.0)) throw std::domain_error("omega_p must be positive");
  if (!(delta > 0.0 && delta < 1.0))
    throw std::domain_error("delta must lie in (0, 1)");
  return -peak_interference / (omega_p * std::log(delta));
}

double er_from_moment(double moment, double nu) {
  if (!(nu > 0.0)) throw std::domain_error("nu must be positive");
  if (!(moment > 0.0) || moment > 1.0 + 1e-12)
    throw std::domain_error("moment must lie in (0, 1]");
  return -std::log2(std::min(moment, 1.0)) / nu;
}

double er_closed_strong(CsiCase c, const PairStats& pair,
                        const ScenarioParams& sp, const PowerSplit& ps,
                        ErFlags* flags) {
  pair.validate();
  sp.validate();
  const double nu = sp.nu();
  const double q = ps.a_s * normalized_power(c, pair, sp);
  const auto& nl = pair.near_user;
  const auto& fl = pair.far_user;
  bool pert = false;
  double moment = 0.0;
  switch (c) {
    case CsiCase::II:
      moment = t_one(nl.n_antennas, nl.omega, nu, q, pair.pr.omega, &pert) +
               t_one(fl.n_antennas, fl.omega, nu, q, pair.pr.omega, &pert) -
               t_two(nl.n_antennas, fl.n_antennas, nl.omega, fl.omega, nu, q,
                     pair.pr.omega, pair.omega_tilde(), &pert) -
               t_two(fl.n_antennas, nl.n_antennas, fl.omega, nl.omega, nu, q,
                     pair.pr.omega, pair.omega_tilde(), &pert);
      break;
    case CsiCase::IS:
      moment = t_one(nl.n_antennas, nl.omega, nu, q, pair.pr.omega, &pert);
      break;
    case CsiCase::SI:
      moment = t_four(nl.n_antennas, nl.omega, nu, q, &pert) +
               t_four(fl.n_antennas, fl.omega, nu, q, &pert) -
               t_five(nl.n_antennas, fl.n_antennas, nl.omega, fl.omega, nu, q,
                      pair.omega_tilde(), &pert) -
               t_five(fl.n_antennas, nl.n_antennas, fl.omega, nl.omega, nu, q,
                      pair.omega_tilde(), &pert);
      break;
    case CsiCase::SS:
      moment = t_four(nl.n_antennas, nl.omega, nu, q, &pert);
      break;
  }
  if (flags) flags->perturbed |= pert;
  return er_from_moment(std::min(moment, 1.0), nu);
}

double er_closed_weak(CsiCase c, const PairStats& pair,
                      const ScenarioParams& sp, const PowerSplit& ps,
                      ErFlags* flags) {
  pair.validate();
  sp.validate();
  double nu = sp.nu();
  bool pert = false;
  // Gamma(-nu) and the bivariate contour both degenerate at integer nu.
  if (std::round(nu) >= 1.0 && std::abs(nu - std::round(nu)) < 1e-8) {
    nu += 1e-6;
    pert = true;
  }
  const double qhat = normalized_power(c, pair, sp);
  const double q_pair = (2.0 / sp.n_users) * qhat;
  const double k_half_as = 0.5 * sp.n_users * ps.a_s;
  const auto& nl = pair.near_user;
  const auto& fl = pair.far_user;
  const bool inst = il_instantaneous(c);
  const double moment =
      t_weak(nl.n_antennas, fl.n_antennas, nl.omega, fl.omega, nu, k_half_as,
             q_pair, pair.omega_tilde(), pair.pr.omega, inst, &pert) +
      t_weak(fl.n_antennas, nl.n_antennas, fl.omega, nl.omega, nu, k_half_as,
             q_pair, pair.omega_tilde(), pair.pr.omega, inst, &pert);
  if (flags) flags->perturbed |= pert;
  return er_from_moment(std::min(moment, 1.0), nu);
}

// ---------------------------------------------------------------------------
// quadrature route

namespace {

struct MomentIntegrand {
  CsiCase c;
  UserRole role;
  const PairStats* pair;
  double nu, qhat, a_s, a_w;

  double density(double x) const {
    const bool inst_sl = sl_instantaneous(c);
    if (il_instantaneous(c)) {
      if (role == UserRole::Strong)
        return pdf_ratio(x, inst_sl ? RatioKind::Max : RatioKind::Near,
                         *pair);
      return pdf_ratio(x, RatioKind::Min, *pair);
    }
    if (role == UserRole::Strong)
      return inst_sl ? pdf_max_gain(x, *pair)
                     : pdf_gain(x, pair->near_user);
    return pdf_min_gain(x, *pair);
  }

  double log1p_gamma(double x) const {
    if (role == UserRole::Strong) return std::log1p(a_s * qhat * x);
    const double gw = a_w * qhat * x / (1.0 + a_s * qhat * x);
    return std::log1p(gw);
  }

  double scale_hint() const {
    const double g = std::max(
        pair->near_user.n_antennas * pair->near_user.omega,
        pair->far_user.n_antennas * pair->far_user.omega);
    const double body = il_instantaneous(c) ? g / pair->pr.omega : g;
    // under a stringent delay exponent the weight (1+gamma)^-nu kills all
    // but x <~ 1/(nu q); start the octave scan there
    const double q = (role == UserRole::Strong ? a_s : a_w) * qhat;
    return std::min(body, 3.0 / (std::max(nu, 1.0) * q));
  }
};

MomentIntegrand make_integrand(CsiCase c, UserRole role, const PairStats& pair,
                               const ScenarioParams& sp,
                               const PowerSplit& ps) {
  pair.validate();
  sp.validate();
  return {c, role, &pair, sp.nu(), normalized_power(c, pair, sp), ps.a_s,
          ps.a_w};
}

}  // namespace

double moment_quadrature(CsiCase c, UserRole role, const PairStats& pair,
                         const ScenarioParams& sp, const PowerSplit& ps) {
  const MomentIntegrand mi = make_integrand(c, role, pair, sp, ps);
  auto f = [&](double x) {
    return std::exp(-mi.nu * mi.log1p_gamma(x)) * mi.density(x);
  };
  return quad::integrate_half_line(f, 1e-10, mi.scale_hint()).value;
}

double er_quadrature(CsiCase c, UserRole role, const PairStats& pair,
                     const ScenarioParams& sp, const PowerSplit& ps) {
  const MomentIntegrand mi = make_integrand(c, role, pair, sp, ps);
  if (mi.nu < 1e-3) {
    // near the no-delay-constraint limit, integrate moment - 1 to full
    // precision instead of losing digits to 1 - O(nu)
    auto f = [&](double x) {
      return std::expm1(-mi.nu * mi.log1p_gamma(x)) * mi.density(x);
    };
    const double delta = quad::integrate_half_line(f, 1e-10,
                                                   mi.scale_hint()).value;
    return -std::log1p(std::max(delta, -1.0 + 1e-300)) / (mi.nu * kLn2);
  }
  return er_from_moment(
      std::min(moment_quadrature(c, role, pair, sp, ps), 1.0), mi.nu);
}

double mean_log_rate_quadrature(CsiCase c, UserRole role,
                                const PairStats& pair,
                                const ScenarioParams& sp,
                                const PowerSplit& ps) {
  const MomentIntegrand mi = make_integrand(c, role, pair, sp, ps);
  auto f = [&](double x) { return mi.log1p_gamma(x) / kLn2 * mi.density(x); };
  return quad::integrate_half_line(f, 1e-10, mi.scale_hint()).value;
}

}  // namespace ernoma
