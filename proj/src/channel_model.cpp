#include "ernoma/channel_model.hpp"

#include <cmath>
#include <stdexcept>

namespace ernoma {
namespace {

void require_nonnegative(double x) {
  if (!(x >= 0.0)) throw std::domain_error("gain argument must be >= 0");
}

// exp(k ln x + rest) with the x = 0, k = 0 corner defined as exp(rest);
// keeps the densities finite for any antenna count.
double pow_exp(double x, double k, double rest) {
  if (x == 0.0) return k == 0.0 ? std::exp(rest) : 0.0;
  return std::exp(k * std::log(x) + rest);
}

}  // namespace

void PathLossParams::validate() const {
  if (!(d_ref > 0.0)) throw std::domain_error("d_ref must be positive");
  if (!(exponent > 0.0))
    throw std::domain_error("path loss exponent must be positive");
}

double path_loss_linear(double d, const PathLossParams& p) {
  p.validate();
  if (!(d > 0.0)) throw std::domain_error("distance must be positive");
  const double pl_db =
      p.pl_ref_db - 10.0 * p.exponent * std::log10(d / p.d_ref);
  return std::pow(10.0, pl_db / 10.0);
}

void LinkStats::validate() const {
  if (!(omega > 0.0)) throw std::domain_error("omega must be positive");
  if (n_antennas < 1) throw std::domain_error("antenna count must be >= 1");
}

void PairStats::validate() const {
  near_user.validate();
  far_user.validate();
  pr.validate();
  if (pr.n_antennas != 1)
    throw std::domain_error("primary-receiver link is single-antenna");
}

double pdf_gain(double x, const LinkStats& s) {
  s.validate();
  require_nonnegative(x);
  const int n = s.n_antennas;
  return pow_exp(x, n - 1,
                 -x / s.omega - std::lgamma(n) - n * std::log(s.omega));
}

double cdf_gain(double x, const LinkStats& s) {
  s.validate();
  require_nonnegative(x);
  double survival = 0.0;
  for (int tau = 0; tau < s.n_antennas; ++tau)
    survival += pow_exp(x, tau,
                        -x / s.omega - std::lgamma(tau + 1.0) -
                            tau * std::log(s.omega));
  return 1.0 - survival;
}

double pdf_min_gain(double x, const PairStats& pair) {
  pair.validate();
  require_nonnegative(x);
  const auto& nl = pair.near_user;
  const auto& fl = pair.far_user;
  const double inv_ot = 1.0 / pair.omega_tilde();
  double sum = 0.0;
  for (int l = 0; l < fl.n_antennas; ++l)
    sum += pow_exp(x, nl.n_antennas + l - 1,
                   -x * inv_ot - std::lgamma(nl.n_antennas) -
                       nl.n_antennas * std::log(nl.omega) -
                       l * std::log(fl.omega) - std::lgamma(l + 1.0));
  for (int l = 0; l < nl.n_antennas; ++l)
    sum += pow_exp(x, fl.n_antennas + l - 1,
                   -x * inv_ot - std::lgamma(fl.n_antennas) -
                       fl.n_antennas * std::log(fl.omega) -
                       l * std::log(nl.omega) - std::lgamma(l + 1.0));
  return sum;
}

double pdf_max_gain(double x, const PairStats& pair) {
  return pdf_gain(x, pair.near_user) + pdf_gain(x, pair.far_user) -
         pdf_min_gain(x, pair);
}

namespace {

// single-link ratio density f_{g/g_p}, rederived from the transformation
// integral (the paper's printed form has a garbled denominator)
double pdf_ratio_single(double x, const LinkStats& s, const LinkStats& pr) {
  const int n = s.n_antennas;
  const double bracket_log =
      -(n + 1.0) * std::log(x / s.omega + 1.0 / pr.omega);
  return pow_exp(x, n - 1,
                 std::log(static_cast<double>(n)) - n * std::log(s.omega) -
                     std::log(pr.omega) + bracket_log);
}

double pdf_ratio_min(double x, const PairStats& pair) {
  const auto& nl = pair.near_user;
  const auto& fl = pair.far_user;
  const double ot = pair.omega_tilde();
  const double omp = pair.pr.omega;
  double acc = 0.0;
  for (int l = 0; l < fl.n_antennas; ++l) {
    const int a = nl.n_antennas + l;
    acc += pow_exp(x, a - 1,
                   std::lgamma(a + 1.0) - std::lgamma(nl.n_antennas) -
                       nl.n_antennas * std::log(nl.omega) -
                       l * std::log(fl.omega) - std::log(omp) -
                       std::lgamma(l + 1.0) -
                       (a + 1.0) * std::log(x / ot + 1.0 / omp));
  }
  for (int l = 0; l < nl.n_antennas; ++l) {
    const int a = fl.n_antennas + l;
    acc += pow_exp(x, a - 1,
                   std::lgamma(a + 1.0) - std::lgamma(fl.n_antennas) -
                       fl.n_antennas * std::log(fl.omega) -
                       l * std::log(nl.omega) - std::log(omp) -
                       std::lgamma(l + 1.0) -
                       (a + 1.0) * std::log(x / ot + 1.0 / omp));
  }
  return acc;
}

}  // namespace

double pdf_ratio(double x, RatioKind kind, const PairStats& pair) {
  pair.validate();
  require_nonnegative(x);
  switch (kind) {
    case RatioKind::Near:
      return pdf_ratio_single(x, pair.near_user, pair.pr);
    case RatioKind::Far:
      return pdf_ratio_single(x, pair.far_user, pair.pr);
    case RatioKind::Min:
      return pdf_ratio_min(x, pair);
    case RatioKind::Max:
      return pdf_ratio_single(x, pair.near_user, pair.pr) +
             pdf_ratio_single(x, pair.far_user, pair.pr) -
             pdf_ratio_min(x, pair);
  }
  throw std::logic_error("unreachable");
}

std::uint64_t split_seed(std::uint64_t master, std::uint64_t index) {
  // splitmix64 over master + golden-ratio stride
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

FadingBlock sample_block(Rng& rng, const PairStats& pair) {
  FadingBlock b;
  b.g_p = rng.exponential(pair.pr.omega);
  b.g_n = rng.gamma_int(pair.near_user.n_antennas, pair.near_user.omega);
  b.g_f = rng.gamma_int(pair.far_user.n_antennas, pair.far_user.omega);
  b.g_s = std::max(b.g_n, b.g_f);
  b.g_w = std::min(b.g_n, b.g_f);
  return b;
}

}  // namespace ernoma
