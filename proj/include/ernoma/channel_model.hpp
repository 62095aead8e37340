#pragma once

#include <cstdint>
#include <random>

namespace ernoma {

struct PathLossParams {
  double pl_ref_db = -30.0;  // path loss at the reference distance, dB
  double d_ref = 1.0;        // reference distance, m
  double exponent = 2.5;
  void validate() const;
};

// Linear power gain at distance d: 10^((PL_ref - 10 xi log10(d/d_ref))/10).
double path_loss_linear(double d, const PathLossParams& p);

// One MRC-combined link: sum of n_antennas i.i.d. |CN(0, omega)|^2 terms,
// i.e. gamma-distributed with integer shape n_antennas and scale omega.
// All omegas are linear (dB conversion happens at the config boundary only).
struct LinkStats {
  double omega = 1.0;
  int n_antennas = 1;
  void validate() const;
};

struct PairStats {
  LinkStats near_user;
  LinkStats far_user;
  LinkStats pr;  // transmitter-to-primary-receiver link, single antenna
  // harmonic combiner for the cross terms of the order statistics
  double omega_tilde() const {
    return near_user.omega * far_user.omega /
           (near_user.omega + far_user.omega);
  }
  void validate() const;
};

double pdf_gain(double x, const LinkStats& s);
double cdf_gain(double x, const LinkStats& s);

double pdf_max_gain(double x, const PairStats& pair);
double pdf_min_gain(double x, const PairStats& pair);

// Densities of (combined gain) / g_p, the gain ratios that drive the
// instantaneous-interference-CSI cases.
enum class RatioKind { Near, Far, Max, Min };
double pdf_ratio(double x, RatioKind kind, const PairStats& pair);

// ---------------------------------------------------------------------------
// Sampling

// Deterministic per-stream seed derivation (splitmix64 chain).
std::uint64_t split_seed(std::uint64_t master, std::uint64_t index);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  // uniform on the open interval (0, 1)
  double uniform01() {
    return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1p-53;
  }
  double exponential(double mean) { return -mean * std::log(uniform01()); }
  // exact gamma with integer shape: sum of `shape` exponentials
  double gamma_int(int shape, double scale) {
    double acc = 0.0;
    for (int i = 0; i < shape; ++i) acc += std::log(uniform01());
    return -scale * acc;
  }

 private:
  std::mt19937_64 eng_;
};

struct FadingBlock {
  double g_p, g_n, g_f, g_s, g_w;
};

FadingBlock sample_block(Rng& rng, const PairStats& pair);

}  // namespace ernoma
