#pragma once

#include <string>

#include "ernoma/channel_model.hpp"
#include "ernoma/special_functions.hpp"

namespace ernoma {

// Interference-link CSI x secondary-link CSI at the transmitter.
enum class CsiCase { II, IS, SI, SS };

inline bool il_instantaneous(CsiCase c) {
  return c == CsiCase::II || c == CsiCase::IS;
}
inline bool sl_instantaneous(CsiCase c) {
  return c == CsiCase::II || c == CsiCase::SI;
}
const char* to_string(CsiCase c);
CsiCase csi_case_from_string(const std::string& s);

enum class UserRole { Strong, Weak };
enum class Method { ClosedForm, Quadrature, MonteCarlo };
const char* to_string(Method m);
Method method_from_string(const std::string& s);

struct ScenarioParams {
  double peak_interference = 1.0;  // I, watts
  double theta = 1.0;              // delay QoS exponent
  double bandwidth = 1.0;          // B, Hz (total secondary bandwidth)
  double block_length = 1.0;       // T, s
  double noise_psd = 1.0;          // N0, W/Hz
  double violation_prob = 0.1;     // delta, used by the statistical-IL cases
  int n_users = 2;                 // K, even

  double pair_bandwidth() const { return 2.0 * bandwidth / n_users; }
  double nu() const;                        // theta*T*B_pair / ln 2
  double i_hat() const;                     // I / (N0 * B_pair)
  double p_hat_stat(double omega_p) const;  // normalized statistical power
  void validate() const;
};

struct PowerSplit {
  double a_s;
  double a_w;
  // enforces 0 < a_s < a_w and a_s + a_w = 2/K
  static PowerSplit make(double a_s, int n_users);
};

struct ErFlags {
  bool perturbed = false;
  bool clamped = false;
};

struct ErReport {
  double r_strong = 0.0;
  double r_weak = 0.0;
  double r_sum = 0.0;
  Method method = Method::ClosedForm;
  CsiCase csi = CsiCase::II;
  ErFlags flags;
};

// Instantaneous-IL power rule P_t(g_p) = I / g_p.
double transmit_power_instantaneous(double g_p, double peak_interference);
// Statistical-IL power cap: Pr(g_p P > I) <= delta, exponential g_p.
double transmit_power_statistical(double omega_p, double peak_interference,
                                  double delta);

// R = -(1/nu) log2(moment), moment = E[(1+gamma)^-nu] in (0, 1].
double er_from_moment(double moment, double nu);

// Closed forms (Mellin-Barnes path through the special-function module).
double er_closed_strong(CsiCase c, const PairStats& pair,
                        const ScenarioParams& sp, const PowerSplit& ps,
                        ErFlags* flags = nullptr);
double er_closed_weak(CsiCase c, const PairStats& pair,
                      const ScenarioParams& sp, const PowerSplit& ps,
                      ErFlags* flags = nullptr);

// Adaptive real-axis quadrature of the defining integrals; the cross-check
// route for the closed forms.
double er_quadrature(CsiCase c, UserRole role, const PairStats& pair,
                     const ScenarioParams& sp, const PowerSplit& ps);

// E[(1+gamma)^-nu] by quadrature (the moment behind er_quadrature).
double moment_quadrature(CsiCase c, UserRole role, const PairStats& pair,
                         const ScenarioParams& sp, const PowerSplit& ps);
// E[log2(1+gamma)] by quadrature (average achievable rate; Jensen bound and
// the theta -> 0 limit).
double mean_log_rate_quadrature(CsiCase c, UserRole role,
                                const PairStats& pair,
                                const ScenarioParams& sp,
                                const PowerSplit& ps);

}  // namespace ernoma
