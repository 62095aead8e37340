#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ernoma/channel_model.hpp"
#include "ernoma/effective_rate.hpp"

namespace ernoma {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ScenarioSpec {
  int n_users = 2;     // K
  int n_antennas = 1;  // N, common to all users in a scenario
  std::vector<double> distances;  // meters, one per user
  std::string label() const;      // "K_N", e.g. "2_4"
};

struct SweepSpec {
  enum class Axis { IdB, Theta };
  Axis axis = Axis::IdB;
  std::vector<double> grid;  // axis values, strictly increasing
  double fixed_i_db = 0.0;   // used when axis == Theta
  double fixed_theta = 1.0;  // used when axis == IdB

  double bandwidth = 1.0;
  double block_length = 1.0;
  double noise_psd = 1.0;
  double delta = 0.1;
  PathLossParams pathloss;
  double d_p = 40.0;  // transmitter-to-primary-receiver distance

  std::vector<ScenarioSpec> scenarios;
  std::vector<CsiCase> cases;
  std::vector<Method> methods;

  std::string out_dir = "sweep_out";
  std::uint64_t seed = 1;
  long long samples = 1000000;
  int streams = 8;
  int threads = 1;

  std::vector<std::string> applied_defaults;  // filled by validate_config
  void validate() const;
};

// Parse and normalize a JSON config; unknown keys and out-of-range values
// raise ConfigError, absent keys take the reference-scenario defaults and
// are recorded in applied_defaults.
SweepSpec validate_config(const std::string& path);
SweepSpec validate_config_text(const std::string& json_text);

// The default grid for an axis: -20:2:0 dB, or a log grid on [0.01, 1000].
std::vector<double> default_axis_grid(SweepSpec::Axis axis);

// Whole-system sum ER (over all pairs) for one scenario at one operating
// point, with the power split matched per pair by the bisection scheme.
struct SystemPoint {
  double noma_sum = 0.0;
  double oma_sum = 0.0;
  bool clamped = false;
  bool perturbed = false;
};
SystemPoint evaluate_system(CsiCase c, Method method,
                            const ScenarioSpec& scenario,
                            const ScenarioParams& sp,
                            const PathLossParams& pl, double d_p,
                            std::uint64_t mc_seed, long long mc_samples,
                            int mc_streams, int mc_threads = 1);

// Runs the sweep and writes one CSV per (method, case) under
// out_dir/<method>/. Returns the list of files written.
std::vector<std::string> run_sweep(const SweepSpec& spec);

}  // namespace ernoma
