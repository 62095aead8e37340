// Sweep driver: evaluates the sum effective rate of the NOMA spectrum
// sharing system (and its OMA baseline) over a grid of peak-interference or
// delay-exponent values and writes one CSV per (method, CSI case).
#include <algorithm>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ernoma/sweep.hpp"

namespace {

void fail(const std::string& code, const std::string& message) {
  // single machine-readable error line on stderr
  std::fprintf(stderr, "error: {\"code\":\"%s\",\"message\":\"%s\"}\n",
               code.c_str(), message.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"NOMA underlay spectrum-sharing effective-rate sweeps"};
  std::string config_path;
  std::string axis;
  std::vector<std::string> cases, methods;
  std::string out_dir;
  std::uint64_t seed = 0;
  long long samples = 0;
  int threads = 0;
  bool validate_only = false;
  bool verbose = false;

  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--axis", axis, "sweep axis: I_dB or theta");
  app.add_option("--cases", cases, "CSI cases to run (II IS SI SS)");
  app.add_option("--methods", methods,
                 "methods to run (closed-form quadrature monte-carlo)");
  app.add_option("--out", out_dir, "output directory");
  auto* seed_opt =
      app.add_option("--seed", seed, "master seed for the Monte Carlo method");
  app.add_option("--samples", samples, "Monte Carlo samples per point");
  app.add_option("--threads", threads, "worker threads over sweep points");
  app.add_flag("--validate-only", validate_only,
               "parse and report the normalized config, then exit");
  app.add_flag("-v,--verbose", verbose, "report inferred config defaults");

  CLI11_PARSE(app, argc, argv);

  try {
    ernoma::SweepSpec spec = config_path.empty()
                                 ? ernoma::validate_config_text("")
                                 : ernoma::validate_config(config_path);
    if (!axis.empty()) {
      ernoma::SweepSpec::Axis want;
      if (axis == "I_dB")
        want = ernoma::SweepSpec::Axis::IdB;
      else if (axis == "theta")
        want = ernoma::SweepSpec::Axis::Theta;
      else
        throw ernoma::ConfigError("axis must be 'I_dB' or 'theta'");
      const bool grid_was_default = std::any_of(
          spec.applied_defaults.begin(), spec.applied_defaults.end(),
          [](const std::string& s) { return s.rfind("grid", 0) == 0; });
      if (want != spec.axis && grid_was_default)
        spec.grid = ernoma::default_axis_grid(want);
      spec.axis = want;
    }
    if (!cases.empty()) {
      spec.cases.clear();
      for (const auto& c : cases)
        spec.cases.push_back(ernoma::csi_case_from_string(c));
    }
    if (!methods.empty()) {
      spec.methods.clear();
      for (const auto& m : methods)
        spec.methods.push_back(ernoma::method_from_string(m));
    }
    if (!out_dir.empty()) spec.out_dir = out_dir;
    if (seed_opt->count() > 0) spec.seed = seed;
    if (samples > 0) spec.samples = samples;
    if (threads > 0) spec.threads = threads;
    spec.validate();

    if (verbose || validate_only)
      for (const auto& line : spec.applied_defaults)
        std::fprintf(stderr, "default: %s\n", line.c_str());
    if (validate_only) return 0;

    const auto files = ernoma::run_sweep(spec);
    for (const auto& f : files) std::printf("%s\n", f.c_str());
    return 0;
  } catch (const ernoma::ConfigError& e) {
    fail("config", e.what());
    return 2;
  } catch (const std::exception& e) {
    fail("runtime", e.what());
    return 1;
  }
}
