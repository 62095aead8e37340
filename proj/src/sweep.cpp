#include "ernoma/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <thread>

#include "ernoma/monte_carlo.hpp"
#include "ernoma/oma_baseline.hpp"
#include "ernoma/power_allocation.hpp"
#include "ernoma/user_pairing.hpp"
#include "json.hpp"

namespace ernoma {
namespace {

using nlohmann::json;

int case_id(CsiCase c) { return static_cast<int>(c); }

std::string axis_name(SweepSpec::Axis a) {
  return a == SweepSpec::Axis::IdB ? "I_dB" : "theta";
}

std::string axis_file_tag(SweepSpec::Axis a) {
  return a == SweepSpec::Axis::IdB ? "IdB" : "theta";
}

std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

std::string ScenarioSpec::label() const {
  return std::to_string(n_users) + "_" + std::to_string(n_antennas);
}

void SweepSpec::validate() const {
  if (grid.empty()) throw ConfigError("sweep grid must be non-empty");
  for (size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1]))
      throw ConfigError("sweep grid must be strictly increasing");
  if (scenarios.empty()) throw ConfigError("at least one scenario required");
  for (const auto& sc : scenarios) {
    if (sc.n_users < 2 || sc.n_users % 2 != 0)
      throw ConfigError("K must be even (scenario " + sc.label() + ")");
    if (sc.n_antennas < 1) throw ConfigError("N must be >= 1");
    if (static_cast<int>(sc.distances.size()) != sc.n_users)
      throw ConfigError("scenario " + sc.label() +
                        " needs one distance per user");
    for (double d : sc.distances)
      if (!(d > 0.0)) throw ConfigError("distances must be positive");
  }
  if (cases.empty()) throw ConfigError("at least one CSI case required");
  if (methods.empty()) throw ConfigError("at least one method required");
  if (!(delta > 0.0 && delta < 1.0))
    throw ConfigError("delta must lie in (0, 1)");
  if (!(bandwidth > 0.0 && block_length > 0.0 && noise_psd > 0.0))
    throw ConfigError("B, T, N0 must be positive");
  if (!(d_p > 0.0)) throw ConfigError("d_p must be positive");
  if (samples < 10000) throw ConfigError("samples must be at least 10^4");
  if (streams < 1 || threads < 1)
    throw ConfigError("streams and threads must be >= 1");
  if (axis == Axis::Theta && !(grid.front() > 0.0))
    throw ConfigError("theta grid must be positive");
}

std::vector<double> default_axis_grid(SweepSpec::Axis axis) {
  std::vector<double> g;
  if (axis == SweepSpec::Axis::IdB) {
    for (int i = -20; i <= 0; i += 2) g.push_back(i);
  } else {
    // log grid over [0.01, 1000], 4 points per decade
    for (int i = -8; i <= 12; ++i) g.push_back(std::pow(10.0, 0.25 * i));
  }
  return g;
}

namespace {

const std::set<std::string> kKnownKeys = {
    "axis",      "grid",    "I_dB",     "theta",   "B",       "T",
    "N0",        "delta",   "pathloss", "d_p",     "scenarios",
    "cases",     "methods", "out",      "seed",    "samples", "streams",
    "threads"};

const std::set<std::string> kKnownPathlossKeys = {"PL_ref_dB", "d_ref",
                                                  "exponent"};
const std::set<std::string> kKnownScenarioKeys = {"K", "N", "distances"};

std::vector<ScenarioSpec> default_scenarios() {
  return {{2, 1, {10.0, 50.0}},
          {2, 4, {10.0, 50.0}},
          {4, 1, {10.0, 12.0, 50.0, 60.0}},
          {4, 4, {10.0, 12.0, 50.0, 60.0}}};
}

}  // namespace

SweepSpec validate_config_text(const std::string& json_text) {
  json cfg;
  try {
    cfg = json_text.empty() ? json::object() : json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!cfg.is_object()) throw ConfigError("config root must be an object");
  for (const auto& [key, _] : cfg.items())
    if (!kKnownKeys.count(key)) throw ConfigError("unknown config key: " + key);

  SweepSpec spec;
  auto note = [&](const std::string& s) { spec.applied_defaults.push_back(s); };

  if (cfg.contains("axis")) {
    const std::string a = cfg["axis"].get<std::string>();
    if (a == "I_dB")
      spec.axis = SweepSpec::Axis::IdB;
    else if (a == "theta")
      spec.axis = SweepSpec::Axis::Theta;
    else
      throw ConfigError("axis must be 'I_dB' or 'theta'");
  } else {
    note("axis = I_dB");
  }

  if (cfg.contains("grid")) {
    spec.grid = cfg["grid"].get<std::vector<double>>();
  } else {
    spec.grid = default_axis_grid(spec.axis);
    note(spec.axis == SweepSpec::Axis::IdB ? "grid = -20:2:0 dB"
                                           : "grid = logspace(0.01, 1000)");
  }

  auto take = [&](const char* key, double& dst, const char* shown) {
    if (cfg.contains(key))
      dst = cfg[key].get<double>();
    else
      note(std::string(shown));
  };
  take("I_dB", spec.fixed_i_db, "I_dB = 0");
  take("theta", spec.fixed_theta, "theta = 1");
  take("B", spec.bandwidth, "B = 1 Hz");
  take("T", spec.block_length, "T = 1 s");
  take("N0", spec.noise_psd, "N0 = 1 W/Hz");
  take("delta", spec.delta, "delta = 0.1");
  take("d_p", spec.d_p, "d_p = 40 m");

  if (cfg.contains("pathloss")) {
    const json& pl = cfg["pathloss"];
    for (const auto& [key, _] : pl.items())
      if (!kKnownPathlossKeys.count(key))
        throw ConfigError("unknown pathloss key: " + key);
    if (pl.contains("PL_ref_dB"))
      spec.pathloss.pl_ref_db = pl["PL_ref_dB"].get<double>();
    if (pl.contains("d_ref")) spec.pathloss.d_ref = pl["d_ref"].get<double>();
    if (pl.contains("exponent"))
      spec.pathloss.exponent = pl["exponent"].get<double>();
  } else {
    note("pathloss = {PL_ref_dB: -30, d_ref: 1 m, exponent: 2.5}");
  }

  if (cfg.contains("scenarios")) {
    spec.scenarios.clear();
    for (const json& s : cfg["scenarios"]) {
      for (const auto& [key, _] : s.items())
        if (!kKnownScenarioKeys.count(key))
          throw ConfigError("unknown scenario key: " + key);
      ScenarioSpec sc;
      if (!s.contains("K") || !s.contains("N") || !s.contains("distances"))
        throw ConfigError("each scenario needs K, N and distances");
      sc.n_users = s["K"].get<int>();
      sc.n_antennas = s["N"].get<int>();
      sc.distances = s["distances"].get<std::vector<double>>();
      spec.scenarios.push_back(std::move(sc));
    }
  } else {
    spec.scenarios = default_scenarios();
    note("scenarios = (K,N) in {2,4}x{1,4}, users at {10,50}/{10,12,50,60} m");
  }

  if (cfg.contains("cases")) {
    spec.cases.clear();
    for (const json& c : cfg["cases"])
      spec.cases.push_back(csi_case_from_string(c.get<std::string>()));
  } else {
    spec.cases = {CsiCase::II, CsiCase::IS, CsiCase::SI, CsiCase::SS};
    note("cases = II, IS, SI, SS");
  }

  if (cfg.contains("methods")) {
    spec.methods.clear();
    for (const json& m : cfg["methods"])
      spec.methods.push_back(method_from_string(m.get<std::string>()));
  } else {
    spec.methods = {Method::ClosedForm};
    note("methods = closed-form");
  }

  if (cfg.contains("out"))
    spec.out_dir = cfg["out"].get<std::string>();
  else
    note("out = sweep_out");
  if (cfg.contains("seed"))
    spec.seed = cfg["seed"].get<std::uint64_t>();
  else
    note("seed = 1");
  if (cfg.contains("samples"))
    spec.samples = cfg["samples"].get<long long>();
  else
    note("samples = 1000000");
  if (cfg.contains("streams"))
    spec.streams = cfg["streams"].get<int>();
  else
    note("streams = 8");
  if (cfg.contains("threads")) spec.threads = cfg["threads"].get<int>();

  spec.validate();
  return spec;
}

SweepSpec validate_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return validate_config_text(text);
}

SystemPoint evaluate_system(CsiCase c, Method method,
                            const ScenarioSpec& scenario,
                            const ScenarioParams& sp_base,
                            const PathLossParams& pl, double d_p,
                            std::uint64_t mc_seed, long long mc_samples,
                            int mc_streams, int mc_threads) {
  ScenarioParams sp = sp_base;
  sp.n_users = scenario.n_users;
  sp.validate();

  const double omega_p = path_loss_linear(d_p, pl);
  const auto pairs = pair_users(scenario.distances);

  SystemPoint out;
  for (size_t pi = 0; pi < pairs.size(); ++pi) {
    PairStats pair;
    pair.near_user = {path_loss_linear(pairs[pi].near_distance, pl),
                      scenario.n_antennas};
    pair.far_user = {path_loss_linear(pairs[pi].far_distance, pl),
                     scenario.n_antennas};
    pair.pr = {omega_p, 1};

    // the split always comes from the deterministic quadrature-path search,
    // so all methods report the same operating point
    PowerAllocationResult alloc = match_strong_user(c, pair, sp);
    out.clamped |= alloc.clamped;

    switch (method) {
      case Method::ClosedForm: {
        ErFlags flags;
        out.noma_sum += er_closed_strong(c, pair, sp, alloc.split, &flags) +
                        er_closed_weak(c, pair, sp, alloc.split, &flags);
        out.perturbed |= flags.perturbed;
        out.oma_sum += oma_effective_rate(c, UserRole::Strong, pair, sp) +
                       oma_effective_rate(c, UserRole::Weak, pair, sp);
        break;
      }
      case Method::Quadrature:
        out.noma_sum +=
            er_quadrature(c, UserRole::Strong, pair, sp, alloc.split) +
            er_quadrature(c, UserRole::Weak, pair, sp, alloc.split);
        out.oma_sum += oma_effective_rate(c, UserRole::Strong, pair, sp) +
                       oma_effective_rate(c, UserRole::Weak, pair, sp);
        break;
      case Method::MonteCarlo: {
        McConfig mc;
        mc.samples = mc_samples;
        mc.streams = mc_streams;
        mc.threads = mc_threads;
        mc.seed = split_seed(mc_seed, pi);
        const PairMoments m = mc_pair_moments(c, pair, sp, alloc.split, mc);
        const double nu = sp.nu();
        out.noma_sum += er_from_moment(std::min(m.noma_strong.mean, 1.0), nu) +
                        er_from_moment(std::min(m.noma_weak.mean, 1.0), nu);
        out.oma_sum += er_from_moment(std::min(m.oma_strong.mean, 1.0), nu) +
                       er_from_moment(std::min(m.oma_weak.mean, 1.0), nu);
        break;
      }
    }
  }
  return out;
}

std::vector<std::string> run_sweep(const SweepSpec& spec) {
  spec.validate();
  namespace fs = std::filesystem;

  std::vector<std::string> written;
  for (Method method : spec.methods) {
    const fs::path dir = fs::path(spec.out_dir) / to_string(method);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw ConfigError("cannot create output directory: " +
                              dir.string());

    for (CsiCase c : spec.cases) {
      // results[point][scenario]
      std::vector<std::vector<SystemPoint>> results(
          spec.grid.size(), std::vector<SystemPoint>(spec.scenarios.size()));

      auto eval_point = [&](size_t gi, size_t si) {
        ScenarioParams sp;
        sp.bandwidth = spec.bandwidth;
        sp.block_length = spec.block_length;
        sp.noise_psd = spec.noise_psd;
        sp.violation_prob = spec.delta;
        if (spec.axis == SweepSpec::Axis::IdB) {
          sp.peak_interference = std::pow(10.0, spec.grid[gi] / 10.0);
          sp.theta = spec.fixed_theta;
        } else {
          sp.peak_interference = std::pow(10.0, spec.fixed_i_db / 10.0);
          sp.theta = spec.grid[gi];
        }
        // per-point seed independent of evaluation order
        const std::uint64_t seed = split_seed(
            split_seed(split_seed(spec.seed, case_id(c)), gi), si);
        results[gi][si] =
            evaluate_system(c, method, spec.scenarios[si], sp, spec.pathloss,
                            spec.d_p, seed, spec.samples, spec.streams, 1);
      };

      const size_t jobs = spec.grid.size() * spec.scenarios.size();
      if (spec.threads <= 1) {
        for (size_t j = 0; j < jobs; ++j)
          eval_point(j / spec.scenarios.size(), j % spec.scenarios.size());
      } else {
        std::vector<std::thread> pool;
        const int workers = std::min<size_t>(spec.threads, jobs);
        for (int w = 0; w < workers; ++w)
          pool.emplace_back([&, w] {
            for (size_t j = w; j < jobs; j += workers)
              eval_point(j / spec.scenarios.size(),
                         j % spec.scenarios.size());
          });
        for (auto& t : pool) t.join();
      }

      const fs::path file =
          dir / ("Data_Rate_vs_" + axis_file_tag(spec.axis) + "_" +
                 std::string(to_string(c)) + ".csv");
      std::ofstream outf(file);
      if (!outf) throw ConfigError("cannot write " + file.string());
      outf << axis_name(spec.axis);
      for (const auto& sc : spec.scenarios)
        outf << ",NOMA_" << sc.label() << ",OMA_" << sc.label();
      outf << "\n";
      for (size_t gi = 0; gi < spec.grid.size(); ++gi) {
        outf << fmt12(spec.grid[gi]);
        for (size_t si = 0; si < spec.scenarios.size(); ++si)
          outf << "," << fmt12(results[gi][si].noma_sum) << ","
               << fmt12(results[gi][si].oma_sum);
        outf << "\n";
      }
      written.push_back(file.string());
    }
  }
  return written;
}

}  // namespace ernoma
