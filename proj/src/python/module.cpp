#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ernoma/monte_carlo.hpp"
#include "ernoma/oma_baseline.hpp"
#include "ernoma/power_allocation.hpp"
#include "ernoma/special_functions.hpp"
#include "ernoma/sweep.hpp"
#include "ernoma/user_pairing.hpp"

namespace py = pybind11;
using namespace ernoma;

namespace {

CsiCase to_case(const std::string& s) { return csi_case_from_string(s); }
UserRole to_role(const std::string& s) {
  if (s == "strong") return UserRole::Strong;
  if (s == "weak") return UserRole::Weak;
  throw std::invalid_argument("role must be 'strong' or 'weak'");
}

}  // namespace

PYBIND11_MODULE(_ernoma, m) {
  m.doc() = "Delay-constrained effective rates of NOMA underlay spectrum "
            "sharing over Rayleigh fading";

  py::register_exception<ConfigError>(m, "ConfigError");
  py::register_exception<AccuracyError>(m, "AccuracyError");

  py::class_<PathLossParams>(m, "PathLossParams")
      .def(py::init<>())
      .def(py::init([](double pl_ref_db, double d_ref, double exponent) {
             return PathLossParams{pl_ref_db, d_ref, exponent};
           }),
           py::arg("pl_ref_db") = -30.0, py::arg("d_ref") = 1.0,
           py::arg("exponent") = 2.5)
      .def_readwrite("pl_ref_db", &PathLossParams::pl_ref_db)
      .def_readwrite("d_ref", &PathLossParams::d_ref)
      .def_readwrite("exponent", &PathLossParams::exponent);

  py::class_<LinkStats>(m, "LinkStats")
      .def(py::init([](double omega, int n_antennas) {
             return LinkStats{omega, n_antennas};
           }),
           py::arg("omega"), py::arg("n_antennas") = 1)
      .def_readwrite("omega", &LinkStats::omega)
      .def_readwrite("n_antennas", &LinkStats::n_antennas);

  py::class_<PairStats>(m, "PairStats")
      .def(py::init([](LinkStats near, LinkStats far, LinkStats pr) {
             return PairStats{near, far, pr};
           }),
           py::arg("near"), py::arg("far"), py::arg("pr"))
      .def_readwrite("near", &PairStats::near_user)
      .def_readwrite("far", &PairStats::far_user)
      .def_readwrite("pr", &PairStats::pr)
      .def("omega_tilde", &PairStats::omega_tilde);

  py::class_<ScenarioParams>(m, "ScenarioParams")
      .def(py::init<>())
      .def_readwrite("peak_interference", &ScenarioParams::peak_interference)
      .def_readwrite("theta", &ScenarioParams::theta)
      .def_readwrite("bandwidth", &ScenarioParams::bandwidth)
      .def_readwrite("block_length", &ScenarioParams::block_length)
      .def_readwrite("noise_psd", &ScenarioParams::noise_psd)
      .def_readwrite("violation_prob", &ScenarioParams::violation_prob)
      .def_readwrite("n_users", &ScenarioParams::n_users)
      .def("pair_bandwidth", &ScenarioParams::pair_bandwidth)
      .def("nu", &ScenarioParams::nu)
      .def("i_hat", &ScenarioParams::i_hat);

  py::class_<PowerSplit>(m, "PowerSplit")
      .def_static("make", &PowerSplit::make, py::arg("a_s"),
                  py::arg("n_users"))
      .def_readonly("a_s", &PowerSplit::a_s)
      .def_readonly("a_w", &PowerSplit::a_w);

  m.def("path_loss_linear", &path_loss_linear, py::arg("d"),
        py::arg("params"));

  m.def(
      "pair_users",
      [](const std::vector<double>& d) {
        std::vector<py::tuple> out;
        for (const auto& p : pair_users(d))
          out.push_back(py::make_tuple(p.near_index, p.far_index));
        return out;
      },
      py::arg("distances"),
      "Location-based pairing; returns (near_index, far_index) tuples.");

  m.def(
      "meijer_g",
      [](int m_, int n_, int p_, int q_, std::vector<double> a,
         std::vector<double> b, double z) {
        MeijerGSpec spec{m_, n_, p_, q_, std::move(a), std::move(b), z};
        return meijer_g(spec).value;
      },
      py::arg("m"), py::arg("n"), py::arg("p"), py::arg("q"), py::arg("a"),
      py::arg("b"), py::arg("z"));

  m.def("transmit_power_instantaneous", &transmit_power_instantaneous);
  m.def("transmit_power_statistical", &transmit_power_statistical);
  m.def("er_from_moment", &er_from_moment);

  m.def(
      "er_closed",
      [](const std::string& c, const std::string& role, const PairStats& pair,
         const ScenarioParams& sp, const PowerSplit& ps) {
        return to_role(role) == UserRole::Strong
                   ? er_closed_strong(to_case(c), pair, sp, ps)
                   : er_closed_weak(to_case(c), pair, sp, ps);
      },
      py::arg("csi_case"), py::arg("role"), py::arg("pair"), py::arg("sp"),
      py::arg("split"));

  m.def(
      "er_quadrature",
      [](const std::string& c, const std::string& role, const PairStats& pair,
         const ScenarioParams& sp, const PowerSplit& ps) {
        return er_quadrature(to_case(c), to_role(role), pair, sp, ps);
      },
      py::arg("csi_case"), py::arg("role"), py::arg("pair"), py::arg("sp"),
      py::arg("split"));

  m.def(
      "er_monte_carlo",
      [](const std::string& c, const std::string& scheme,
         const PairStats& pair, const ScenarioParams& sp, const PowerSplit& ps,
         long long samples, std::uint64_t seed, int streams, int threads) {
        McConfig mc{samples, seed, streams, threads};
        const ErReport rep = mc_effective_rate(
            to_case(c), scheme == "oma" ? Scheme::Oma : Scheme::Noma, pair,
            sp, ps, mc);
        return py::make_tuple(rep.r_strong, rep.r_weak);
      },
      py::arg("csi_case"), py::arg("scheme"), py::arg("pair"), py::arg("sp"),
      py::arg("split"), py::arg("samples") = 1000000, py::arg("seed") = 1,
      py::arg("streams") = 8, py::arg("threads") = 1);

  m.def(
      "oma_effective_rate",
      [](const std::string& c, const std::string& role, const PairStats& pair,
         const ScenarioParams& sp) {
        return oma_effective_rate(to_case(c), to_role(role), pair, sp);
      },
      py::arg("csi_case"), py::arg("role"), py::arg("pair"), py::arg("sp"));

  m.def(
      "match_strong_user",
      [](const std::string& c, const PairStats& pair, const ScenarioParams& sp,
         double tol) {
        const PowerAllocationResult r =
            match_strong_user(to_case(c), pair, sp, tol);
        return py::make_tuple(r.split.a_s, r.split.a_w, r.clamped);
      },
      py::arg("csi_case"), py::arg("pair"), py::arg("sp"),
      py::arg("tol") = 1e-6);

  m.def(
      "run_sweep",
      [](const std::string& config_json, const std::string& out_dir) {
        SweepSpec spec = validate_config_text(config_json);
        if (!out_dir.empty()) spec.out_dir = out_dir;
        return run_sweep(spec);
      },
      py::arg("config_json") = "", py::arg("out_dir") = "",
      "Run a sweep from a JSON config string; returns the CSV paths.");
}
