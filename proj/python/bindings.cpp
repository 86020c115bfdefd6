// python bindings for the main operations

#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "smlink/experiment.hpp"

namespace py = pybind11;
using namespace smlink;

namespace {

PilotCount pilots_from_obj(const py::object& obj) {
  if (py::isinstance<py::str>(obj)) {
    const auto s = obj.cast<std::string>();
    if (s == "inf" || s == "infinite" || s == "pcsi")
      return PilotCount::infinite();
    throw ConfigError("unknown pilot spec: " + s);
  }
  if (py::isinstance<py::float_>(obj)) {
    const double v = obj.cast<double>();
    if (std::isinf(v)) return PilotCount::infinite();
    return PilotCount::finite(static_cast<int>(v));
  }
  return PilotCount::finite(obj.cast<int>());
}

LinkConfig make_link(int n_tx, int n_rx, double snr_db,
                     const py::object& n_pilots, double pilot_ratio,
                     double omega0) {
  LinkConfig cfg;
  cfg.n_tx = n_tx;
  cfg.n_rx = n_rx;
  cfg.snr_db = snr_db;
  cfg.n_pilots = pilots_from_obj(n_pilots);
  cfg.pilot_ratio = pilot_ratio;
  cfg.omega0 = omega0;
  return cfg;
}

TxMode mode_from_str(const std::string& s) {
  if (s == "ssk") return TxMode::ssk;
  if (s == "tosd" || s == "tosd_ssk") return TxMode::tosd;
  throw ConfigError("mode must be ssk or tosd");
}

}  // namespace

PYBIND11_MODULE(_smlink, m) {
  m.doc() = "link-level analysis of space-modulation MIMO with pilot-based "
            "channel estimation";

  py::register_exception<ConfigError>(m, "ConfigError");
  py::register_exception<QuadratureError>(m, "QuadratureError");
  py::register_exception<ThresholdRangeError>(m, "ThresholdRangeError");

  m.def("philox_raw",
        [](std::uint64_t seed, std::uint64_t stream, int n) {
          Philox4x64 rng(seed, stream);
          std::vector<std::uint64_t> out(n);
          for (auto& v : out) v = rng();
          return out;
        },
        py::arg("seed"), py::arg("stream"), py::arg("n"),
        "raw 64-bit outputs of the counter-based generator");

  m.def("ssk_cf_params",
        [](int n_tx, int n_rx, double snr_db, const py::object& n_pilots,
           double r_pm) {
          const CfParams p = ssk_cf_params(
              make_link(n_tx, n_rx, snr_db, n_pilots, r_pm, 1.0));
          return py::dict(py::arg("v_a") = p.v_a, py::arg("v_b") = p.v_b,
                          py::arg("g_a") = p.g_a, py::arg("g_b") = p.g_b,
                          py::arg("n_rx") = p.n_rx);
        },
        py::arg("n_tx") = 2, py::arg("n_rx") = 1, py::arg("snr_db") = 10.0,
        py::arg("n_pilots") = 1, py::arg("r_pm") = 1.0);

  m.def("pep_conditional",
        [](const std::string& mode, double snr_db, int n_rx,
           const py::object& n_pilots, double r_pm,
           const std::vector<double>& gamma) {
          LinkConfig cfg = make_link(2, n_rx, snr_db, n_pilots, r_pm, 1.0);
          if (mode_from_str(mode) == TxMode::ssk) {
            if (gamma.size() != 1)
              throw ConfigError("ssk mode takes one gamma value");
            return pep_conditional_ssk(cfg, gamma[0]);
          }
          if (gamma.size() != 2)
            throw ConfigError("tosd mode takes (gamma_q, gamma_t)");
          return pep_conditional_tosd(cfg, gamma[0], gamma[1]);
        },
        py::arg("mode"), py::arg("snr_db"), py::arg("n_rx"),
        py::arg("n_pilots"), py::arg("r_pm"), py::arg("gamma"),
        "conditional pairwise error probability given the fading statistic");

  m.def("abep",
        [](const std::string& mode, int n_tx, int n_rx, double snr_db,
           const py::object& n_pilots, double r_pm, double omega0) {
          return abep_iid_rayleigh(
              mode_from_str(mode),
              make_link(n_tx, n_rx, snr_db, n_pilots, r_pm, omega0));
        },
        py::arg("mode"), py::arg("n_tx") = 2, py::arg("n_rx") = 1,
        py::arg("snr_db") = 10.0, py::arg("n_pilots") = 1,
        py::arg("r_pm") = 1.0, py::arg("omega0") = 1.0,
        "average bit error probability bound, i.i.d. Rayleigh fading");

  m.def("snr_threshold_abep",
        [](const std::string& mode, int n_tx, int n_rx,
           const py::object& n_pilots, double r_pm, double target) {
          LinkConfig base = make_link(n_tx, n_rx, 0.0, n_pilots, r_pm, 1.0);
          const TxMode md = mode_from_str(mode);
          return snr_threshold(
              [&](double db) {
                LinkConfig c = base;
                c.snr_db = db;
                return abep_iid_rayleigh(md, c);
              },
              target, -5.0, 45.0);
        },
        py::arg("mode"), py::arg("n_tx"), py::arg("n_rx"),
        py::arg("n_pilots"), py::arg("r_pm") = 1.0, py::arg("target") = 1e-4,
        "SNR (dB) where the analytic ABEP curve crosses the target");

  m.def("estimate_ber",
        [](const std::string& scheme, int n_tx, int n_rx, double snr_db,
           const py::object& n_pilots, double r_pm, int qam_order,
           const std::string& mapping, std::uint64_t min_errors,
           std::uint64_t max_trials, std::uint64_t seed, int workers) {
          SchemeConfig cfg;
          cfg.scheme = scheme_from_name(scheme);
          cfg.qam_order = qam_order;
          cfg.mapping =
              mapping == "gray" ? MappingKind::gray : MappingKind::natural;
          cfg.link = make_link(
              cfg.scheme == Scheme::qam_siso ? 2 : n_tx, n_rx, snr_db,
              n_pilots, r_pm, 1.0);
          const BerEstimate est = estimate_ber(
              cfg, snr_db, StoppingRule{min_errors, max_trials}, seed,
              workers);
          return py::dict(
              py::arg("trials") = est.trials,
              py::arg("bit_errors") = est.bit_errors, py::arg("ber") = est.ber,
              py::arg("std_err") = est.std_err,
              py::arg("upper_bound_only") = est.upper_bound_only);
        },
        py::arg("scheme"), py::arg("n_tx") = 2, py::arg("n_rx") = 1,
        py::arg("snr_db") = 10.0, py::arg("n_pilots") = 1,
        py::arg("r_pm") = 1.0, py::arg("qam_order") = 4,
        py::arg("mapping") = "natural", py::arg("min_errors") = 200,
        py::arg("max_trials") = 10'000'000, py::arg("seed") = 1,
        py::arg("workers") = 0,
        "Monte Carlo bit error rate with the mismatched ML detector");

  m.def("hermite_pulse_samples",
        [](int order, double t0, const std::vector<double>& xi) {
          const Pulse p = hermite_basis(order, t0);
          std::vector<double> out(xi.size());
          for (size_t i = 0; i < xi.size(); ++i) out[i] = p.time_fn(xi[i]);
          return out;
        },
        py::arg("order"), py::arg("t0"), py::arg("xi"));

  m.def("bank_coefficients", [](double t0) {
    const FilterBank bank = build_tosd_bank_nt4(t0);
    std::vector<std::vector<double>> rows;
    for (const auto& r : bank.coeffs)
      rows.emplace_back(r.begin(), r.end());
    return rows;
  }, py::arg("t0") = 1e-4);

  m.def("bandwidth",
        [](const std::string& pulse, const std::string& measure, double x,
           double t0, double T0) {
          Pulse p;
          if (pulse == "rectangular")
            p = reference_pulse(ReferencePulseKind::rectangular, T0);
          else if (pulse == "half_sine")
            p = reference_pulse(ReferencePulseKind::half_sine, T0);
          else if (pulse == "raised_cosine")
            p = reference_pulse(ReferencePulseKind::raised_cosine, T0);
          else if (pulse == "w_bank")
            p = build_tosd_bank_nt4(t0).pulses[0];
          else
            throw ConfigError("unknown pulse: " + pulse);
          const BandwidthResult r = measure == "fpcb"
                                        ? fpcb(p, x)
                                        : bpsdb(p, x);
          return py::dict(py::arg("hz") = r.hz, py::arg("capped") = r.capped);
        },
        py::arg("pulse"), py::arg("measure"), py::arg("x"),
        py::arg("t0") = 1e-4, py::arg("T0") = 1e-3,
        "fpcb (x = energy fraction) or bpsdb (x = decades below peak)");

  m.def("run_sweep_csv",
        [](const std::string& config_text) {
          const ExperimentSpec spec =
              spec_from_config(ConfigFile::parse_string(config_text));
          const auto rows = run_sweep(spec);
          std::ostringstream os;
          write_csv(os, spec, rows);
          return os.str();
        },
        py::arg("config_text"),
        "run a sweep from config text and return the CSV");
}
