// Command-line front end: SNR sweeps with analytic/Monte-Carlo columns,
// bandwidth and threshold tables, waveform export, and the invariant checks.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "smlink/experiment.hpp"

namespace fs = std::filesystem;
using namespace smlink;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitPartial = 3;

std::string cell_str(const BandwidthResult& r) {
  char buf[32];
  if (r.capped) return "> 30";
  std::snprintf(buf, sizeof(buf), "%.2f", r.hz / 1e3);
  return buf;
}

int cmd_sweep(const std::string& config_path, std::uint64_t seed_override,
              bool seed_set, const std::string& out_dir, int workers,
              const std::string& scheme_override,
              const std::string& snr_override,
              const std::string& pilots_override) {
  ExperimentSpec spec;
  try {
    if (!config_path.empty())
      spec = spec_from_config(ConfigFile::parse_file(config_path));
    if (seed_set) spec.seed = seed_override;
    if (workers >= 0) spec.workers = workers;
    if (!scheme_override.empty()) {
      spec.schemes.clear();
      std::stringstream ss(scheme_override);
      std::string item;
      while (std::getline(ss, item, ','))
        spec.schemes.push_back(scheme_from_name(item));
    }
    if (!snr_override.empty()) spec.snr_db = parse_snr_grid(snr_override);
    if (!pilots_override.empty())
      spec.n_pilots = parse_pilot_list(pilots_override);
    spec.validate();
  } catch (const std::exception& ex) {
    std::cerr << "config error: " << ex.what() << "\n";
    return kExitConfig;
  }

  const auto rows = run_sweep(spec);
  fs::create_directories(out_dir);
  const fs::path out_path = fs::path(out_dir) / (spec.label + ".csv");
  std::ofstream out(out_path, std::ios::binary);
  write_csv(out, spec, rows);
  std::cout << "wrote " << rows.size() << " rows to " << out_path.string()
            << "\n";
  return any_row_failed(rows) ? kExitPartial : 0;
}

int cmd_table1(double t0, double T0, const std::string& out_dir) {
  const BandwidthTable tab = table1_report(t0, T0);
  const char* cols[] = {"rectangular", "half-sine", "raised-cosine", "w-bank"};
  std::printf("%-16s %12s %12s %12s %12s   (B/(2pi), kHz)\n", "", cols[0],
              cols[1], cols[2], cols[3]);
  fs::create_directories(out_dir);
  std::ofstream csv(fs::path(out_dir) / "table1.csv", std::ios::binary);
  csv << "row,rectangular,half_sine,raised_cosine,w_bank\n";
  for (size_t i = 0; i < tab.row_labels.size(); ++i) {
    std::printf("%-16s", tab.row_labels[i].c_str());
    csv << tab.row_labels[i];
    for (const auto& cell : tab.cells[i]) {
      std::printf(" %12s", cell_str(cell).c_str());
      csv << ',' << cell_str(cell);
    }
    std::printf("\n");
    csv << '\n';
  }
  return 0;
}

int cmd_table2(bool analytic_only, std::uint64_t seed, int workers,
               const std::string& out_dir, std::uint64_t min_errors,
               std::uint64_t max_trials) {
  Table2Options opt;
  opt.seed = seed;
  opt.workers = workers;
  opt.mc_stopping = {min_errors, max_trials};
  if (analytic_only) opt.schemes = {Scheme::ssk, Scheme::tosd_ssk};
  const auto cells = table2_report(opt);
  fs::create_directories(out_dir);
  std::ofstream csv(fs::path(out_dir) / "table2.csv", std::ios::binary);
  csv << "scheme,bpcu,n_rx,n_pilots,target,snr_db,flags\n";
  std::printf("%-13s %5s %4s %7s %8s %9s  %s\n", "scheme", "bpcu", "n_rx",
              "pilots", "target", "snr_dB", "flags");
  for (const auto& c : cells) {
    char snr[32] = "-";
    if (c.snr_db) std::snprintf(snr, sizeof(snr), "%.2f", *c.snr_db);
    std::printf("%-13s %5d %4d %7s %8.0e %9s  %s\n",
                scheme_name(c.scheme).c_str(), c.bpcu, c.n_rx,
                c.n_pilots.c_str(), c.target, snr, c.flags.c_str());
    csv << scheme_name(c.scheme) << ',' << c.bpcu << ',' << c.n_rx << ','
        << c.n_pilots << ',' << c.target << ',' << (c.snr_db ? snr : "")
        << ',' << c.flags << '\n';
  }
  return 0;
}

int cmd_pulses(double t0, double T0, const std::string& out_dir, int samples) {
  fs::create_directories(out_dir);
  const FilterBank bank = build_tosd_bank_nt4(t0);
  std::vector<Pulse> pulses = {
      reference_pulse(ReferencePulseKind::rectangular, T0),
      reference_pulse(ReferencePulseKind::half_sine, T0),
      reference_pulse(ReferencePulseKind::raised_cosine, T0),
  };
  for (const auto& p : bank.pulses) pulses.push_back(p);
  const BandwidthOptions opt;
  for (const auto& p : pulses) {
    std::ofstream tf(fs::path(out_dir) / (p.label + "_time.csv"),
                     std::ios::binary);
    tf << "xi_seconds,amplitude\n";
    const double half = p.duration / 2.0;
    for (int i = 0; i < samples; ++i) {
      const double xi = -half + p.duration * i / (samples - 1);
      tf << xi << ',' << p.time_fn(xi) << '\n';
    }
    std::ofstream ff(fs::path(out_dir) / (p.label + "_psd.csv"),
                     std::ios::binary);
    ff << "freq_hz,psd\n";
    for (int i = 0; i < samples; ++i) {
      const double w = opt.omega_max * i / (samples - 1);
      ff << w / (2 * M_PI) << ',' << p.spectrum_mag2(w) << '\n';
    }
  }
  std::cout << "wrote time/PSD tables for " << pulses.size()
            << " pulses to " << out_dir << "\n";
  return 0;
}

// quick invariant suite: the cheap structural checks, not the full
// acceptance run (that lives in the test suite)
int cmd_validate(std::uint64_t seed) {
  int failures = 0;
  auto check = [&](const char* name, bool ok) {
    std::printf("%-52s %s\n", name, ok ? "ok" : "FAIL");
    if (!ok) ++failures;
  };

  {
    LinkConfig cfg;
    cfg.n_tx = 2;
    cfg.n_rx = 2;
    cfg.snr_db = 10;
    for (const char* label : {"ssk", "tosd"}) {
      const bool ssk = std::string(label) == "ssk";
      bool ok = true;
      for (double npr : {1.0, 7.0}) {
        cfg.n_pilots = PilotCount::finite(int(npr));
        if (ssk) {
          const CfParams p = ssk_cf_params(cfg);
          ok = ok && std::abs(cf_upsilon(p, 0.0) - 1.0) < 1e-12 &&
               std::abs(cf_delta(p, 0.0)) < 1e-12;
        } else {
          const auto [q, t] = tosd_cf_params(cfg);
          ok = ok && std::abs(q.v_a - q.v_b - 1.0) < 1e-12 &&
               std::abs(cf_upsilon(q, 0.0) - 1.0) < 1e-12;
        }
      }
      check(ssk ? "CF normalization (single-filter)"
                : "CF normalization (orthogonal-filter)",
            ok);
    }
  }
  {
    bool ok = true;
    for (int nt : {2, 4, 8, 16}) {
      const auto m = BitMapping::natural(nt);
      ok = ok && m.hamming_sum() ==
                     (long long)nt * nt / 2 * m.bits();
    }
    check("Hamming sum identity (n^2/2 log2 n)", ok);
  }
  {
    const FilterBank bank = build_tosd_bank_nt4(1e-4);
    double worst = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        double dot = 0;
        for (int k = 0; k < 5; ++k)
          dot += bank.coeffs[i][k] * bank.coeffs[j][k];
        worst = std::max(worst, std::abs(dot - (i == j ? 1.0 : 0.0)));
      }
    check("filter bank coefficient orthonormality", worst < 1e-12);
  }
  {
    LinkConfig cfg;
    cfg.n_tx = 2;
    cfg.n_rx = 2;
    cfg.snr_db = 12;
    cfg.n_pilots = PilotCount::finite(1);
    const auto [pq, pt] = tosd_cf_params(cfg);
    const double gq = 0.8, gt = 1.7;
    bool ok = true;
    for (double nu : {0.05, 0.3, 1.0, 4.0}) {
      const auto lhs = cf_upsilon(pq, nu) * std::exp(cf_delta(pq, nu) * gq) *
                       cf_upsilon(pt, -nu) * std::exp(cf_delta(pt, -nu) * gt);
      const auto a = cf_upsilon(pq, nu) * std::exp(cf_delta(pq, nu) * gq);
      const auto b = cf_upsilon(pt, -nu) * std::exp(cf_delta(pt, -nu) * gt);
      ok = ok && std::abs(lhs - a * b) < 1e-12;
    }
    check("pairwise CF factorization", ok);
  }
  {
    // deterministic replay
    ExperimentSpec spec;
    spec.label = "replay";
    spec.schemes = {Scheme::ssk};
    spec.snr_db = {5, 10};
    spec.mc = true;
    spec.analytic = true;
    spec.stopping = {50, 200000};
    spec.seed = seed;
    std::ostringstream a, b;
    write_csv(a, spec, run_sweep(spec));
    spec.workers = 1;
    write_csv(b, spec, run_sweep(spec));
    check("deterministic replay (workers=auto vs 1)", a.str() == b.str());
  }
  std::printf(failures ? "%d check(s) FAILED\n" : "all checks passed\n",
              failures);
  return failures ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"link-level analysis toolkit for space-modulation MIMO"};
  app.require_subcommand(1);

  std::string out_dir = ".";
  std::uint64_t seed = 1;
  int workers = -1;
  app.add_option("--out", out_dir, "output directory");
  bool seed_set = false;
  app.add_option("--seed", seed, "master RNG seed")
      ->each([&](const std::string&) { seed_set = true; });
  app.add_option("--workers", workers, "worker threads (0 = all cores)");

  auto* sweep = app.add_subcommand("sweep", "run an experiment grid");
  std::string config_path, scheme_override, snr_override, pilots_override;
  sweep->add_option("--config", config_path, "experiment config file");
  sweep->add_option("--scheme", scheme_override,
                    "comma list: ssk,tosd_ssk,qam_siso,alamouti_qam");
  sweep->add_option("--snr", snr_override, "SNR grid, list or start:step:stop");
  sweep->add_option("--pilots", pilots_override,
                    "pilot counts, e.g. 1,3,10,inf");

  auto* table1 = app.add_subcommand("table1", "bandwidth table");
  double t0 = 1e-4, T0 = 1e-3;
  table1->add_option("--t0", t0, "bank shape parameter, seconds");
  table1->add_option("--T0", T0, "reference pulse duration, seconds");

  auto* table2 = app.add_subcommand("table2", "SNR threshold table");
  bool analytic_only = false;
  std::uint64_t min_errors = 200, max_trials = 40'000'000;
  table2->add_flag("--analytic-only", analytic_only,
                   "skip the Monte-Carlo baseline schemes");
  table2->add_option("--min-errors", min_errors, "MC stop: bit errors");
  table2->add_option("--max-trials", max_trials, "MC stop: channel uses");

  auto* pulses = app.add_subcommand("pulses", "export waveform/PSD tables");
  int samples = 2001;
  pulses->add_option("--t0", t0, "bank shape parameter, seconds");
  pulses->add_option("--T0", T0, "reference pulse duration, seconds");
  pulses->add_option("--samples", samples, "samples per table");

  auto* validate = app.add_subcommand("validate", "run the invariant checks");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sweep->parsed())
      return cmd_sweep(config_path, seed, seed_set, out_dir, workers,
                       scheme_override, snr_override, pilots_override);
    if (table1->parsed()) return cmd_table1(t0, T0, out_dir);
    if (table2->parsed())
      return cmd_table2(analytic_only, seed, workers < 0 ? 0 : workers,
                        out_dir, min_errors, max_trials);
    if (pulses->parsed()) return cmd_pulses(t0, T0, out_dir, samples);
    if (validate->parsed()) return cmd_validate(seed);
  } catch (const ConfigError& ex) {
    std::cerr << "config error: " << ex.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return 0;
}
