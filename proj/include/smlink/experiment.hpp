#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "smlink/mc.hpp"
#include "smlink/pulses.hpp"

namespace smlink {

// Declarative experiment description: the cartesian product of the grids is
// evaluated. Parsed from a key-value config file, with CLI overrides.
struct ExperimentSpec {
  std::string label = "sweep";
  std::vector<Scheme> schemes{Scheme::ssk};
  int n_tx = 2;
  int qam_order = 4;
  MappingKind mapping = MappingKind::natural;
  std::vector<int> n_rx{1};
  std::vector<PilotCount> n_pilots{PilotCount::finite(1)};
  std::vector<double> snr_db{0, 5, 10, 15, 20};
  double pilot_ratio = 1.0;
  double omega0 = 1.0;
  bool analytic = true;
  bool mc = false;
  StoppingRule stopping;
  std::uint64_t seed = 1;
  int workers = 0;

  void validate() const;
};

struct ResultRow {
  std::string scheme;
  int n_tx_or_m = 0;
  int n_rx = 0;
  std::string n_pilots;  // integer or "inf"
  double r_pm = 1.0;
  double snr_db = 0.0;
  std::optional<double> abep_analytic;
  std::optional<double> ber_mc;
  std::optional<double> mc_std_err;
  std::uint64_t trials = 0;
  std::string flags;
};

// Evaluates every grid point; per-point failures are recorded in the row's
// flags and the sweep continues.
std::vector<ResultRow> run_sweep(const ExperimentSpec& spec);

bool any_row_failed(const std::vector<ResultRow>& rows);

// CSV contract. Column order is fixed:
// scheme,n_tx_or_M,n_rx,n_pilots,r_pm,snr_db,abep_analytic,ber_mc,
// mc_std_err,trials,flags
// Header comment lines ('#') carry the label, units and seed; identical
// spec+seed re-runs produce byte-identical files.
void write_csv(std::ostream& os, const ExperimentSpec& spec,
               const std::vector<ResultRow>& rows);
std::vector<ResultRow> read_csv(std::istream& is);

// ---- report generators ----

struct BandwidthTable {
  // rows: 4 containment fractions then 5 PSD thresholds; cols: rectangular,
  // half-sine, raised-cosine, orthogonal bank
  std::vector<std::string> row_labels;
  std::vector<std::array<BandwidthResult, 4>> cells;
};

BandwidthTable table1_report(double t0 = 1e-4, double T0 = 1e-3,
                             const BandwidthOptions& opt = {});

struct ThresholdCell {
  Scheme scheme = Scheme::ssk;
  int bpcu = 1;
  int n_rx = 1;
  std::string n_pilots;
  double target = 1e-4;
  std::optional<double> snr_db;  // empty when unreachable
  std::string flags;             // "analytic" / "mc" / error text
};

struct Table2Options {
  std::vector<Scheme> schemes{Scheme::ssk, Scheme::qam_siso, Scheme::tosd_ssk,
                              Scheme::alamouti_qam};
  std::vector<int> bpcu{1, 2, 3, 4};
  std::vector<PilotCount> pilots{PilotCount::finite(1), PilotCount::finite(3),
                                 PilotCount::finite(10),
                                 PilotCount::infinite()};
  std::vector<int> n_rx_ssk_qam{1, 2, 4};  // target 1e-2 when n_rx == 1
  std::vector<int> n_rx_div{1, 2};         // two-branch schemes
  double pilot_ratio = 1.0;
  std::uint64_t seed = 1;
  int workers = 0;
  StoppingRule mc_stopping{200, 40'000'000};
  MappingKind mapping = MappingKind::natural;
};

std::vector<ThresholdCell> table2_report(const Table2Options& opt);

// Monte Carlo SNR threshold: walk a coarse grid upward until the BER curve
// crosses `target`, then shrink the bracket with log-linear interpolation and
// fresh targeted runs. Deterministic given (seed, grids).
double mc_snr_threshold(const SchemeConfig& cfg, double target,
                        const StoppingRule& stopping, std::uint64_t seed,
                        int workers, double start_db = 4.0,
                        double step_db = 2.0, double max_db = 45.0);

// ---- config file ----

// Minimal INI-style parser: [section] headers, key = value lines, '#'
// comments. Keys are exposed flat as "section.key".
class ConfigFile {
 public:
  static ConfigFile parse_file(const std::string& path);
  static ConfigFile parse_string(const std::string& text);

  bool has(const std::string& key) const;
  std::string get(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  long long get_int(const std::string& key, long long fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;

  // comma lists and start:step:stop ranges
  std::vector<double> get_grid(const std::string& key,
                               std::vector<double> fallback) const;
  std::vector<std::string> get_list(const std::string& key) const;

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

ExperimentSpec spec_from_config(const ConfigFile& cfg);

std::vector<PilotCount> parse_pilot_list(const std::string& text);
std::vector<double> parse_snr_grid(const std::string& text);

}  // namespace smlink
