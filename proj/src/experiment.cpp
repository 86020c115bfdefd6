#include "smlink/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

namespace smlink {

namespace {

std::string fmt_double(double v) {
  // shortest form that parses back to the same double
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

double parse_double(const std::string& s) {
  try {
    size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw ConfigError("trailing junk in number: " + s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("not a number: " + s);
  }
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(trim(cur));
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

}  // namespace

void ExperimentSpec::validate() const {
  if (schemes.empty() || n_rx.empty() || n_pilots.empty() || snr_db.empty())
    throw ConfigError("grids must be nonempty");
  if (mc && seed == 0)
    throw ConfigError("a seed is mandatory for Monte Carlo runs");
  if (n_tx < 2 || (n_tx & (n_tx - 1)) != 0)
    throw ConfigError("n_tx must be a power of two >= 2");
  if (qam_order < 2 || (qam_order & (qam_order - 1)) != 0)
    throw ConfigError("qam_order must be a power of two >= 2");
}

std::vector<ResultRow> run_sweep(const ExperimentSpec& spec) {
  spec.validate();
  std::vector<ResultRow> rows;
  std::uint64_t grid_index = 0;
  for (Scheme scheme : spec.schemes) {
    const bool spatial =
        scheme == Scheme::ssk || scheme == Scheme::tosd_ssk;
    for (int nrx : spec.n_rx) {
      for (const PilotCount& np : spec.n_pilots) {
        for (double db : spec.snr_db) {
          ResultRow row;
          row.scheme = scheme_name(scheme);
          row.n_tx_or_m = spatial ? spec.n_tx : spec.qam_order;
          row.n_rx = nrx;
          row.n_pilots = np.str();
          row.r_pm = spec.pilot_ratio;
          row.snr_db = db;
          SchemeConfig cfg;
          cfg.scheme = scheme;
          cfg.qam_order = spec.qam_order;
          cfg.mapping = spec.mapping;
          cfg.link.n_tx = spatial ? spec.n_tx : 2;
          cfg.link.n_rx = nrx;
          cfg.link.snr_db = db;
          cfg.link.n_pilots = np;
          cfg.link.pilot_ratio = spec.pilot_ratio;
          cfg.link.omega0 = spec.omega0;
          try {
            if (spatial && spec.analytic) {
              const TxMode mode =
                  scheme == Scheme::ssk ? TxMode::ssk : TxMode::tosd;
              const double v = abep_iid_rayleigh(mode, cfg.link);
              row.abep_analytic = v;
              if (v > 0.5) row.flags = "bound_loose";
            }
            if (spec.mc) {
              const std::uint64_t point_seed =
                  derive_stream({spec.seed, grid_index});
              const BerEstimate est = estimate_ber(
                  cfg, db, spec.stopping, point_seed, spec.workers);
              row.ber_mc = est.ber;
              row.mc_std_err = est.std_err;
              row.trials = est.trials;
              if (est.upper_bound_only) {
                if (!row.flags.empty()) row.flags += ";";
                row.flags += "upper_bound_only";
              }
            }
          } catch (const std::exception& ex) {
            row.flags = std::string("error:") + ex.what();
          }
          rows.push_back(std::move(row));
          ++grid_index;
        }
      }
    }
  }
  return rows;
}

bool any_row_failed(const std::vector<ResultRow>& rows) {
  return std::any_of(rows.begin(), rows.end(), [](const ResultRow& r) {
    return r.flags.rfind("error:", 0) == 0;
  });
}

void write_csv(std::ostream& os, const ExperimentSpec& spec,
               const std::vector<ResultRow>& rows) {
  os << "# label=" << spec.label << "\n";
  os << "# units: snr_db in dB (Em/N0); abep_analytic and ber_mc are bit"
        " error probabilities; mc_std_err is one binomial standard error;"
        " trials counts channel uses\n";
  os << "# seed=" << spec.seed << "\n";
  os << "scheme,n_tx_or_M,n_rx,n_pilots,r_pm,snr_db,abep_analytic,ber_mc,"
        "mc_std_err,trials,flags\n";
  for (const auto& r : rows) {
    os << r.scheme << ',' << r.n_tx_or_m << ',' << r.n_rx << ',' << r.n_pilots
       << ',' << fmt_double(r.r_pm) << ',' << fmt_double(r.snr_db) << ',';
    if (r.abep_analytic) os << fmt_double(*r.abep_analytic);
    os << ',';
    if (r.ber_mc) os << fmt_double(*r.ber_mc);
    os << ',';
    if (r.mc_std_err) os << fmt_double(*r.mc_std_err);
    std::string flags = r.flags;
    std::replace(flags.begin(), flags.end(), ',', ';');
    os << ',' << r.trials << ',' << flags << '\n';
  }
}

std::vector<ResultRow> read_csv(std::istream& is) {
  std::vector<ResultRow> rows;
  std::string line;
  bool header_seen = false;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;  // column header
      continue;
    }
    auto f = split(line, ',');
    if (f.size() < 11) throw ConfigError("malformed CSV row: " + line);
    while (f.size() > 11) {  // commas inside the trailing flags field
      f[10] += "," + f[11];
      f.erase(f.begin() + 11);
    }
    ResultRow r;
    r.scheme = f[0];
    r.n_tx_or_m = static_cast<int>(parse_double(f[1]));
    r.n_rx = static_cast<int>(parse_double(f[2]));
    r.n_pilots = f[3];
    r.r_pm = parse_double(f[4]);
    r.snr_db = parse_double(f[5]);
    if (!f[6].empty()) r.abep_analytic = parse_double(f[6]);
    if (!f[7].empty()) r.ber_mc = parse_double(f[7]);
    if (!f[8].empty()) r.mc_std_err = parse_double(f[8]);
    r.trials = static_cast<std::uint64_t>(parse_double(f[9]));
    r.flags = f[10];
    rows.push_back(std::move(r));
  }
  return rows;
}

BandwidthTable table1_report(double t0, double T0,
                             const BandwidthOptions& opt) {
  const Pulse rect = reference_pulse(ReferencePulseKind::rectangular, T0);
  const Pulse hs = reference_pulse(ReferencePulseKind::half_sine, T0);
  const Pulse rc = reference_pulse(ReferencePulseKind::raised_cosine, T0);
  const FilterBank bank = build_tosd_bank_nt4(t0);
  const Pulse& w = bank.pulses[0];

  BandwidthTable tab;
  const std::pair<std::string, double> fracs[] = {
      {"99%", 0.99},
      {"99.995%", 0.99995},
      {"99.9999%", 0.999999},
      {"99.99999%", 0.9999999},
  };
  for (const auto& [label, x] : fracs) {
    tab.row_labels.push_back("FPCB " + label);
    tab.cells.push_back({fpcb(rect, x, opt), fpcb(hs, x, opt),
                         fpcb(rc, x, opt), fpcb(w, x, opt)});
  }
  const std::pair<std::string, double> ths[] = {
      {"3dB", 3.0}, {"5dB", 5.0}, {"6dB", 6.0}, {"7dB", 7.0}, {"10dB", 10.0},
  };
  for (const auto& [label, th] : ths) {
    tab.row_labels.push_back("BPSDB " + label);
    tab.cells.push_back({bpsdb(rect, th, opt), bpsdb(hs, th, opt),
                         bpsdb(rc, th, opt), bpsdb(w, th, opt)});
  }
  return tab;
}

double mc_snr_threshold(const SchemeConfig& cfg, double target,
                        const StoppingRule& stopping, std::uint64_t seed,
                        int workers, double start_db, double step_db,
                        double max_db) {
  auto measure = [&](double db) {
    const std::uint64_t point_seed =
        derive_stream({seed, std::uint64_t(std::llround(db * 1000.0))});
    const BerEstimate est = estimate_ber(cfg, db, stopping, point_seed,
                                         workers);
    const double bits = double(est.trials) * cfg.bits_per_use();
    // floor zero-error points so the log interpolation stays defined
    return std::max(est.ber, 0.25 / std::max(bits, 1.0));
  };
  double lo_db = start_db;
  double lo_ber = measure(lo_db);
  if (lo_ber < target)
    throw ThresholdRangeError("start point already below target", lo_ber,
                              lo_ber);
  double hi_db = lo_db, hi_ber = lo_ber;
  while (hi_ber >= target) {
    lo_db = hi_db;
    lo_ber = hi_ber;
    hi_db += step_db;
    if (hi_db > max_db)
      throw ThresholdRangeError("target not reached by max_db", hi_ber,
                                lo_ber);
    hi_ber = measure(hi_db);
  }
  auto crossing = [&] {
    const double yl = std::log10(lo_ber), yh = std::log10(hi_ber);
    const double t = (std::log10(target) - yl) / (yh - yl);
    return lo_db + t * (hi_db - lo_db);
  };
  for (int iter = 0; iter < 3 && (hi_db - lo_db) > 0.05; ++iter) {
    double mid = crossing();
    mid = std::clamp(mid, lo_db + 0.05 * (hi_db - lo_db),
                     hi_db - 0.05 * (hi_db - lo_db));
    const double ber = measure(mid);
    if (ber >= target) {
      lo_db = mid;
      lo_ber = ber;
    } else {
      hi_db = mid;
      hi_ber = ber;
    }
  }
  return crossing();
}

std::vector<ThresholdCell> table2_report(const Table2Options& opt) {
  std::vector<ThresholdCell> cells;
  for (Scheme scheme : opt.schemes) {
    const bool spatial =
        scheme == Scheme::ssk || scheme == Scheme::tosd_ssk;
    const bool diversity2 =
        scheme == Scheme::tosd_ssk || scheme == Scheme::alamouti_qam;
    const auto& nrx_list =
        diversity2 ? opt.n_rx_div : opt.n_rx_ssk_qam;
    for (int bpcu : opt.bpcu) {
      for (int nrx : nrx_list) {
        for (const PilotCount& np : opt.pilots) {
          ThresholdCell cell;
          cell.scheme = scheme;
          cell.bpcu = bpcu;
          cell.n_rx = nrx;
          cell.n_pilots = np.str();
          cell.target = (!diversity2 && nrx == 1) ? 1e-2 : 1e-4;
          SchemeConfig cfg;
          cfg.scheme = scheme;
          cfg.qam_order = 1 << bpcu;
          cfg.mapping = opt.mapping;
          cfg.link.n_tx = spatial ? (1 << bpcu) : 2;
          cfg.link.n_rx = nrx;
          cfg.link.n_pilots = np;
          cfg.link.pilot_ratio = opt.pilot_ratio;
          try {
            if (spatial) {
              const TxMode mode =
                  scheme == Scheme::ssk ? TxMode::ssk : TxMode::tosd;
              LinkConfig base = cfg.link;
              cell.snr_db = snr_threshold(
                  [&](double db) {
                    LinkConfig c = base;
                    c.snr_db = db;
                    return abep_iid_rayleigh(mode, c);
                  },
                  cell.target, -5.0, 45.0);
              cell.flags = "analytic";
            } else {
              cell.snr_db = mc_snr_threshold(cfg, cell.target,
                                             opt.mc_stopping, opt.seed,
                                             opt.workers);
              cell.flags = "mc";
            }
          } catch (const std::exception& ex) {
            cell.flags = std::string("error:") + ex.what();
          }
          cells.push_back(std::move(cell));
        }
      }
    }
  }
  return cells;
}

// ---- config file ----

ConfigFile ConfigFile::parse_string(const std::string& text) {
  ConfigFile out;
  std::istringstream is(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("bad section header at line " +
                          std::to_string(lineno));
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("expected key = value at line " +
                        std::to_string(lineno));
    std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("empty key at line " +
                                       std::to_string(lineno));
    if (!section.empty()) key = section + "." + key;
    out.entries_.emplace_back(key, val);
  }
  return out;
}

ConfigFile ConfigFile::parse_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_string(ss.str());
}

bool ConfigFile::has(const std::string& key) const {
  for (const auto& [k, v] : entries_)
    if (k == key) return true;
  return false;
}

std::string ConfigFile::get(const std::string& key,
                            const std::string& fallback) const {
  std::string out = fallback;
  for (const auto& [k, v] : entries_)
    if (k == key) out = v;  // last one wins
  return out;
}

double ConfigFile::get_double(const std::string& key, double fallback) const {
  if (!has(key)) return fallback;
  return parse_double(get(key, ""));
}

long long ConfigFile::get_int(const std::string& key,
                              long long fallback) const {
  if (!has(key)) return fallback;
  return static_cast<long long>(parse_double(get(key, "")));
}

bool ConfigFile::get_bool(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const std::string v = get(key, "");
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("not a boolean: " + key + " = " + v);
}

std::vector<std::string> ConfigFile::get_list(const std::string& key) const {
  if (!has(key)) return {};
  return split(get(key, ""), ',');
}

std::vector<double> ConfigFile::get_grid(const std::string& key,
                                         std::vector<double> fallback) const {
  if (!has(key)) return fallback;
  return parse_snr_grid(get(key, ""));
}

std::vector<double> parse_snr_grid(const std::string& text) {
  // either "a:step:b" or "v1,v2,..."
  if (text.find(':') != std::string::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw ConfigError("range must be start:step:stop");
    const double a = parse_double(parts[0]);
    const double step = parse_double(parts[1]);
    const double b = parse_double(parts[2]);
    if (!(step > 0.0)) throw ConfigError("range step must be > 0");
    std::vector<double> out;
    for (double v = a; v <= b + 1e-9; v += step) out.push_back(v);
    return out;
  }
  std::vector<double> out;
  for (const auto& s : split(text, ','))
    if (!s.empty()) out.push_back(parse_double(s));
  if (out.empty()) throw ConfigError("empty grid: " + text);
  return out;
}

std::vector<PilotCount> parse_pilot_list(const std::string& text) {
  std::vector<PilotCount> out;
  for (const auto& s : split(text, ',')) {
    if (s.empty()) continue;
    if (s == "inf" || s == "infinite" || s == "pcsi")
      out.push_back(PilotCount::infinite());
    else
      out.push_back(PilotCount::finite(static_cast<int>(parse_double(s))));
  }
  if (out.empty()) throw ConfigError("empty pilot list: " + text);
  return out;
}

ExperimentSpec spec_from_config(const ConfigFile& cfg) {
  ExperimentSpec spec;
  spec.label = cfg.get("experiment.label", spec.label);
  if (cfg.has("experiment.schemes")) {
    spec.schemes.clear();
    for (const auto& s : cfg.get_list("experiment.schemes"))
      if (!s.empty()) spec.schemes.push_back(scheme_from_name(s));
  }
  spec.n_tx = static_cast<int>(cfg.get_int("experiment.n_tx", spec.n_tx));
  spec.qam_order =
      static_cast<int>(cfg.get_int("experiment.qam_order", spec.qam_order));
  const std::string mapping = cfg.get("experiment.mapping", "natural");
  if (mapping == "natural")
    spec.mapping = MappingKind::natural;
  else if (mapping == "gray")
    spec.mapping = MappingKind::gray;
  else
    throw ConfigError("unknown mapping: " + mapping);
  if (cfg.has("experiment.n_rx")) {
    spec.n_rx.clear();
    for (double v : parse_snr_grid(cfg.get("experiment.n_rx", "")))
      spec.n_rx.push_back(static_cast<int>(v));
  }
  if (cfg.has("experiment.n_pilots"))
    spec.n_pilots = parse_pilot_list(cfg.get("experiment.n_pilots", ""));
  spec.snr_db = cfg.get_grid("experiment.snr_db", spec.snr_db);
  spec.pilot_ratio = cfg.get_double("experiment.r_pm", spec.pilot_ratio);
  spec.omega0 = cfg.get_double("experiment.omega0", spec.omega0);
  spec.analytic = cfg.get_bool("experiment.analytic", spec.analytic);
  spec.mc = cfg.get_bool("experiment.mc", spec.mc);
  spec.stopping.min_errors = static_cast<std::uint64_t>(
      cfg.get_int("mc.min_errors", spec.stopping.min_errors));
  spec.stopping.max_trials = static_cast<std::uint64_t>(
      cfg.get_int("mc.max_trials", spec.stopping.max_trials));
  spec.seed = static_cast<std::uint64_t>(cfg.get_int("mc.seed", spec.seed));
  spec.workers = static_cast<int>(cfg.get_int("mc.workers", spec.workers));
  return spec;
}

}  // namespace smlink
