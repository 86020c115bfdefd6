#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

namespace smlink {

using cplx = std::complex<double>;

enum class TxMode { ssk, tosd };

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Pilot count: a finite number of training pulses, or "infinite" selecting the
// perfect-CSI branch.
struct PilotCount {
  static PilotCount finite(int n) {
    if (n < 1) throw ConfigError("pilot count must be >= 1");
    return PilotCount{false, n};
  }
  static PilotCount infinite() { return PilotCount{true, 0}; }

  bool is_infinite = false;
  int count = 1;

  double value() const {
    return is_infinite ? std::numeric_limits<double>::infinity()
                       : static_cast<double>(count);
  }
  std::string str() const {
    return is_infinite ? "inf" : std::to_string(count);
  }
  bool operator==(const PilotCount&) const = default;
};

// Link-level experiment point. Average symbol energy is normalized to
// E_m = 1; the SNR gamma_bar = E_m/N_0 fixes the noise spectral density
// (per real dimension) and the pilot ratio r_pm = E_p/E_m fixes the pilot
// energy, so only ratios matter.
struct LinkConfig {
  int n_tx = 2;   // transmit antennas, power of two
  int n_rx = 1;   // receive antennas
  double snr_db = 0.0;
  PilotCount n_pilots = PilotCount::finite(1);
  double pilot_ratio = 1.0;  // r_pm = E_p/E_m
  double omega0 = 1.0;       // E{|alpha|^2} per link

  double snr_linear() const { return std::pow(10.0, snr_db / 10.0); }
  double symbol_energy() const { return 1.0; }
  double noise_psd() const { return symbol_energy() / snr_linear(); }
  double pilot_energy() const { return pilot_ratio * symbol_energy(); }

  // N_p * r_pm, the only combination the estimation error depends on.
  double pilot_snr_product() const { return n_pilots.value() * pilot_ratio; }

  // sigma_eps^2 = N_0 / (E_p N_p) per dimension; 0 under perfect CSI.
  double est_error_var_per_dim() const {
    if (n_pilots.is_infinite) return 0.0;
    return noise_psd() / (pilot_energy() * n_pilots.count);
  }

  void validate() const {
    if (n_tx < 2 || (n_tx & (n_tx - 1)) != 0)
      throw ConfigError("n_tx must be a power of two >= 2");
    if (n_rx < 1) throw ConfigError("n_rx must be >= 1");
    if (std::isnan(snr_db)) throw ConfigError("snr_db must not be NaN");
    if (!(pilot_ratio > 0.0)) throw ConfigError("pilot_ratio must be > 0");
    if (!(omega0 > 0.0)) throw ConfigError("omega0 must be > 0");
  }

  int bits_per_symbol() const {
    int b = 0;
    for (int v = n_tx; v > 1; v >>= 1) ++b;
    return b;
  }
};

}  // namespace smlink
