#pragma once

#include <array>
#include <functional>
#include <string>

#include "smlink/quadrature.hpp"

namespace smlink {

// Unit-energy shaping pulse with a closed-form energy spectrum.
// time_fn(xi) is the amplitude at xi seconds; spectrum_mag2(omega) is
// |P(omega)|^2 under the unitary transform P(w) = (2pi)^-1/2 int p e^-jwx dx,
// so int |p|^2 dxi = int |P|^2 domega = 1.
struct Pulse {
  std::function<double(double)> time_fn;
  std::function<double(double)> spectrum_mag2;
  std::string label;
  double duration = 0.0;  // time-limited support [-duration/2, duration/2]
};

// Hermite-function basis, order k in 1..5, dimensionless argument xi/t0.
// Mutually orthonormal; the spectrum is shape-invariant (polynomial times
// Gaussian in t0*omega).
Pulse hermite_basis(int order, double t0);

// Four mutually orthogonal unit-energy filters built as fixed linear
// combinations of the five Hermite basis functions. All four share the same
// time duration and practical bandwidth.
struct FilterBank {
  std::array<Pulse, 4> pulses;
  std::array<std::array<double, 5>, 4> coeffs;
  double t0 = 0.0;
};

FilterBank build_tosd_bank_nt4(double t0);

enum class ReferencePulseKind { rectangular, half_sine, raised_cosine };

Pulse reference_pulse(ReferencePulseKind kind, double T0);

// Spectral analysis settings shared by both bandwidth measures. The energy
// fraction is taken over the analysis band omega in [0, omega_max]; measured
// bandwidths above report_cap_hz are reported as capped ("> cap").
struct BandwidthOptions {
  double omega_max = 2.0e5;     // rad/s (~31.83 kHz)
  double report_cap_hz = 30e3;  // table reporting convention
};

struct BandwidthResult {
  double hz = 0.0;     // B/(2pi)
  bool capped = false; // beyond report_cap_hz (value still carries B if known)
};

// Fractional power containment: smallest B with
// int_0^B |P|^2 dw / int_0^{wmax} |P|^2 dw > fraction. One-sided.
BandwidthResult fpcb(const Pulse& pulse, double fraction,
                     const BandwidthOptions& opt = {});

// Bounded power spectral density: smallest B such that |P(w)|^2 stays below
// peak * 10^-threshold for all w > B. The threshold is in decades below the
// spectral peak (the conventional row labels read "th dB").
BandwidthResult bpsdb(const Pulse& pulse, double threshold,
                      const BandwidthOptions& opt = {});

}  // namespace smlink
