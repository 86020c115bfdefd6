#pragma once

#include <complex>
#include <functional>

namespace smlink {

// Fading-average layer. A FadingMgf supplies the MGF of the fading functional
// the scheme's pairwise error probability conditions on:
//   ssk_gamma_diff: gamma = sum_r |alpha_q,r - alpha_t,r|^2, single argument.
//   tosd_gamma_pair: the pair (gamma_q, gamma_t); for independent branches the
//     joint MGF factors as M_q(s_q) * M_t(s_t), evaluated at complex
//     arguments coming from the CF's Delta functions.
//
// Plug-in contract: principal branch everywhere, mgf(0) = 1, analytic on the
// region swept by Delta (left half-plane in the real part). Only the i.i.d.
// Rayleigh closed forms ship here; correlated/other fading plugs in through
// this type.
struct FadingMgf {
  enum class Kind { ssk_gamma_diff, tosd_gamma_pair };

  Kind kind = Kind::ssk_gamma_diff;
  std::function<std::complex<double>(std::complex<double>)> mgf;
  std::function<std::complex<double>(std::complex<double>,
                                     std::complex<double>)>
      mgf_pair;
};

// gamma is a sum of n_rx i.i.d. Exp(2*omega0) terms: M(s) = (1-2 omega0 s)^-Nr.
FadingMgf rayleigh_iid_ssk_mgf(double omega0, int n_rx);

// Each branch power sum is Gamma(n_rx, omega0):
// M(s_q, s_t) = (1 - omega0 s_q)^-Nr (1 - omega0 s_t)^-Nr.
FadingMgf rayleigh_iid_tosd_mgf(double omega0, int n_rx);

}  // namespace smlink
