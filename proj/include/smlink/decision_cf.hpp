#pragma once

#include <complex>
#include <utility>

#include "smlink/link_config.hpp"
#include "smlink/quadrature.hpp"

namespace smlink {

// Conditional characteristic function of the detection decision variable.
// Both detectors reduce, given the channel, to a Hermitian quadratic form in
// complex Gaussians whose CF is
//
//   Psi(nu | gamma) = Upsilon(nu) * exp(Delta(nu) * gamma)
//
// with Upsilon(nu) = (va vb)^Nr (nu + j va)^-Nr (nu - j vb)^-Nr and
// Delta(nu) = va vb (-nu^2 ga + j nu gb) / ((nu + j va)(nu - j vb)).
// The perfect-CSI limit (va = vb -> inf) degenerates to Upsilon = 1 and
// Delta(nu) = -nu^2 ga + j nu gb; it is carried symbolically so a single code
// path serves both branches.
struct CfParams {
  double v_a = 0.0;  // +inf in the perfect-CSI limit
  double v_b = 0.0;
  double g_a = 0.0;  // quadratic (per nu^2) coefficient
  double g_b = 0.0;  // linear (per nu) coefficient
  int n_rx = 1;

  bool pcsi() const { return !std::isfinite(v_a); }
};

std::complex<double> cf_upsilon(const CfParams& p, double nu);
std::complex<double> cf_delta(const CfParams& p, double nu);

// Single-filter scheme: the decision variable conditions on
// gamma = sum_r |alpha_q,r - alpha_t,r|^2.
CfParams ssk_cf_params(const LinkConfig& cfg);

// Orthogonal-filter scheme: two branch parameterizations sharing (va, vb),
// conditioning on gamma_q = sum_r |alpha_q,r|^2 and gamma_t respectively.
// The pairwise CF factorizes as Psi_q(nu) * Psi_t(-nu).
std::pair<CfParams, CfParams> tosd_cf_params(const LinkConfig& cfg);

// Conditional pairwise error probabilities by Gil-Pelaez inversion.
// gamma arguments must be >= 0.
double pep_conditional_ssk(const LinkConfig& cfg, double gamma,
                           const QuadratureSpec& spec = {});
double pep_conditional_tosd(const LinkConfig& cfg, double gamma_q,
                            double gamma_t, const QuadratureSpec& spec = {});

}  // namespace smlink
