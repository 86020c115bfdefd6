#include "smlink/decision_cf.hpp"

#include <cmath>
#include <stdexcept>

namespace smlink {

using cd = std::complex<double>;

std::complex<double> cf_upsilon(const CfParams& p, double nu) {
  if (p.pcsi()) return {1.0, 0.0};
  // (va vb)^Nr / ((nu + j va)(nu - j vb))^Nr via logs; keeps large Nr and
  // large va*vb (deep pilot products) away from overflow.
  const cd la = std::log(cd(nu, p.v_a));
  const cd lb = std::log(cd(nu, -p.v_b));
  const double lvv = std::log(p.v_a) + std::log(p.v_b);
  return std::exp(double(p.n_rx) * (lvv - la - lb));
}

std::complex<double> cf_delta(const CfParams& p, double nu) {
  const cd num(-nu * nu * p.g_a, nu * p.g_b);
  if (p.pcsi()) return num;
  return p.v_a * p.v_b * num / (cd(nu, p.v_a) * cd(nu, -p.v_b));
}

CfParams ssk_cf_params(const LinkConfig& cfg) {
  cfg.validate();
  const double gbar = cfg.snr_linear();
  CfParams p;
  p.n_rx = cfg.n_rx;
  if (cfg.n_pilots.is_infinite) {
    p.v_a = p.v_b = std::numeric_limits<double>::infinity();
    p.g_a = 2.0 * gbar;
    p.g_b = gbar;
    return p;
  }
  const double npr = cfg.pilot_snr_product();
  p.v_a = p.v_b = 0.5 * npr / std::sqrt(1.0 + 2.0 * npr);
  p.g_a = 2.0 * gbar * (1.0 + 1.0 / npr);
  p.g_b = gbar;
  return p;
}

std::pair<CfParams, CfParams> tosd_cf_params(const LinkConfig& cfg) {
  cfg.validate();
  const double gbar = cfg.snr_linear();
  CfParams q, t;
  q.n_rx = t.n_rx = cfg.n_rx;
  if (cfg.n_pilots.is_infinite) {
    q.v_a = q.v_b = t.v_a = t.v_b = std::numeric_limits<double>::infinity();
    q.g_a = 0.5 * gbar;
    q.g_b = 0.5 * gbar;
    t.g_a = 0.5 * gbar;
    t.g_b = -0.5 * gbar;
    return {q, t};
  }
  const double npr = cfg.pilot_snr_product();
  const double s = std::sqrt(0.25 + npr);
  q.v_a = t.v_a = s + 0.5;
  q.v_b = t.v_b = s - 0.5;  // va - vb = 1, va*vb = npr
  q.g_a = 0.5 * gbar * (1.0 + 1.0 / npr);
  q.g_b = 0.5 * gbar;
  t.g_a = 0.5 * gbar;
  t.g_b = -0.5 * gbar;
  return {q, t};
}

double pep_conditional_ssk(const LinkConfig& cfg, double gamma,
                           const QuadratureSpec& spec) {
  if (gamma < 0.0) throw std::invalid_argument("gamma must be >= 0");
  const CfParams p = ssk_cf_params(cfg);
  auto psi = [&](double nu) {
    return cf_upsilon(p, nu) * std::exp(cf_delta(p, nu) * gamma);
  };
  return gil_pelaez_cf(psi, spec);
}

double pep_conditional_tosd(const LinkConfig& cfg, double gamma_q,
                            double gamma_t, const QuadratureSpec& spec) {
  if (gamma_q < 0.0 || gamma_t < 0.0)
    throw std::invalid_argument("gamma must be >= 0");
  const auto [pq, pt] = tosd_cf_params(cfg);
  auto psi = [&](double nu) {
    return cf_upsilon(pq, nu) * cf_upsilon(pt, -nu) *
           std::exp(cf_delta(pq, nu) * gamma_q + cf_delta(pt, -nu) * gamma_t);
  };
  return gil_pelaez_cf(psi, spec);
}

}  // namespace smlink
