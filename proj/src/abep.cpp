#include "smlink/abep.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace smlink {

using cd = std::complex<double>;

std::string scheme_name(Scheme s) {
  switch (s) {
    case Scheme::ssk: return "ssk";
    case Scheme::tosd_ssk: return "tosd_ssk";
    case Scheme::qam_siso: return "qam_siso";
    case Scheme::alamouti_qam: return "alamouti_qam";
  }
  return "?";
}

Scheme scheme_from_name(const std::string& name) {
  if (name == "ssk") return Scheme::ssk;
  if (name == "tosd_ssk") return Scheme::tosd_ssk;
  if (name == "qam_siso") return Scheme::qam_siso;
  if (name == "alamouti_qam") return Scheme::alamouti_qam;
  throw ConfigError("unknown scheme: " + name);
}

double apep(TxMode mode, const LinkConfig& cfg, const FadingMgf& mgf,
            const QuadratureSpec& spec) {
  if (mode == TxMode::ssk) {
    if (mgf.kind != FadingMgf::Kind::ssk_gamma_diff)
      throw std::invalid_argument("MGF kind does not match ssk mode");
    const CfParams p = ssk_cf_params(cfg);
    auto psi = [&](double nu) {
      return cf_upsilon(p, nu) * mgf.mgf(cf_delta(p, nu));
    };
    return gil_pelaez_cf(psi, spec);
  }
  if (mgf.kind != FadingMgf::Kind::tosd_gamma_pair)
    throw std::invalid_argument("MGF kind does not match tosd mode");
  const auto [pq, pt] = tosd_cf_params(cfg);
  auto psi = [&](double nu) {
    return cf_upsilon(pq, nu) * cf_upsilon(pt, -nu) *
           mgf.mgf_pair(cf_delta(pq, nu), cf_delta(pt, -nu));
  };
  return gil_pelaez_cf(psi, spec);
}

double abep_union_bound(
    TxMode mode, const LinkConfig& cfg,
    const std::function<FadingMgf(int t, int q)>& mgf_provider,
    const BitMapping& mapping, const QuadratureSpec& spec) {
  if (mapping.size() != cfg.n_tx)
    throw std::invalid_argument("mapping dimension != n_tx");
  double acc = 0.0;
  for (int q = 0; q < cfg.n_tx; ++q) {
    for (int t = 0; t < cfg.n_tx; ++t) {
      const int nh = mapping.hamming(t, q);
      if (nh == 0) continue;
      acc += nh * apep(mode, cfg, mgf_provider(t, q), spec);
    }
  }
  return acc / (cfg.n_tx * mapping.bits());
}

double abep_iid_fast(TxMode mode, const LinkConfig& cfg, const FadingMgf& mgf,
                     const QuadratureSpec& spec) {
  return 0.5 * cfg.n_tx * apep(mode, cfg, mgf, spec);
}

double abep_iid_rayleigh(TxMode mode, const LinkConfig& cfg,
                         const QuadratureSpec& spec) {
  const FadingMgf mgf = (mode == TxMode::ssk)
                            ? rayleigh_iid_ssk_mgf(cfg.omega0, cfg.n_rx)
                            : rayleigh_iid_tosd_mgf(cfg.omega0, cfg.n_rx);
  return abep_iid_fast(mode, cfg, mgf, spec);
}

double snr_threshold(const std::function<double(double)>& curve_fn,
                     double target, double lo_db, double hi_db,
                     double tol_db) {
  if (!(target > 0.0)) throw std::invalid_argument("target must be > 0");
  // Coarse 1 dB scan for a bracket; curves are smooth and monotone in the
  // regimes of interest, so the first sign change is the crossing.
  double prev_db = lo_db;
  double prev_val = curve_fn(lo_db);
  double lo_val = prev_val, hi_val = prev_val;
  double blo = 0.0, bhi = 0.0;
  bool found = false;
  for (double db = lo_db + 1.0; db <= hi_db + 1e-9; db += 1.0) {
    const double val = curve_fn(db);
    lo_val = std::max(lo_val, val);
    hi_val = std::min(hi_val, val);
    if ((prev_val - target) * (val - target) <= 0.0) {
      blo = prev_db;
      bhi = db;
      found = true;
      break;
    }
    prev_db = db;
    prev_val = val;
  }
  lo_val = std::max(lo_val, prev_val);
  if (!found)
    throw ThresholdRangeError("target outside achieved range [" +
                                  std::to_string(hi_val) + ", " +
                                  std::to_string(lo_val) + "]",
                              hi_val, lo_val);
  while (bhi - blo > tol_db) {
    const double mid = 0.5 * (blo + bhi);
    (curve_fn(mid) > target ? blo : bhi) = mid;
  }
  return 0.5 * (blo + bhi);
}

AbepCurve abep_curve(Scheme scheme, const LinkConfig& cfg,
                     const std::vector<double>& snr_grid_db,
                     const QuadratureSpec& spec) {
  if (scheme != Scheme::ssk && scheme != Scheme::tosd_ssk)
    throw std::invalid_argument("analytic curves exist for ssk/tosd_ssk only");
  const TxMode mode =
      scheme == Scheme::ssk ? TxMode::ssk : TxMode::tosd;
  AbepCurve out;
  out.scheme = scheme;
  out.cfg = cfg;
  out.points.reserve(snr_grid_db.size());
  for (double db : snr_grid_db) {
    LinkConfig c = cfg;
    c.snr_db = db;
    const double v = abep_iid_rayleigh(mode, c, spec);
    out.points.push_back({db, v, v > 0.5});
  }
  return out;
}

double diversity_slope(const AbepCurve& curve, double abep_lo,
                       double abep_hi) {
  // Fit log10(abep) = a + b * (snr_db/10); return -b (decades per decade).
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (const auto& p : curve.points) {
    if (p.abep < abep_lo || p.abep > abep_hi) continue;
    const double x = p.snr_db / 10.0;
    const double y = std::log10(p.abep);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 3)
    throw std::invalid_argument("fewer than 3 curve points in the window");
  const double b = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return -b;
}

}  // namespace smlink
