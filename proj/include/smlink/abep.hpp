#pragma once

#include <functional>
#include <string>
#include <vector>

#include "smlink/bit_mapping.hpp"
#include "smlink/decision_cf.hpp"
#include "smlink/fading_mgf.hpp"
#include "smlink/link_config.hpp"

namespace smlink {

enum class Scheme { ssk, tosd_ssk, qam_siso, alamouti_qam };

std::string scheme_name(Scheme s);
Scheme scheme_from_name(const std::string& name);

// Unconditional pairwise error probability: Gil-Pelaez on the fading-averaged
// CF. The FadingMgf kind must match the mode (ssk <-> ssk_gamma_diff,
// tosd <-> tosd_gamma_pair).
double apep(TxMode mode, const LinkConfig& cfg, const FadingMgf& mgf,
            const QuadratureSpec& spec = {});

// Union bound over ordered antenna pairs, Hamming-weighted:
// (1/(Nt log2 Nt)) sum_q sum_t N_H(t,q) APEP(q -> t).
double abep_union_bound(
    TxMode mode, const LinkConfig& cfg,
    const std::function<FadingMgf(int t, int q)>& mgf_provider,
    const BitMapping& mapping, const QuadratureSpec& spec = {});

// Identical-APEP fast path: (Nt/2) * APEP0.
double abep_iid_fast(TxMode mode, const LinkConfig& cfg, const FadingMgf& mgf,
                     const QuadratureSpec& spec = {});

// i.i.d. Rayleigh specialization with the closed-form MGFs inlined.
double abep_iid_rayleigh(TxMode mode, const LinkConfig& cfg,
                         const QuadratureSpec& spec = {});

class ThresholdRangeError : public std::runtime_error {
 public:
  ThresholdRangeError(const std::string& what, double lo, double hi)
      : std::runtime_error(what), achieved_lo_(lo), achieved_hi_(hi) {}
  double achieved_min() const { return achieved_lo_; }
  double achieved_max() const { return achieved_hi_; }

 private:
  double achieved_lo_, achieved_hi_;
};

// SNR (dB) where a monotone-decreasing error-rate curve crosses `target`.
// Brackets on a coarse 1 dB scan of [lo_db, hi_db] then bisects to tol_db.
// Throws ThresholdRangeError (naming the achieved extremes) if the target is
// not enclosed.
double snr_threshold(const std::function<double(double)>& curve_fn,
                     double target, double lo_db = -10.0, double hi_db = 50.0,
                     double tol_db = 0.02);

struct AbepPoint {
  double snr_db = 0.0;
  double abep = 0.0;
  bool bound_loose = false;  // bound value above 1/2, reported as-is
};

struct AbepCurve {
  Scheme scheme = Scheme::ssk;
  LinkConfig cfg;  // snr_db field unused; grid lives in points
  std::vector<AbepPoint> points;
};

AbepCurve abep_curve(Scheme scheme, const LinkConfig& cfg,
                     const std::vector<double>& snr_grid_db,
                     const QuadratureSpec& spec = {});

// Least-squares diversity order: -d log10(ABEP) / d (snr_db/10) fitted over
// the points whose ABEP lies in [abep_lo, abep_hi]. Needs >= 3 such points.
double diversity_slope(const AbepCurve& curve, double abep_lo, double abep_hi);

}  // namespace smlink
