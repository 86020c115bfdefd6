#include "smlink/mc.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <thread>
#include <vector>

namespace smlink {

int SchemeConfig::bits_per_use() const {
  switch (scheme) {
    case Scheme::ssk:
    case Scheme::tosd_ssk:
      return link.bits_per_symbol();
    case Scheme::qam_siso:
    case Scheme::alamouti_qam: {
      int b = 0;
      for (int v = qam_order; v > 1; v >>= 1) ++b;
      return b;
    }
  }
  return 0;
}

int SchemeConfig::uses_per_block() const {
  return scheme == Scheme::alamouti_qam ? 2 : 1;
}

void SchemeConfig::validate() const {
  if (scheme == Scheme::ssk || scheme == Scheme::tosd_ssk) {
    link.validate();
    return;
  }
  if (qam_order < 2 || (qam_order & (qam_order - 1)) != 0)
    throw ConfigError("qam_order must be a power of two >= 2");
  if (scheme == Scheme::alamouti_qam && link.n_tx != 2)
    throw ConfigError("the two-slot orthogonal code needs n_tx = 2");
  if (std::isnan(link.snr_db)) throw ConfigError("snr_db must not be NaN");
  if (link.n_rx < 1) throw ConfigError("n_rx must be >= 1");
  if (!(link.pilot_ratio > 0.0)) throw ConfigError("pilot_ratio must be > 0");
  if (!(link.omega0 > 0.0)) throw ConfigError("omega0 must be > 0");
}

namespace {

// scratch shared across trials of one chunk
struct Workspace {
  std::vector<cplx> h, hh, y;
  std::vector<double> metric;
  Constellation constellation;
  int constellation_order = 0;
  MappingKind constellation_mapping = MappingKind::natural;

  const Constellation& qam(int order, MappingKind mapping) {
    if (order != constellation_order || mapping != constellation_mapping) {
      constellation = qam_constellation(order, mapping);
      constellation_order = order;
      constellation_mapping = mapping;
    }
    return constellation;
  }
};

thread_local Workspace tls_ws;

inline int draw_index(Philox4x64& rng, int n) {
  // n is a power of two for every scheme here
  return static_cast<int>(rng() & std::uint64_t(n - 1));
}

int trial_ssk_impl(const SchemeConfig& cfg, Philox4x64& rng, Workspace& ws) {
  const LinkConfig& L = cfg.link;
  const int nt = L.n_tx, nr = L.n_rx;
  const double amp = std::sqrt(L.symbol_energy());
  const double n0 = L.noise_psd();
  const double ev = L.est_error_var_per_dim();
  ws.h.resize(size_t(nt) * nr);
  ws.hh.resize(size_t(nt) * nr);
  ws.y.resize(nr);
  const double hv = L.omega0 / 2.0;
  for (auto& g : ws.h) g = complex_normal(rng, hv);
  for (size_t i = 0; i < ws.h.size(); ++i)
    ws.hh[i] = ws.h[i] + complex_normal(rng, ev);
  const int q = draw_index(rng, nt);
  for (int r = 0; r < nr; ++r)
    ws.y[r] = amp * ws.h[size_t(q) * nr + r] + complex_normal(rng, n0);
  int best = 0;
  double best_m = 0.0;
  for (int t = 0; t < nt; ++t) {
    double m = 0.0;
    for (int r = 0; r < nr; ++r)
      m += std::norm(ws.y[r] - amp * ws.hh[size_t(t) * nr + r]);
    if (t == 0 || m < best_m) {
      best_m = m;
      best = t;
    }
  }
  return std::popcount(unsigned(best ^ q));
}

int trial_tosd_impl(const SchemeConfig& cfg, Philox4x64& rng, Workspace& ws) {
  const LinkConfig& L = cfg.link;
  const int nt = L.n_tx, nr = L.n_rx;
  const double amp = std::sqrt(L.symbol_energy());
  const double em = L.symbol_energy();
  const double n0 = L.noise_psd();
  const double ev = L.est_error_var_per_dim();
  ws.h.resize(size_t(nt) * nr);
  ws.hh.resize(size_t(nt) * nr);
  ws.y.resize(size_t(nt) * nr);
  const double hv = L.omega0 / 2.0;
  for (auto& g : ws.h) g = complex_normal(rng, hv);
  for (size_t i = 0; i < ws.h.size(); ++i)
    ws.hh[i] = ws.h[i] + complex_normal(rng, ev);
  const int q = draw_index(rng, nt);
  // matched-filter bank output: signal only on the active filter branch
  for (int t = 0; t < nt; ++t)
    for (int r = 0; r < nr; ++r) {
      cplx v = complex_normal(rng, n0);
      if (t == q) v += amp * ws.h[size_t(q) * nr + r];
      ws.y[size_t(t) * nr + r] = v;
    }
  int best = 0;
  double best_m = 0.0;
  for (int t = 0; t < nt; ++t) {
    double corr = 0.0, pwr = 0.0;
    for (int r = 0; r < nr; ++r) {
      const cplx& hh = ws.hh[size_t(t) * nr + r];
      corr += (std::conj(hh) * ws.y[size_t(t) * nr + r]).real();
      pwr += std::norm(hh);
    }
    const double m = amp * corr - 0.5 * em * pwr;
    if (t == 0 || m > best_m) {
      best_m = m;
      best = t;
    }
  }
  return std::popcount(unsigned(best ^ q));
}

int trial_qam_impl(const SchemeConfig& cfg, Philox4x64& rng, Workspace& ws) {
  const LinkConfig& L = cfg.link;
  const int nr = L.n_rx;
  const auto& con = ws.qam(cfg.qam_order, cfg.mapping);
  const int order = cfg.qam_order;
  const double amp = std::sqrt(L.symbol_energy());
  const double n0 = L.noise_psd();
  const double ev = L.est_error_var_per_dim();
  ws.h.resize(nr);
  ws.hh.resize(nr);
  ws.y.resize(nr);
  const double hv = L.omega0 / 2.0;
  for (int r = 0; r < nr; ++r) {
    ws.h[r] = complex_normal(rng, hv);
    ws.hh[r] = ws.h[r] + complex_normal(rng, ev);
  }
  const int s = draw_index(rng, order);
  for (int r = 0; r < nr; ++r)
    ws.y[r] = amp * ws.h[r] * con.points[s] + complex_normal(rng, n0);
  int best = 0;
  double best_m = 0.0;
  for (int k = 0; k < order; ++k) {
    double m = 0.0;
    for (int r = 0; r < nr; ++r)
      m += std::norm(ws.y[r] - amp * ws.hh[r] * con.points[k]);
    if (k == 0 || m < best_m) {
      best_m = m;
      best = k;
    }
  }
  return std::popcount(unsigned(best ^ s));
}

int trial_alamouti_impl(const SchemeConfig& cfg, Philox4x64& rng,
                        Workspace& ws) {
  const LinkConfig& L = cfg.link;
  const int nr = L.n_rx;
  const auto& con = ws.qam(cfg.qam_order, cfg.mapping);
  const int order = cfg.qam_order;
  // E_m split across the two active antennas each slot
  const double amp = std::sqrt(L.symbol_energy() / 2.0);
  const double n0 = L.noise_psd();
  const double ev = L.est_error_var_per_dim();
  ws.h.resize(size_t(2) * nr);
  ws.hh.resize(size_t(2) * nr);
  ws.y.resize(size_t(2) * nr);  // two slots
  const double hv = L.omega0 / 2.0;
  for (auto& g : ws.h) g = complex_normal(rng, hv);
  for (size_t i = 0; i < ws.h.size(); ++i)
    ws.hh[i] = ws.h[i] + complex_normal(rng, ev);
  const int s1 = draw_index(rng, order);
  const int s2 = draw_index(rng, order);
  const cplx c1 = con.points[s1], c2 = con.points[s2];
  for (int r = 0; r < nr; ++r) {
    const cplx h1 = ws.h[r], h2 = ws.h[size_t(nr) + r];
    ws.y[r] = amp * (h1 * c1 + h2 * c2) + complex_normal(rng, n0);
    ws.y[size_t(nr) + r] = amp * (-h1 * std::conj(c2) + h2 * std::conj(c1)) +
                           complex_normal(rng, n0);
  }
  // joint ML over the M^2 symbol pairs with the estimated gains
  int b1 = 0, b2 = 0;
  double best_m = 0.0;
  bool first = true;
  for (int k1 = 0; k1 < order; ++k1) {
    for (int k2 = 0; k2 < order; ++k2) {
      const cplx p1 = con.points[k1], p2 = con.points[k2];
      double m = 0.0;
      for (int r = 0; r < nr; ++r) {
        const cplx g1 = ws.hh[r], g2 = ws.hh[size_t(nr) + r];
        m += std::norm(ws.y[r] - amp * (g1 * p1 + g2 * p2));
        m += std::norm(ws.y[size_t(nr) + r] -
                       amp * (-g1 * std::conj(p2) + g2 * std::conj(p1)));
      }
      if (first || m < best_m) {
        best_m = m;
        b1 = k1;
        b2 = k2;
        first = false;
      }
    }
  }
  return std::popcount(unsigned(b1 ^ s1)) + std::popcount(unsigned(b2 ^ s2));
}

int dispatch_trial(const SchemeConfig& cfg, Philox4x64& rng, Workspace& ws) {
  switch (cfg.scheme) {
    case Scheme::ssk: return trial_ssk_impl(cfg, rng, ws);
    case Scheme::tosd_ssk: return trial_tosd_impl(cfg, rng, ws);
    case Scheme::qam_siso: return trial_qam_impl(cfg, rng, ws);
    case Scheme::alamouti_qam: return trial_alamouti_impl(cfg, rng, ws);
  }
  return 0;
}

constexpr std::uint64_t kChunkBlocks = 16384;

struct ChunkResult {
  std::uint64_t blocks = 0;
  std::uint64_t errors = 0;
};

}  // namespace

int run_trial_ssk(const SchemeConfig& cfg, Philox4x64& rng) {
  return trial_ssk_impl(cfg, rng, tls_ws);
}
int run_trial_tosd(const SchemeConfig& cfg, Philox4x64& rng) {
  return trial_tosd_impl(cfg, rng, tls_ws);
}
int run_trial_qam(const SchemeConfig& cfg, Philox4x64& rng) {
  return trial_qam_impl(cfg, rng, tls_ws);
}
int run_trial_alamouti(const SchemeConfig& cfg, Philox4x64& rng) {
  return trial_alamouti_impl(cfg, rng, tls_ws);
}
int run_trial(const SchemeConfig& cfg, Philox4x64& rng) {
  return dispatch_trial(cfg, rng, tls_ws);
}

BerEstimate estimate_ber(const SchemeConfig& cfg_in, double snr_db,
                         const StoppingRule& stopping, std::uint64_t seed,
                         int workers) {
  SchemeConfig cfg = cfg_in;
  cfg.link.snr_db = snr_db;
  cfg.validate();
  if (stopping.min_errors == 0 || stopping.max_trials == 0)
    throw ConfigError("stopping bounds must be positive");
  if (workers <= 0)
    workers = std::max(1u, std::thread::hardware_concurrency());

  const int upb = cfg.uses_per_block();
  const std::uint64_t max_blocks =
      std::max<std::uint64_t>(1, stopping.max_trials / upb);
  const std::uint64_t n_chunks =
      (max_blocks + kChunkBlocks - 1) / kChunkBlocks;

  auto run_chunk = [&](std::uint64_t k) {
    Philox4x64 rng(seed, derive_stream({0x6d63u, k}));
    const std::uint64_t begin = k * kChunkBlocks;
    const std::uint64_t end = std::min(begin + kChunkBlocks, max_blocks);
    ChunkResult res;
    res.blocks = end - begin;
    for (std::uint64_t i = begin; i < end; ++i)
      res.errors += dispatch_trial(cfg, rng, tls_ws);
    return res;
  };

  std::vector<ChunkResult> results;
  std::uint64_t stop_chunks = 0;  // chunks that enter the estimate
  bool stopped = false;
  std::uint64_t wave_start = 0;
  while (!stopped && wave_start < n_chunks) {
    const std::uint64_t wave =
        std::min<std::uint64_t>(n_chunks - wave_start,
                                std::max<std::uint64_t>(16, 8ull * workers));
    results.resize(wave_start + wave);
    std::atomic<std::uint64_t> next{wave_start};
    auto worker = [&] {
      for (;;) {
        const std::uint64_t k = next.fetch_add(1);
        if (k >= wave_start + wave) break;
        results[k] = run_chunk(k);
      }
    };
    if (workers == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
      for (auto& t : pool) t.join();
    }
    // stopping is decided on chunk prefixes, in index order
    std::uint64_t cum_err = 0;
    for (std::uint64_t k = 0; k < wave_start + wave; ++k) {
      cum_err += results[k].errors;
      if (cum_err >= stopping.min_errors) {
        stop_chunks = k + 1;
        stopped = true;
        break;
      }
    }
    wave_start += wave;
    if (!stopped) stop_chunks = wave_start;
  }

  BerEstimate out;
  std::uint64_t blocks = 0;
  for (std::uint64_t k = 0; k < stop_chunks; ++k) {
    blocks += results[k].blocks;
    out.bit_errors += results[k].errors;
  }
  out.trials = blocks * upb;
  const double bits = double(out.trials) * cfg.bits_per_use();
  out.ber = bits > 0 ? double(out.bit_errors) / bits : 0.0;
  out.std_err = bits > 0 ? std::sqrt(out.ber * (1.0 - out.ber) / bits) : 0.0;
  out.upper_bound_only = (out.bit_errors == 0);
  return out;
}

}  // namespace smlink
