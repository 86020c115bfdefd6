#include "smlink/channel.hpp"

#include <stdexcept>

namespace smlink {

ChannelRealization sample_rayleigh_channel(const LinkConfig& cfg,
                                           Philox4x64& rng) {
  ChannelRealization out;
  out.gains = ComplexMatrix(cfg.n_tx, cfg.n_rx);
  const double var = cfg.omega0 / 2.0;  // per dimension
  for (auto& g : out.gains.data) g = complex_normal(rng, var);
  return out;
}

ChannelEstimate estimate_channel(const ChannelRealization& truth,
                                 const LinkConfig& cfg, Philox4x64& rng) {
  ChannelEstimate out;
  out.est_gains = truth.gains;
  out.err_variance_per_dim = cfg.est_error_var_per_dim();
  if (out.err_variance_per_dim > 0.0) {
    for (auto& g : out.est_gains.data)
      g += complex_normal(rng, out.err_variance_per_dim);
  }
  return out;
}

MatchedFilterOutput faded_rx_samples(TxMode mode, int tx_index,
                                     const ChannelRealization& truth,
                                     const LinkConfig& cfg, Philox4x64& rng) {
  if (tx_index < 0 || tx_index >= cfg.n_tx)
    throw std::out_of_range("tx_index outside [0, n_tx)");
  const double amp = std::sqrt(cfg.symbol_energy());
  const double n0 = cfg.noise_psd();
  MatchedFilterOutput out;
  if (mode == TxMode::ssk) {
    out.samples = ComplexMatrix(1, cfg.n_rx);
    for (int r = 0; r < cfg.n_rx; ++r)
      out.samples(0, r) =
          amp * truth.gains(tx_index, r) + complex_normal(rng, n0);
  } else {
    out.samples = ComplexMatrix(cfg.n_tx, cfg.n_rx);
    for (int t = 0; t < cfg.n_tx; ++t)
      for (int r = 0; r < cfg.n_rx; ++r) {
        cplx y = complex_normal(rng, n0);
        if (t == tx_index) y += amp * truth.gains(tx_index, r);
        out.samples(t, r) = y;
      }
  }
  return out;
}

}  // namespace smlink
