#pragma once

#include <complex>
#include <vector>

#include "smlink/link_config.hpp"
#include "smlink/rng.hpp"

namespace smlink {

// Minimal dense complex matrix, row-major, (row, col) = (tx branch, rx).
struct ComplexMatrix {
  int rows = 0, cols = 0;
  std::vector<cplx> data;

  ComplexMatrix() = default;
  ComplexMatrix(int r, int c) : rows(r), cols(c), data(size_t(r) * c) {}

  cplx& operator()(int r, int c) { return data[size_t(r) * cols + c]; }
  const cplx& operator()(int r, int c) const {
    return data[size_t(r) * cols + c];
  }
};

// Quasi-static channel gains alpha[t][r] for one pilot-plus-data block.
struct ChannelRealization {
  ComplexMatrix gains;  // n_tx x n_rx
};

// Pilot-based ML estimate alpha_hat = alpha + eps.
struct ChannelEstimate {
  ComplexMatrix est_gains;         // n_tx x n_rx
  double err_variance_per_dim = 0; // sigma_eps^2
};

// Post-matched-filter receive samples. In ssk mode there is a single filter
// branch (one row); in tosd mode one row per transmit filter.
struct MatchedFilterOutput {
  ComplexMatrix samples;  // branches x n_rx
};

// i.i.d. Rayleigh gains with E{|alpha|^2} = omega0.
ChannelRealization sample_rayleigh_channel(const LinkConfig& cfg,
                                           Philox4x64& rng);

// Adds i.i.d. complex Gaussian error with per-dimension variance
// N0/(Ep*Np); infinite pilots return the gains unchanged.
ChannelEstimate estimate_channel(const ChannelRealization& truth,
                                 const LinkConfig& cfg, Philox4x64& rng);

// Receive samples when antenna `tx_index` (0-based) is active.
// ssk: y_r = sqrt(Em) alpha[q][r] + n_r (one branch).
// tosd: y[t][r] = sqrt(Em) alpha[q][r] delta(t,q) + n[t][r].
// Noise is i.i.d. across branches and receive antennas, variance N0 per
// dimension.
MatchedFilterOutput faded_rx_samples(TxMode mode, int tx_index,
                                     const ChannelRealization& truth,
                                     const LinkConfig& cfg, Philox4x64& rng);

}  // namespace smlink
