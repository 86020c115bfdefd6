#pragma once

#include <cstdint>

#include "smlink/abep.hpp"
#include "smlink/channel.hpp"
#include "smlink/constellation.hpp"
#include "smlink/link_config.hpp"
#include "smlink/rng.hpp"

namespace smlink {

// One Monte Carlo scenario: scheme + link point. For the QAM baselines
// qam_order fixes the constellation; link.n_tx is ignored for qam_siso and
// must be 2 for alamouti_qam.
struct SchemeConfig {
  Scheme scheme = Scheme::ssk;
  LinkConfig link;
  int qam_order = 4;
  MappingKind mapping = MappingKind::natural;

  int bits_per_use() const;    // bpcu
  int uses_per_block() const;  // channel uses per simulated block (2 for the
                               // two-slot code, else 1)
  int bits_per_block() const { return bits_per_use() * uses_per_block(); }
  void validate() const;
};

struct BerEstimate {
  std::uint64_t trials = 0;      // channel uses
  std::uint64_t bit_errors = 0;
  double ber = 0.0;              // bit_errors / (trials * bpcu)
  double std_err = 0.0;          // binomial, per bit
  bool upper_bound_only = false; // zero errors when the trial cap hit
};

struct StoppingRule {
  std::uint64_t min_errors = 200;
  std::uint64_t max_trials = 100'000'000;  // channel uses
};

// Single-block trials; each returns the Hamming distance between sent and
// detected bit labels (0..bits_per_block). The mismatched detector plugs the
// pilot-based channel estimate into the perfect-knowledge ML metric.
int run_trial_ssk(const SchemeConfig& cfg, Philox4x64& rng);
int run_trial_tosd(const SchemeConfig& cfg, Philox4x64& rng);
int run_trial_qam(const SchemeConfig& cfg, Philox4x64& rng);
int run_trial_alamouti(const SchemeConfig& cfg, Philox4x64& rng);

int run_trial(const SchemeConfig& cfg, Philox4x64& rng);

// Runs blocks until min_errors accumulated bit errors or the trial cap,
// sharding fixed-size chunks across `workers` threads. Chunk k always draws from the
// stream derived from (seed, k) and the stopping rule is evaluated on chunk
// prefixes in index order, so the estimate is bit-identical for any worker
// count. workers = 0 picks the hardware concurrency.
BerEstimate estimate_ber(const SchemeConfig& cfg, double snr_db,
                         const StoppingRule& stopping, std::uint64_t seed,
                         int workers = 0);

}  // namespace smlink
