#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "smlink/channel.hpp"

using namespace smlink;

namespace {
LinkConfig base_cfg() {
  LinkConfig cfg;
  cfg.n_tx = 2;
  cfg.n_rx = 2;
  cfg.snr_db = 0.0;
  cfg.n_pilots = PilotCount::finite(1);
  return cfg;
}
}  // namespace

TEST_CASE("rayleigh gains: unit mean square and circular symmetry") {
  LinkConfig cfg = base_cfg();
  Philox4x64 rng(11, 0);
  const int draws = 250000;  // 4 gains each -> 1e6 samples
  double p = 0, re2 = 0, im2 = 0;
  long long n = 0;
  for (int i = 0; i < draws; ++i) {
    const auto ch = sample_rayleigh_channel(cfg, rng);
    for (const auto& g : ch.gains.data) {
      p += std::norm(g);
      re2 += g.real() * g.real();
      im2 += g.imag() * g.imag();
      ++n;
    }
  }
  CHECK(p / n == doctest::Approx(1.0).epsilon(0.01));
  CHECK(re2 / n == doctest::Approx(0.5).epsilon(0.01));
  CHECK(im2 / n == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("|alpha|^2 follows the unit-mean exponential law (KS)") {
  LinkConfig cfg = base_cfg();
  cfg.n_tx = 2;
  cfg.n_rx = 1;
  Philox4x64 rng(12, 0);
  std::vector<double> x;
  x.reserve(100000);
  while (x.size() < 100000) {
    const auto ch = sample_rayleigh_channel(cfg, rng);
    for (const auto& g : ch.gains.data) x.push_back(std::norm(g));
  }
  std::sort(x.begin(), x.end());
  double ks = 0.0;
  const double n = double(x.size());
  for (size_t i = 0; i < x.size(); ++i) {
    const double cdf = 1.0 - std::exp(-x[i]);
    ks = std::max(ks, std::abs(cdf - (i + 1) / n));
    ks = std::max(ks, std::abs(cdf - i / n));
  }
  CHECK(ks < 0.01);
}

TEST_CASE("perfect-CSI estimation returns the gains unchanged") {
  LinkConfig cfg = base_cfg();
  cfg.n_pilots = PilotCount::infinite();
  Philox4x64 rng(13, 0);
  const auto ch = sample_rayleigh_channel(cfg, rng);
  const auto est = estimate_channel(ch, cfg, rng);
  CHECK(est.err_variance_per_dim == 0.0);
  for (size_t i = 0; i < ch.gains.data.size(); ++i)
    CHECK(est.est_gains.data[i] == ch.gains.data[i]);
}

TEST_CASE("estimation error variance is N0/(Ep Np) per dimension") {
  LinkConfig cfg = base_cfg();
  cfg.snr_db = 0.0;  // gamma_bar = 1 -> N0 = 1
  cfg.pilot_ratio = 1.0;
  cfg.n_pilots = PilotCount::finite(1);
  CHECK(cfg.est_error_var_per_dim() == doctest::Approx(1.0));

  // quadrupling the pilots divides the error variance by four
  Philox4x64 rng(14, 0);
  auto sample_var = [&](int n_pilots) {
    LinkConfig c = cfg;
    c.n_pilots = PilotCount::finite(n_pilots);
    double acc = 0;
    long long n = 0;
    for (int i = 0; i < 125000; ++i) {
      const auto ch = sample_rayleigh_channel(c, rng);
      const auto est = estimate_channel(ch, c, rng);
      for (size_t k = 0; k < ch.gains.data.size(); ++k) {
        const cplx e = est.est_gains.data[k] - ch.gains.data[k];
        acc += e.real() * e.real() + e.imag() * e.imag();
        n += 2;
      }
    }
    return acc / n;
  };
  const double v1 = sample_var(1);
  const double v4 = sample_var(4);
  CHECK(v4 / v1 == doctest::Approx(0.25).epsilon(0.02));
}

TEST_CASE("estimation error is uncorrelated with the gains") {
  LinkConfig cfg = base_cfg();
  Philox4x64 rng(15, 0);
  double sum_prod = 0, sum_e2 = 0, sum_a2 = 0;
  long long n = 0;
  for (int i = 0; i < 250000; ++i) {
    const auto ch = sample_rayleigh_channel(cfg, rng);
    const auto est = estimate_channel(ch, cfg, rng);
    for (size_t k = 0; k < ch.gains.data.size(); ++k) {
      const cplx a = ch.gains.data[k];
      const cplx e = est.est_gains.data[k] - a;
      sum_prod += a.real() * e.real() + a.imag() * e.imag();
      sum_a2 += std::norm(a);
      sum_e2 += std::norm(e);
      ++n;
    }
  }
  const double corr =
      sum_prod / std::sqrt(sum_a2 * sum_e2);
  CHECK(std::abs(corr) < 0.01);
}

TEST_CASE("noiseless receive samples are exact") {
  LinkConfig cfg = base_cfg();
  cfg.snr_db = std::numeric_limits<double>::infinity();  // N0 = 0
  Philox4x64 rng(16, 0);
  const auto ch = sample_rayleigh_channel(cfg, rng);

  const auto ssk = faded_rx_samples(TxMode::ssk, 0, ch, cfg, rng);
  for (int r = 0; r < cfg.n_rx; ++r)
    CHECK(ssk.samples(0, r) == ch.gains(0, r));

  const auto tosd = faded_rx_samples(TxMode::tosd, 1, ch, cfg, rng);
  for (int t = 0; t < cfg.n_tx; ++t)
    for (int r = 0; r < cfg.n_rx; ++r) {
      if (t == 1)
        CHECK(tosd.samples(t, r) == ch.gains(1, r));
      else
        CHECK(tosd.samples(t, r) == cplx{0.0, 0.0});
    }
}

TEST_CASE("receive noise has variance N0 per dimension") {
  LinkConfig cfg = base_cfg();
  cfg.snr_db = 3.0;
  const double n0 = cfg.noise_psd();
  Philox4x64 rng(17, 0);
  const auto ch = sample_rayleigh_channel(cfg, rng);
  double acc = 0;
  long long n = 0;
  for (int i = 0; i < 500000; ++i) {
    const auto y = faded_rx_samples(TxMode::ssk, 0, ch, cfg, rng);
    for (int r = 0; r < cfg.n_rx; ++r) {
      const double im = (y.samples(0, r) - ch.gains(0, r)).imag();
      acc += im * im;
      ++n;
    }
  }
  CHECK(acc / n == doctest::Approx(n0).epsilon(0.01));
}

TEST_CASE("filter-bank noise branches are uncorrelated") {
  LinkConfig cfg = base_cfg();
  cfg.snr_db = 0.0;
  Philox4x64 rng(18, 0);
  const auto ch = sample_rayleigh_channel(cfg, rng);
  double s12 = 0, s1 = 0, s2 = 0;
  long long n = 0;
  for (int i = 0; i < 500000; ++i) {
    const auto y = faded_rx_samples(TxMode::tosd, 0, ch, cfg, rng);
    // branches 0 and 1 at rx 0; branch 0 carries the signal, strip it
    const cplx n1 = y.samples(0, 0) - ch.gains(0, 0);
    const cplx n2 = y.samples(1, 0);
    s12 += n1.real() * n2.real() + n1.imag() * n2.imag();
    s1 += std::norm(n1);
    s2 += std::norm(n2);
    ++n;
  }
  CHECK(std::abs(s12 / std::sqrt(s1 * s2)) < 0.01);
}

TEST_CASE("invalid antenna index is rejected") {
  LinkConfig cfg = base_cfg();
  Philox4x64 rng(19, 0);
  const auto ch = sample_rayleigh_channel(cfg, rng);
  CHECK_THROWS_AS(faded_rx_samples(TxMode::ssk, -1, ch, cfg, rng),
                  std::out_of_range);
  CHECK_THROWS_AS(faded_rx_samples(TxMode::tosd, cfg.n_tx, ch, cfg, rng),
                  std::out_of_range);
}

TEST_CASE("config validation") {
  LinkConfig cfg = base_cfg();
  cfg.n_tx = 3;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = base_cfg();
  cfg.pilot_ratio = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  CHECK_THROWS_AS(PilotCount::finite(0), ConfigError);
}
