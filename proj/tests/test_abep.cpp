#include <doctest.h>

#include <cmath>

#include "smlink/abep.hpp"

using namespace smlink;

namespace {

LinkConfig make_cfg(int n_tx, int n_rx, double snr_db, int n_pilots) {
  LinkConfig cfg;
  cfg.n_tx = n_tx;
  cfg.n_rx = n_rx;
  cfg.snr_db = snr_db;
  cfg.n_pilots =
      n_pilots > 0 ? PilotCount::finite(n_pilots) : PilotCount::infinite();
  return cfg;
}

// Closed-form perfect-CSI references over i.i.d. Rayleigh fading (test-only
// oracle). Both detectors reduce to Pr{N(m, s^2) < 0} = Q(sqrt(2 c X)) with
// X ~ Gamma(L, 1), whose expectation is the classical diversity formula
//   E = [ (1-mu)/2 ]^L sum_{k=0}^{L-1} C(L-1+k, k) [ (1+mu)/2 ]^k,
// mu = sqrt(c/(1+c)). Single-filter: c = gbar*omega0/4, L = Nr (pair
// separation is Exp(2*omega0)); two-branch: c = gbar*omega0/8, L = 2*Nr.
double diversity_formula(double c, int L) {
  const double mu = std::sqrt(c / (1.0 + c));
  const double lo = 0.5 * (1.0 - mu), hi = 0.5 * (1.0 + mu);
  double sum = 0.0, binom = 1.0, hipow = 1.0;
  for (int k = 0; k < L; ++k) {
    if (k > 0) {
      binom = binom * (L - 1 + k) / k;
      hipow *= hi;
    }
    sum += binom * hipow;
  }
  return std::pow(lo, L) * sum;
}

double pcsi_abep_ssk_oracle(double gbar, int n_rx, int n_tx) {
  return 0.5 * n_tx * diversity_formula(gbar / 4.0, n_rx);
}

double pcsi_abep_tosd_oracle(double gbar, int n_rx, int n_tx) {
  return 0.5 * n_tx * diversity_formula(gbar / 8.0, 2 * n_rx);
}

}  // namespace

TEST_CASE("degenerate fading gives APEP one half") {
  FadingMgf unit;
  unit.kind = FadingMgf::Kind::ssk_gamma_diff;
  unit.mgf = [](std::complex<double>) { return std::complex<double>{1, 0}; };
  CHECK(apep(TxMode::ssk, make_cfg(2, 1, 10, 1), unit) ==
        doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("MGF kind must match the mode") {
  CHECK_THROWS_AS(apep(TxMode::tosd, make_cfg(2, 1, 10, 1),
                       rayleigh_iid_ssk_mgf(1.0, 1)),
                  std::invalid_argument);
}

TEST_CASE("hamming sum identity and mapping invariance") {
  for (int nt : {2, 4, 8, 16}) {
    const auto nat = BitMapping::natural(nt);
    const auto gr = BitMapping::gray(nt);
    const long long expect = (long long)nt * nt / 2 * nat.bits();
    CHECK(nat.hamming_sum() == expect);
    CHECK(gr.hamming_sum() == expect);
  }
}

TEST_CASE("i.i.d. fast path equals the general union bound") {
  for (int nt : {2, 4}) {
    const LinkConfig cfg = make_cfg(nt, 2, 12, 3);
    const FadingMgf mgf = rayleigh_iid_ssk_mgf(1.0, cfg.n_rx);
    const double fast = abep_iid_fast(TxMode::ssk, cfg, mgf);
    auto provider = [&](int, int) { return mgf; };
    const double gen_nat = abep_union_bound(TxMode::ssk, cfg, provider,
                                            BitMapping::natural(nt));
    const double gen_gray = abep_union_bound(TxMode::ssk, cfg, provider,
                                             BitMapping::gray(nt));
    CHECK(gen_nat == doctest::Approx(fast).epsilon(1e-12));
    CHECK(gen_gray == doctest::Approx(fast).epsilon(1e-12));
    // and at Nt = 4 the bound is exactly twice the pairwise probability
    if (nt == 4) {
      const double apep0 = apep(TxMode::ssk, cfg, mgf);
      CHECK(fast == doctest::Approx(2.0 * apep0).epsilon(1e-12));
    }
  }
}

TEST_CASE("rayleigh specialization agrees with the union bound route") {
  const LinkConfig cfg = make_cfg(4, 2, 15, 3);
  const double a = abep_iid_rayleigh(TxMode::ssk, cfg);
  const double b = abep_iid_fast(TxMode::ssk, cfg,
                                 rayleigh_iid_ssk_mgf(cfg.omega0, cfg.n_rx));
  CHECK(a == doctest::Approx(b).epsilon(1e-6));
  const double c = abep_iid_rayleigh(TxMode::tosd, cfg);
  const double d = abep_iid_fast(TxMode::tosd, cfg,
                                 rayleigh_iid_tosd_mgf(cfg.omega0, cfg.n_rx));
  CHECK(c == doctest::Approx(d).epsilon(1e-6));
}

TEST_CASE("perfect-CSI curves match the closed-form diversity oracle") {
  QuadratureSpec tight;
  tight.rel_tol = 1e-11;
  tight.abs_tol = 0.0;
  for (int nr : {1, 2, 4}) {
    for (double db : {5.0, 15.0, 30.0, 50.0}) {
      const LinkConfig cfg = make_cfg(2, nr, db, 0);
      const double gbar = cfg.snr_linear();
      CHECK(abep_iid_rayleigh(TxMode::ssk, cfg, tight) ==
            doctest::Approx(pcsi_abep_ssk_oracle(gbar, nr, 2))
                .epsilon(1e-6));
      CHECK(abep_iid_rayleigh(TxMode::tosd, cfg, tight) ==
            doctest::Approx(pcsi_abep_tosd_oracle(gbar, nr, 2))
                .epsilon(1e-6));
    }
  }
}

TEST_CASE("pilot ordering: more pilots never hurt") {
  for (double db : {5.0, 15.0, 25.0}) {
    double prev = 1.0;
    for (int np : {1, 3, 10, 0}) {
      const LinkConfig cfg = make_cfg(2, 2, db, np);
      const double v = abep_iid_rayleigh(TxMode::ssk, cfg);
      CHECK(v <= prev * (1 + 1e-9));
      prev = v;
    }
  }
}

TEST_CASE("deep pilot product converges to perfect CSI") {
  LinkConfig fine = make_cfg(2, 2, 18, 1000000);
  LinkConfig pcsi = make_cfg(2, 2, 18, 0);
  for (TxMode m : {TxMode::ssk, TxMode::tosd}) {
    const double a = abep_iid_rayleigh(m, fine);
    const double b = abep_iid_rayleigh(m, pcsi);
    CHECK(a == doctest::Approx(b).epsilon(1e-3));
  }
}

TEST_CASE("threshold tables reproduce the published analytic cells") {
  struct Cell {
    TxMode mode;
    int n_tx, n_rx, n_pilots;  // 0 => perfect CSI
    double target, expect_db;
  };
  const Cell cells[] = {
      {TxMode::ssk, 2, 1, 0, 1e-2, 19.9},
      {TxMode::ssk, 2, 2, 0, 1e-4, 22.3},
      {TxMode::ssk, 2, 2, 1, 1e-4, 25.3},
      {TxMode::ssk, 2, 4, 0, 1e-4, 13.2},
      {TxMode::ssk, 16, 4, 0, 1e-4, 15.7},
      {TxMode::tosd, 2, 2, 0, 1e-4, 16.2},
      {TxMode::tosd, 2, 2, 1, 1e-4, 18.2},
      {TxMode::tosd, 16, 2, 0, 1e-4, 18.7},
  };
  for (const Cell& c : cells) {
    LinkConfig base = make_cfg(c.n_tx, c.n_rx, 0, c.n_pilots);
    const double th = snr_threshold(
        [&](double db) {
          LinkConfig cfg = base;
          cfg.snr_db = db;
          return abep_iid_rayleigh(c.mode, cfg);
        },
        c.target, -5, 45);
    CHECK(th == doctest::Approx(c.expect_db).epsilon(0.3 / c.expect_db));
  }
}

TEST_CASE("threshold bisection on a synthetic curve") {
  const double th = snr_threshold(
      [](double db) { return std::pow(10.0, -db / 10.0); }, 1e-2, 0, 40);
  CHECK(th == doctest::Approx(20.0).epsilon(0.0026));
}

TEST_CASE("unreachable targets are reported with the achieved range") {
  try {
    snr_threshold([](double) { return 0.3; }, 1e-4, 0, 20);
    FAIL("expected ThresholdRangeError");
  } catch (const ThresholdRangeError& ex) {
    CHECK(ex.achieved_min() == doctest::Approx(0.3));
    CHECK(ex.achieved_max() == doctest::Approx(0.3));
  }
}

TEST_CASE("diversity slope: synthetic power law is exact") {
  AbepCurve curve;
  curve.scheme = Scheme::ssk;
  for (double db = 10; db <= 40; db += 2)
    curve.points.push_back({db, 3.0 * std::pow(10.0, -2.0 * db / 10.0), false});
  CHECK(diversity_slope(curve, 1e-30, 1.0) == doctest::Approx(2.0).epsilon(1e-9));
  CHECK_THROWS_AS(diversity_slope(curve, 1e-9, 2e-9), std::invalid_argument);
}

TEST_CASE("fitted slopes recover the receive diversity order") {
  std::vector<double> grid;
  for (double db = 0; db <= 62; db += 1.0) grid.push_back(db);
  QuadratureSpec tight;
  tight.rel_tol = 1e-11;
  tight.abs_tol = 0.0;
  {
    const AbepCurve c =
        abep_curve(Scheme::ssk, make_cfg(2, 2, 0, 1), grid, tight);
    CHECK(diversity_slope(c, 1e-6, 1e-4) == doctest::Approx(2.0).epsilon(0.1));
  }
  {
    const AbepCurve c =
        abep_curve(Scheme::tosd_ssk, make_cfg(2, 1, 0, 1), grid, tight);
    CHECK(diversity_slope(c, 1e-6, 1e-4) == doctest::Approx(2.0).epsilon(0.1));
  }
}
