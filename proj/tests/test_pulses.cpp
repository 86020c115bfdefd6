#include <doctest.h>

#include <cmath>
#include <complex>

#include "smlink/pulses.hpp"

using namespace smlink;

namespace {

// test-side Simpson quadrature
template <class F>
double simpson(F f, double a, double b, int n = 20001) {
  if (n % 2 == 0) ++n;
  const double h = (b - a) / (n - 1);
  double s = f(a) + f(b);
  for (int i = 1; i < n - 1; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

// independent numeric transform (1/sqrt(2pi)) int p(x) e^{-jwx} dx.
// The Gaussian-family closed forms describe the untruncated waveforms, so
// integrate past the nominal support for those.
std::complex<double> numeric_ft(const Pulse& p, double w) {
  const bool gaussian_family = p.label.rfind("hermite", 0) == 0 ||
                               p.label.rfind("wbank", 0) == 0;
  const double half = (gaussian_family ? 1.6 : 1.0) * p.duration / 2.0;
  const auto re = simpson(
      [&](double x) { return p.time_fn(x) * std::cos(w * x); }, -half, half);
  const auto im = simpson(
      [&](double x) { return -p.time_fn(x) * std::sin(w * x); }, -half, half);
  return std::complex<double>(re, im) / std::sqrt(2.0 * M_PI);
}

}  // namespace

TEST_CASE("hermite basis is orthonormal") {
  const double t0 = 1e-4;
  Pulse p[5];
  for (int k = 1; k <= 5; ++k) p[k - 1] = hermite_basis(k, t0);
  for (int i = 0; i < 5; ++i)
    for (int j = i; j < 5; ++j) {
      const double dot = simpson(
          [&](double x) { return p[i].time_fn(x) * p[j].time_fn(x); },
          -10 * t0, 10 * t0, 40001);
      CHECK(std::abs(dot - (i == j ? 1.0 : 0.0)) < 1e-10);
    }
  CHECK_THROWS_AS(hermite_basis(0, t0), std::invalid_argument);
  CHECK_THROWS_AS(hermite_basis(6, t0), std::invalid_argument);
}

TEST_CASE("hermite parity") {
  const double t0 = 1e-4;
  const Pulse p1 = hermite_basis(1, t0), p2 = hermite_basis(2, t0);
  CHECK(p2.time_fn(0.0) == 0.0);
  for (double x : {0.3e-4, 1.1e-4, 2.7e-4}) {
    CHECK(p1.time_fn(x) == doctest::Approx(p1.time_fn(-x)).epsilon(1e-12));
    CHECK(p2.time_fn(x) == doctest::Approx(-p2.time_fn(-x)).epsilon(1e-12));
  }
}

TEST_CASE("closed-form spectra match an independent numeric transform") {
  const double t0 = 1e-4, T0 = 1e-3;
  std::vector<Pulse> pulses = {
      hermite_basis(3, t0),
      reference_pulse(ReferencePulseKind::rectangular, T0),
      reference_pulse(ReferencePulseKind::half_sine, T0),
      reference_pulse(ReferencePulseKind::raised_cosine, T0),
      build_tosd_bank_nt4(t0).pulses[0],
  };
  for (const auto& p : pulses) {
    for (double f_hz : {137.0, 1100.0, 2600.0}) {
      const double w = 2 * M_PI * f_hz;
      const double num = std::norm(numeric_ft(p, w));
      const double closed = p.spectrum_mag2(w);
      if (closed > 1e-12 * p.spectrum_mag2(0.0) + 1e-30) {
        CHECK(num ==
              doctest::Approx(closed).epsilon(1e-4).scale(p.spectrum_mag2(0)));
      }
    }
  }
}

TEST_CASE("unit energy in time and frequency (Parseval)") {
  const double t0 = 1e-4, T0 = 1e-3;
  std::vector<Pulse> pulses = {
      hermite_basis(1, t0),
      hermite_basis(5, t0),
      reference_pulse(ReferencePulseKind::half_sine, T0),
      reference_pulse(ReferencePulseKind::raised_cosine, T0),
      build_tosd_bank_nt4(t0).pulses[2],
  };
  for (const auto& p : pulses) {
    const double half = p.duration / 2.0;
    const double te = simpson(
        [&](double x) { return p.time_fn(x) * p.time_fn(x); }, -half, half,
        40001);
    CHECK(te == doctest::Approx(1.0).epsilon(1e-6));
    // two-sided spectral energy; band edge far beyond every pulse here
    QuadratureSpec qs;
    qs.rel_tol = 1e-9;
    qs.max_subdivisions = 2000;
    const double fe =
        2.0 * integrate(p.spectrum_mag2, 0.0, 5e6, qs);
    CHECK(fe == doctest::Approx(1.0).epsilon(1e-4));
  }
}

TEST_CASE("bank coefficient rows are orthonormal") {
  const FilterBank bank = build_tosd_bank_nt4(1e-4);
  // the printed-surd identity for the first two rows
  const double s2 = std::sqrt(2.0);
  const double id = 16.0 / 165.0 - (4.0 - 2.0 * s2) / 16.0 + 11.0 / 30.0 -
                    (4.0 + 2.0 * s2) / 16.0 + 4.0 / 110.0;
  CHECK(std::abs(id) < 1e-12);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      double dot = 0;
      for (int k = 0; k < 5; ++k) dot += bank.coeffs[i][k] * bank.coeffs[j][k];
      CHECK(std::abs(dot - (i == j ? 1.0 : 0.0)) < 1e-12);
    }
}

TEST_CASE("bank waveforms are orthonormal by quadrature") {
  const double t0 = 1e-4;
  const FilterBank bank = build_tosd_bank_nt4(t0);
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) {
      const double dot = simpson(
          [&](double x) {
            return bank.pulses[i].time_fn(x) * bank.pulses[j].time_fn(x);
          },
          -5e-4, 5e-4, 20001);
      CHECK(std::abs(dot - (i == j ? 1.0 : 0.0)) < 1e-3);
    }
}

TEST_CASE("reference pulse facts") {
  const double T0 = 1e-3;
  const Pulse rect = reference_pulse(ReferencePulseKind::rectangular, T0);
  // first spectral null at 1/T0 = 1 kHz
  CHECK(rect.spectrum_mag2(2 * M_PI * 1000.0) <
        1e-20 * rect.spectrum_mag2(0.0));
  CHECK(rect.spectrum_mag2(2 * M_PI * 500.0) >
        0.1 * rect.spectrum_mag2(0.0));

  const Pulse hs = reference_pulse(ReferencePulseKind::half_sine, T0);
  double peak = 0;
  for (double f = 0; f <= 5000; f += 5)
    peak = std::max(peak, hs.spectrum_mag2(2 * M_PI * f));
  CHECK(hs.spectrum_mag2(0.0) == doctest::Approx(peak));
}

TEST_CASE("published bandwidth cells (clean subset)") {
  const double t0 = 1e-4, T0 = 1e-3;
  const Pulse hs = reference_pulse(ReferencePulseKind::half_sine, T0);
  const Pulse rect = reference_pulse(ReferencePulseKind::rectangular, T0);
  const Pulse rc = reference_pulse(ReferencePulseKind::raised_cosine, T0);
  const Pulse w = build_tosd_bank_nt4(t0).pulses[0];

  CHECK(fpcb(hs, 0.99).hz == doctest::Approx(1180.0).epsilon(0.05 / 1.18));
  CHECK(fpcb(w, 0.99).hz == doctest::Approx(4970.0).epsilon(0.05 / 4.97));
  CHECK(fpcb(rect, 0.99995).capped);
  CHECK(bpsdb(rc, 3.0).hz == doctest::Approx(1850.0).epsilon(0.05 / 1.85));
  CHECK(bpsdb(rect, 3.0).hz == doctest::Approx(9590.0).epsilon(0.05 / 9.59));
  CHECK(bpsdb(hs, 10.0).capped);
}

TEST_CASE("bandwidths are monotone in their arguments") {
  const Pulse hs = reference_pulse(ReferencePulseKind::half_sine, 1e-3);
  double prev = 0;
  for (double x : {0.99, 0.99995, 0.999999, 0.9999999}) {
    const double b = fpcb(hs, x).hz;
    CHECK(b >= prev);
    prev = b;
  }
  const Pulse w = build_tosd_bank_nt4(1e-4).pulses[0];
  prev = 0;
  for (double th : {3.0, 5.0, 6.0, 7.0, 10.0}) {
    const double b = bpsdb(w, th).hz;
    CHECK(b >= prev);
    prev = b;
  }
}

TEST_CASE("bandwidth scales inversely with the shape parameter") {
  const double t0 = 1e-4;
  const Pulse w1 = build_tosd_bank_nt4(t0).pulses[0];
  const Pulse w2 = build_tosd_bank_nt4(2.0 * t0).pulses[0];
  BandwidthOptions opt;  // same analysis band for both: tails are Gaussian
  const double a = fpcb(w1, 0.99, opt).hz;
  const double b = fpcb(w2, 0.99, opt).hz;
  CHECK(b == doctest::Approx(a / 2.0).epsilon(1e-3));
  const double c = bpsdb(w1, 5.0, opt).hz;
  const double d = bpsdb(w2, 5.0, opt).hz;
  CHECK(d == doctest::Approx(c / 2.0).epsilon(1e-3));
}

TEST_CASE("argument validation") {
  const Pulse hs = reference_pulse(ReferencePulseKind::half_sine, 1e-3);
  CHECK_THROWS_AS(fpcb(hs, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(bpsdb(hs, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(reference_pulse(ReferencePulseKind::half_sine, -1.0),
                  std::invalid_argument);
}
