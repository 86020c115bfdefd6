#include <doctest.h>

#include <cmath>
#include <complex>

#include "smlink/quadrature.hpp"

using namespace smlink;

TEST_CASE("plain integration") {
  QuadratureSpec spec;
  const double v = integrate([](double x) { return std::sin(x); }, 0.0, M_PI,
                             spec);
  CHECK(v == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("degenerate CF gives probability 1/2") {
  // Psi == 1 (point mass at zero): the imaginary integrand vanishes.
  QuadratureSpec spec;
  const double p =
      gil_pelaez_halfline([](double) { return 0.0; }, spec);
  CHECK(p == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("gaussian CF reproduces the normal tail") {
  // X ~ N(1, 1): Pr{X < 0} = Q(1); oracle via erfc.
  QuadratureSpec spec;
  auto psi = [](double nu) {
    return std::exp(std::complex<double>(-0.5 * nu * nu, nu));
  };
  const double p = gil_pelaez_cf(psi, spec);
  const double q1 = 0.5 * std::erfc(1.0 / std::sqrt(2.0));
  CHECK(p == doctest::Approx(q1).epsilon(1e-8));

  // and a shifted/scaled variant: N(-2, 4): Pr{X<0} = 1 - Q(1)
  auto psi2 = [](double nu) {
    return std::exp(std::complex<double>(-0.5 * 4.0 * nu * nu, -2.0 * nu));
  };
  CHECK(gil_pelaez_cf(psi2, spec) == doctest::Approx(1.0 - q1).epsilon(1e-8));
}

TEST_CASE("the nu rescaling does not change the result") {
  QuadratureSpec spec;
  auto psi = [](double nu) {
    return std::exp(std::complex<double>(-0.5 * nu * nu, nu));
  };
  auto f = [&](double nu) { return psi(nu).imag() / nu; };
  const double a = gil_pelaez_halfline(f, spec, 1.0);
  const double b = gil_pelaez_halfline(f, spec, 17.0);
  const double c = gil_pelaez_halfline(f, spec, 0.03);
  CHECK(a == doctest::Approx(b).epsilon(1e-8));
  CHECK(a == doctest::Approx(c).epsilon(1e-8));
}

TEST_CASE("cf_half_width finds the decay scale") {
  auto psi = [](double nu) {
    return std::complex<double>(std::exp(-nu * nu / (2 * 100.0)), 0.0);
  };
  // |psi| = exp(-nu^2/200) = 1/2 at nu = sqrt(200 ln 2) ~ 11.77
  CHECK(cf_half_width(psi) == doctest::Approx(11.774).epsilon(1e-3));
}

TEST_CASE("out-of-range inversion raises a quadrature failure") {
  QuadratureSpec spec;
  CHECK_THROWS_AS(
      gil_pelaez_halfline([](double nu) { return std::exp(-nu) * 100.0; },
                          spec),
      QuadratureError);
}
