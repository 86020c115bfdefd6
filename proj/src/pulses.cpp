#include "smlink/pulses.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace smlink {

namespace {

// Orthonormal Hermite functions, physicists' polynomials H_n:
// psi_n(u) = H_n(u) exp(-u^2/2) / sqrt(2^n n! sqrt(pi)), n = 0..4.
double hermite_fn(int n, double u) {
  static const double norm[5] = {
      1.0 / std::sqrt(std::sqrt(M_PI)),
      1.0 / std::sqrt(2.0 * std::sqrt(M_PI)),
      1.0 / std::sqrt(8.0 * std::sqrt(M_PI)),
      1.0 / std::sqrt(48.0 * std::sqrt(M_PI)),
      1.0 / std::sqrt(384.0 * std::sqrt(M_PI)),
  };
  double h;
  switch (n) {
    case 0: h = 1.0; break;
    case 1: h = 2.0 * u; break;
    case 2: h = 4.0 * u * u - 2.0; break;
    case 3: h = (8.0 * u * u - 12.0) * u; break;
    case 4: h = (16.0 * u * u - 48.0) * u * u + 12.0; break;
    default: throw std::invalid_argument("hermite order outside 0..4");
  }
  return norm[n] * h * std::exp(-0.5 * u * u);
}

double sinc(double x) {
  if (x == 0.0) return 1.0;
  return std::sin(M_PI * x) / (M_PI * x);
}

}  // namespace

Pulse hermite_basis(int order, double t0) {
  if (order < 1 || order > 5)
    throw std::invalid_argument("basis order must be in 1..5");
  if (!(t0 > 0.0)) throw std::invalid_argument("t0 must be > 0");
  const int n = order - 1;
  Pulse p;
  p.label = "hermite" + std::to_string(order);
  p.duration = 10.0 * t0;
  // p(xi) = psi_n(xi/t0)/sqrt(t0); |P(w)|^2 = t0 * psi_n(t0 w)^2.
  // (The Fourier transform of psi_n is (-j)^n psi_n.)
  p.time_fn = [n, t0](double xi) { return hermite_fn(n, xi / t0) / std::sqrt(t0); };
  p.spectrum_mag2 = [n, t0](double w) {
    const double v = hermite_fn(n, t0 * w);
    return t0 * v * v;
  };
  return p;
}

FilterBank build_tosd_bank_nt4(double t0) {
  if (!(t0 > 0.0)) throw std::invalid_argument("t0 must be > 0");
  const double a = 4.0 / std::sqrt(165.0);
  const double b = std::sqrt(4.0 - 2.0 * std::sqrt(2.0)) / 4.0;
  const double c = std::sqrt(11.0 / 30.0);
  const double d = std::sqrt(4.0 + 2.0 * std::sqrt(2.0)) / 4.0;
  const double e = 2.0 / std::sqrt(110.0);
  const double f = std::sqrt(3.0 / 22.0);
  const double g = 2.0 / std::sqrt(11.0);

  FilterBank bank;
  bank.t0 = t0;
  bank.coeffs = {{{-a, b, c, -d, -e},
                  {-a, -b, c, d, -e},
                  {f, -d, 0.0, -b, -g},
                  {f, d, 0.0, b, -g}}};

  for (int i = 0; i < 4; ++i) {
    const auto& row = bank.coeffs[i];
    Pulse p;
    p.label = "wbank" + std::to_string(i + 1);
    p.duration = 10.0 * t0;
    p.time_fn = [row, t0](double xi) {
      const double u = xi / t0;
      double v = 0.0;
      for (int k = 0; k < 5; ++k) v += row[k] * hermite_fn(k, u);
      return v / std::sqrt(t0);
    };
    // FT(psi_n) = (-j)^n psi_n, so even orders land on the real part with
    // alternating sign and odd orders on the imaginary part.
    p.spectrum_mag2 = [row, t0](double w) {
      const double u = t0 * w;
      const double re = row[0] * hermite_fn(0, u) - row[2] * hermite_fn(2, u) +
                        row[4] * hermite_fn(4, u);
      const double im = -row[1] * hermite_fn(1, u) + row[3] * hermite_fn(3, u);
      return t0 * (re * re + im * im);
    };
    bank.pulses[i] = std::move(p);
  }
  return bank;
}

Pulse reference_pulse(ReferencePulseKind kind, double T0) {
  if (!(T0 > 0.0)) throw std::invalid_argument("T0 must be > 0");
  Pulse p;
  p.duration = T0;
  switch (kind) {
    case ReferencePulseKind::rectangular: {
      p.label = "rectangular";
      const double amp = 1.0 / std::sqrt(T0);
      p.time_fn = [amp, T0](double xi) {
        return std::abs(xi) <= T0 / 2 ? amp : 0.0;
      };
      // |P(w)|^2 = (T0/2pi) sinc^2(f T0), f = w/2pi.
      p.spectrum_mag2 = [T0](double w) {
        const double x = sinc(w * T0 / (2.0 * M_PI));
        return T0 / (2.0 * M_PI) * x * x;
      };
      return p;
    }
    case ReferencePulseKind::half_sine: {
      p.label = "half_sine";
      const double amp = std::sqrt(2.0 / T0);
      p.time_fn = [amp, T0](double xi) {
        if (std::abs(xi) > T0 / 2) return 0.0;
        return amp * std::sin(M_PI * (xi + 0.5 * T0) / T0);
      };
      // |P(w)|^2 = (4 T0/pi^3) [cos(pi f T0)/(1 - 4 f^2 T0^2)]^2.
      p.spectrum_mag2 = [T0](double w) {
        const double x = w * T0 / (2.0 * M_PI);
        const double den = 1.0 - 4.0 * x * x;
        double q;
        if (std::abs(den) < 1e-7)
          q = M_PI / 4.0;  // removable singularity at f T0 = 1/2
        else
          q = std::cos(M_PI * x) / den;
        return 4.0 * T0 / (M_PI * M_PI * M_PI) * q * q;
      };
      return p;
    }
    case ReferencePulseKind::raised_cosine: {
      p.label = "raised_cosine";
      const double amp = std::sqrt(2.0 / (3.0 * T0));
      p.time_fn = [amp, T0](double xi) {
        if (std::abs(xi) > T0 / 2) return 0.0;
        return amp * (1.0 - std::cos(2.0 * M_PI * (xi + 0.5 * T0) / T0));
      };
      // |P(w)|^2 = (T0/3pi) [sinc(fT0) + sinc(fT0-1)/2 + sinc(fT0+1)/2]^2.
      p.spectrum_mag2 = [T0](double w) {
        const double x = w * T0 / (2.0 * M_PI);
        const double q =
            sinc(x) + 0.5 * sinc(x - 1.0) + 0.5 * sinc(x + 1.0);
        return T0 / (3.0 * M_PI) * q * q;
      };
      return p;
    }
  }
  throw std::invalid_argument("unknown reference pulse kind");
}

BandwidthResult fpcb(const Pulse& pulse, double fraction,
                     const BandwidthOptions& opt) {
  if (!(fraction > 0.0 && fraction < 1.0))
    throw std::invalid_argument("fraction must be in (0, 1)");
  QuadratureSpec qs;
  qs.rel_tol = 1e-10;
  qs.abs_tol = 0.0;
  qs.max_subdivisions = 4000;
  // Piecewise accumulation keeps the adaptive rule honest on the sinc-type
  // spectra whose lobes repeat across the whole band.
  const int n_seg = 64;
  std::array<double, 65> edges{};
  std::array<double, 64> seg{};
  double total = 0.0;
  for (int i = 0; i <= n_seg; ++i) edges[i] = opt.omega_max * i / n_seg;
  for (int i = 0; i < n_seg; ++i) {
    seg[i] = integrate(pulse.spectrum_mag2, edges[i], edges[i + 1], qs);
    total += seg[i];
  }
  const double want = fraction * total;
  double acc = 0.0;
  int cell = -1;
  for (int i = 0; i < n_seg; ++i) {
    if (acc + seg[i] > want) {
      cell = i;
      break;
    }
    acc += seg[i];
  }
  if (cell < 0) return {opt.omega_max / (2.0 * M_PI), true};
  double lo = edges[cell], hi = edges[cell + 1];
  for (int it = 0; it < 50 && (hi - lo) > 1e-6 * opt.omega_max; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double part = integrate(pulse.spectrum_mag2, edges[cell], mid, qs);
    (acc + part > want ? hi : lo) = mid;
  }
  const double b_hz = 0.5 * (lo + hi) / (2.0 * M_PI);
  return {b_hz, b_hz > opt.report_cap_hz};
}

BandwidthResult bpsdb(const Pulse& pulse, double threshold,
                      const BandwidthOptions& opt) {
  if (!(threshold > 0.0))
    throw std::invalid_argument("threshold must be > 0");
  // Grid scan for the global peak and the outermost crossing, then bisection
  // refinement. The grid step (1e-5 of the band) is far below every lobe
  // width in play here.
  const int n = 200001;
  const double step = opt.omega_max / (n - 1);
  double peak = 0.0;
  std::vector<double> vals(n);
  for (int i = 0; i < n; ++i) {
    vals[i] = pulse.spectrum_mag2(i * step);
    peak = std::max(peak, vals[i]);
  }
  // refine the peak around the best grid point
  int ipk = 0;
  for (int i = 0; i < n; ++i)
    if (vals[i] > vals[ipk]) ipk = i;
  {
    double lo = std::max(0.0, (ipk - 1) * step), hi = std::min(opt.omega_max, (ipk + 1) * step);
    for (int it = 0; it < 60; ++it) {
      const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
      if (pulse.spectrum_mag2(m1) < pulse.spectrum_mag2(m2))
        lo = m1;
      else
        hi = m2;
    }
    peak = std::max(peak, pulse.spectrum_mag2(0.5 * (lo + hi)));
  }
  const double level = peak * std::pow(10.0, -threshold);
  int last = -1;
  for (int i = n - 1; i >= 0; --i) {
    if (vals[i] >= level) {
      last = i;
      break;
    }
  }
  if (last < 0) return {0.0, false};
  if (last >= n - 1) return {opt.omega_max / (2.0 * M_PI), true};
  double lo = last * step, hi = (last + 1) * step;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (pulse.spectrum_mag2(mid) >= level ? lo : hi) = mid;
  }
  const double b_hz = 0.5 * (lo + hi) / (2.0 * M_PI);
  return {b_hz, b_hz > opt.report_cap_hz};
}

}  // namespace smlink
