#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>

namespace smlink {

struct QuadratureSpec {
  double rel_tol = 1e-8;
  double abs_tol = 1e-12;
  int max_subdivisions = 400;
};

class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_ = 0.0;
};

// Adaptive Gauss-Kronrod integral of f over [a, b].
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSpec& spec);

// Tail probability Pr{D < 0} = 1/2 - (1/pi) * int_0^inf Im{Psi(nu)}/nu dnu,
// evaluated through nu = nu_scale * tan(xi) on (0, pi/2). The integral is
// invariant under positive rescaling of nu, so nu_scale only conditions the
// quadrature; pass the decay scale of the CF when it is far from 1.
// im_over_nu is Im{Psi(nu)}/nu. Result is clamped to [0, 1]; values outside
// [-1e-9, 1+1e-9] before clamping raise QuadratureError.
double gil_pelaez_halfline(const std::function<double(double)>& im_over_nu,
                           const QuadratureSpec& spec, double nu_scale = 1.0);

// Scale where |Psi| first drops below 1/2 (log-bisection); 1.0 for CFs that
// never decay.
double cf_half_width(const std::function<std::complex<double>(double)>& psi);

// Pr{D < 0} for the CF itself; picks the nu scale internally.
double gil_pelaez_cf(const std::function<std::complex<double>(double)>& psi,
                     const QuadratureSpec& spec);

}  // namespace smlink
