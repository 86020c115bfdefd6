#include "smlink/quadrature.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>
#include <memory>

namespace smlink {

namespace {

struct Trampoline {
  const std::function<double(double)>* f;
};

double call(double x, void* params) {
  return (*static_cast<Trampoline*>(params)->f)(x);
}

struct WorkspaceDeleter {
  void operator()(gsl_integration_workspace* w) const {
    gsl_integration_workspace_free(w);
  }
};

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSpec& spec) {
  gsl_set_error_handler_off();
  const size_t limit = static_cast<size_t>(std::max(spec.max_subdivisions, 8));
  std::unique_ptr<gsl_integration_workspace, WorkspaceDeleter> ws(
      gsl_integration_workspace_alloc(limit));
  Trampoline tr{&f};
  gsl_function gf{&call, &tr};
  double result = 0.0, abserr = 0.0;
  int status =
      gsl_integration_qag(&gf, a, b, spec.abs_tol, spec.rel_tol, limit,
                          GSL_INTEG_GAUSS41, ws.get(), &result, &abserr);
  if (status == GSL_EROUND || status == GSL_EMAXITER) {
    // Retry once with a cruder tolerance before giving up; oscillatory
    // integrands near machine precision often trip roundoff detection while
    // the estimate is already far better than we need.
    status =
        gsl_integration_qag(&gf, a, b, std::max(spec.abs_tol, 1e-14),
                            std::max(spec.rel_tol, 1e-10), limit,
                            GSL_INTEG_GAUSS41, ws.get(), &result, &abserr);
    if (status == GSL_EROUND) status = GSL_SUCCESS;
  }
  if (status != GSL_SUCCESS)
    throw QuadratureError(std::string("quadrature failed: ") +
                              gsl_strerror(status),
                          abserr);
  return result;
}

double gil_pelaez_halfline(const std::function<double(double)>& im_over_nu,
                           const QuadratureSpec& spec, double nu_scale) {
  const double s = (std::isfinite(nu_scale) && nu_scale > 0.0) ? nu_scale : 1.0;
  auto integrand = [&](double xi) {
    xi = std::clamp(xi, 1e-12, M_PI / 2 - 1e-12);
    const double u = std::tan(xi);
    return im_over_nu(s * u) * s * (1.0 + u * u);
  };
  const double integral = integrate(integrand, 0.0, M_PI / 2, spec);
  const double raw = 0.5 - integral / M_PI;
  if (raw < -1e-9 || raw > 1.0 + 1e-9)
    throw QuadratureError("inversion result outside [0,1]", raw);
  return std::clamp(raw, 0.0, 1.0);
}

double cf_half_width(const std::function<std::complex<double>(double)>& psi) {
  double hi = 1e-8;
  while (std::abs(psi(hi)) > 0.5) {
    hi *= 4.0;
    if (hi > 1e12) return 1.0;
  }
  double lo = hi / 4.0;
  for (int i = 0; i < 60; ++i) {
    const double mid = std::sqrt(lo * hi);
    (std::abs(psi(mid)) > 0.5 ? lo : hi) = mid;
  }
  return std::sqrt(lo * hi);
}

double gil_pelaez_cf(const std::function<std::complex<double>(double)>& psi,
                     const QuadratureSpec& spec) {
  const double scale = cf_half_width(psi);
  auto im_over_nu = [&](double nu) { return psi(nu).imag() / nu; };
  return gil_pelaez_halfline(im_over_nu, spec, scale);
}

}  // namespace smlink
