#include "smlink/fading_mgf.hpp"

namespace smlink {

using cd = std::complex<double>;

namespace {
cd powm(cd base, int n) { return std::exp(-double(n) * std::log(base)); }
}  // namespace

FadingMgf rayleigh_iid_ssk_mgf(double omega0, int n_rx) {
  FadingMgf m;
  m.kind = FadingMgf::Kind::ssk_gamma_diff;
  m.mgf = [omega0, n_rx](cd s) { return powm(1.0 - 2.0 * omega0 * s, n_rx); };
  return m;
}

FadingMgf rayleigh_iid_tosd_mgf(double omega0, int n_rx) {
  FadingMgf m;
  m.kind = FadingMgf::Kind::tosd_gamma_pair;
  m.mgf_pair = [omega0, n_rx](cd sq, cd st) {
    return powm(1.0 - omega0 * sq, n_rx) * powm(1.0 - omega0 * st, n_rx);
  };
  return m;
}

}  // namespace smlink
