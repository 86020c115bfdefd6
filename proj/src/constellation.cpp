#include "smlink/constellation.hpp"

#include <cmath>
#include <stdexcept>

namespace smlink {

namespace {

// amplitude levels indexed by bit label (natural or Gray), n = 2^bits levels
std::vector<double> pam_levels(int bits, MappingKind mapping) {
  const int n = 1 << bits;
  std::vector<double> out(n);
  for (int pos = 0; pos < n; ++pos) {
    const int label =
        mapping == MappingKind::gray ? (pos ^ (pos >> 1)) : pos;
    out[label] = double(2 * pos - (n - 1));
  }
  return out;
}

}  // namespace

Constellation qam_constellation(int order, MappingKind mapping) {
  if (order < 2 || (order & (order - 1)) != 0)
    throw std::invalid_argument("constellation size must be a power of two");
  Constellation c;
  for (int v = order; v > 1; v >>= 1) ++c.bits;
  if (order == 2) {
    c.points = {{1.0, 0.0}, {-1.0, 0.0}};
    return c;
  }
  const int bi = (c.bits + 1) / 2;  // in-phase rail bits
  const int bq = c.bits - bi;
  const auto I = pam_levels(bi, mapping);
  const auto Q = bq > 0 ? pam_levels(bq, mapping) : std::vector<double>{0.0};
  c.points.resize(order);
  double energy = 0.0;
  for (int s = 0; s < order; ++s) {
    const int i_label = s >> bq;
    const int q_label = s & ((1 << bq) - 1);
    c.points[s] = {I[i_label], bq > 0 ? Q[q_label] : 0.0};
    energy += std::norm(c.points[s]);
  }
  const double scale = 1.0 / std::sqrt(energy / order);
  for (auto& p : c.points) p *= scale;
  return c;
}

}  // namespace smlink
