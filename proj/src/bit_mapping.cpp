#include "smlink/bit_mapping.hpp"

#include <bit>
#include <numeric>
#include <stdexcept>

namespace smlink {

BitMapping::BitMapping(std::vector<unsigned> labels, int bits)
    : labels_(std::move(labels)), bits_(bits) {
  const size_t n = labels_.size();
  hamming_.resize(n * n);
  for (size_t t = 0; t < n; ++t)
    for (size_t q = 0; q < n; ++q)
      hamming_[t * n + q] = std::popcount(labels_[t] ^ labels_[q]);
}

static int log2_of(int n) {
  if (n < 2 || (n & (n - 1)) != 0)
    throw std::invalid_argument("mapping size must be a power of two >= 2");
  int b = 0;
  for (int v = n; v > 1; v >>= 1) ++b;
  return b;
}

BitMapping BitMapping::natural(int n_tx) {
  const int b = log2_of(n_tx);
  std::vector<unsigned> labels(n_tx);
  std::iota(labels.begin(), labels.end(), 0u);
  return BitMapping(std::move(labels), b);
}

BitMapping BitMapping::gray(int n_tx) {
  const int b = log2_of(n_tx);
  std::vector<unsigned> labels(n_tx);
  for (int i = 0; i < n_tx; ++i) labels[i] = unsigned(i) ^ (unsigned(i) >> 1);
  return BitMapping(std::move(labels), b);
}

long long BitMapping::hamming_sum() const {
  long long s = 0;
  for (int v : hamming_) s += v;
  return s;
}

}  // namespace smlink
