#pragma once

#include <vector>

namespace smlink {

enum class MappingKind { natural, gray };

// Antenna-index <-> bit-label mapping plus the pairwise Hamming distance
// matrix it induces. label(i) is the bit string (as an integer) carried by
// antenna i.
class BitMapping {
 public:
  static BitMapping natural(int n_tx);
  static BitMapping gray(int n_tx);

  int size() const { return static_cast<int>(labels_.size()); }
  int bits() const { return bits_; }
  unsigned label(int index) const { return labels_[index]; }
  int hamming(int t, int q) const {
    return hamming_[size_t(t) * labels_.size() + q];
  }

  // sum_q sum_t N_H(t, q); equals (n^2/2) log2(n) for any bijective mapping.
  long long hamming_sum() const;

 private:
  BitMapping(std::vector<unsigned> labels, int bits);

  std::vector<unsigned> labels_;
  std::vector<int> hamming_;
  int bits_ = 0;
};

}  // namespace smlink
