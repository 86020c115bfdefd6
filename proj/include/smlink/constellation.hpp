#pragma once

#include <complex>
#include <vector>

#include "smlink/bit_mapping.hpp"

namespace smlink {

// QAM constellation, unit average energy, indexed by bit label.
// M = 2 is BPSK; even log2(M) gives a square grid, odd a rectangular one
// (e.g. 8-QAM as 4x2). Per-rail labels are natural binary or Gray.
struct Constellation {
  std::vector<std::complex<double>> points;
  int bits = 0;
};

Constellation qam_constellation(int order, MappingKind mapping);

}  // namespace smlink
