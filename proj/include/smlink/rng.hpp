#pragma once

#include <complex>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <limits>

namespace smlink {

// Counter-based PRNG (Philox 4x64, 10 rounds). Streams are cheap: the key is
// (seed, stream) and the 256-bit counter walks per draw, so any (seed, stream)
// pair addresses an independent sequence without state hand-off between
// workers. Matches numpy.random.Philox output for the same key/counter, which
// the tests exploit as a reference implementation.
class Philox4x64 {
 public:
  using result_type = std::uint64_t;

  Philox4x64(std::uint64_t seed, std::uint64_t stream) : key_{seed, stream} {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()() {
    if (idx_ == 4) {
      block();
      idx_ = 0;
    }
    return buf_[idx_++];
  }

  // One 4-word block for the given counter value, independent of stream state.
  static void raw_block(const std::uint64_t ctr[4], const std::uint64_t key[2],
                        std::uint64_t out[4]) {
    std::uint64_t c0 = ctr[0], c1 = ctr[1], c2 = ctr[2], c3 = ctr[3];
    std::uint64_t k0 = key[0], k1 = key[1];
    for (int round = 0; round < 10; ++round) {
      const std::uint64_t hi0 = mulhi(kMult0, c0), lo0 = kMult0 * c0;
      const std::uint64_t hi1 = mulhi(kMult1, c2), lo1 = kMult1 * c2;
      const std::uint64_t n0 = hi1 ^ c1 ^ k0;
      const std::uint64_t n2 = hi0 ^ c3 ^ k1;
      c0 = n0;
      c1 = lo1;
      c2 = n2;
      c3 = lo0;
      k0 += kWeyl0;
      k1 += kWeyl1;
    }
    out[0] = c0;
    out[1] = c1;
    out[2] = c2;
    out[3] = c3;
  }

 private:
  static constexpr std::uint64_t kMult0 = 0xD2E7470EE14C6C93ull;
  static constexpr std::uint64_t kMult1 = 0xCA5A826395121157ull;
  static constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ull;
  static constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73Bull;

  static std::uint64_t mulhi(std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(a) * b) >> 64);
  }

  void block() {
    // numpy's Philox advances the 256-bit counter before producing a block;
    // kept identical so its output doubles as a reference implementation.
    for (int i = 0; i < 4; ++i) {
      if (++ctr_[i] != 0) break;
    }
    raw_block(ctr_, key_, buf_);
  }

  std::uint64_t key_[2];
  std::uint64_t ctr_[4] = {0, 0, 0, 0};
  std::uint64_t buf_[4] = {0, 0, 0, 0};
  int idx_ = 4;
};

// SplitMix64 finalizer; used to fold structured ids (grid point, chunk, ...)
// into stream numbers.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_stream(std::initializer_list<std::uint64_t> path) {
  std::uint64_t h = 0x243F6A8885A308D3ull;
  for (std::uint64_t e : path) h = mix64(h ^ e);
  return h;
}

// Uniform on (0, 1]; the open lower end keeps log() finite for Box-Muller.
inline double uniform_pos(Philox4x64& rng) {
  return 1.0 - static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Standard normal pair via Box-Muller (kept stdlib-independent so that the
// deterministic-replay contract does not depend on libstdc++ internals).
struct NormalPair {
  double a, b;
};

inline NormalPair normal_pair(Philox4x64& rng) {
  const double u1 = uniform_pos(rng);
  const double u2 = uniform_pos(rng);
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double t = 2.0 * M_PI * u2;
  return {r * std::cos(t), r * std::sin(t)};
}

// Circularly-symmetric complex Gaussian with the given variance per real
// dimension (Re and Im each).
inline std::complex<double> complex_normal(Philox4x64& rng,
                                           double var_per_dim) {
  if (var_per_dim == 0.0) return {0.0, 0.0};
  const double s = std::sqrt(var_per_dim);
  const NormalPair z = normal_pair(rng);
  return {s * z.a, s * z.b};
}

}  // namespace smlink
