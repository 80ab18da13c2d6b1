#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "locmult/rational.hpp"

namespace locmult {

/// Deterministic generator. Only raw 64-bit engine outputs are consumed, so
/// streams are identical across standard library implementations (the
/// std distributions are not specified bit-exactly).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Independent stream for one (suite, instance) pair of a run.
  static Rng derive(std::uint64_t seed, std::string_view stream,
                    std::uint64_t id) {
    std::uint64_t h = splitmix(seed);
    for (unsigned char c : stream) h = splitmix(h ^ c);
    return Rng(splitmix(h ^ splitmix(id)));
  }

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, n), n > 0.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return x % n;
  }

  /// Uniform in [lo, hi].
  long range(long lo, long hi) {
    return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  bool coin() { return (next() >> 63) != 0; }

  /// Rational p / den with den drawn from a small set and p chosen so the
  /// value lies in [lo, hi].
  Rat rat(long lo, long hi) {
    static constexpr long kDens[] = {1, 2, 3, 4, 5, 6, 8, 12, 16};
    const long den = kDens[below(sizeof(kDens) / sizeof(kDens[0]))];
    return ratio(range(lo * den, hi * den), den);
  }

  /// Rational in the open interval (0, 1) on a dyadic or small grid.
  Rat unit() {
    static constexpr long kDens[] = {3, 4, 5, 6, 8, 12, 16, 24, 32};
    const long den = kDens[below(sizeof(kDens) / sizeof(kDens[0]))];
    return ratio(range(1, den - 1), den);
  }

 private:
  static std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  std::mt19937_64 engine_;
};

}  // namespace locmult
