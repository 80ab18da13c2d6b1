#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace locmult {

// Exact scalars. Never bind GMP expressions to `auto`: they are lazy
// expression templates that reference their operands.
using Int = mpz_class;
using Rat = mpq_class;

/// Parses "p" or "p/q" (optional leading '-'); result is in lowest terms.
Rat parse_rat(std::string_view text);

/// Lowest-terms text, "p" when the denominator is one.
std::string to_string(const Rat& q);

Int floor_of(const Rat& q);
Int ceil_of(const Rat& q);

/// 2^n for n >= 0, 2^-|n| otherwise.
Rat pow2(long n);

/// p / q in lowest terms; q != 0.
inline Rat ratio(long p, long q) {
  Rat r{Int(p), Int(q)};
  r.canonicalize();
  return r;
}

inline const Rat& min_of(const Rat& a, const Rat& b) { return b < a ? b : a; }
inline const Rat& max_of(const Rat& a, const Rat& b) { return a < b ? b : a; }

}  // namespace locmult
