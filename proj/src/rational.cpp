#include "locmult/rational.hpp"

#include <cctype>

#include "locmult/error.hpp"

namespace locmult {

namespace {

bool is_integer_text(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Rat parse_rat(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  if (!is_integer_text(num)) {
    throw ParseError("malformed fraction '" + std::string(text) + "'");
  }
  Rat q;
  if (slash == std::string_view::npos) {
    q = Rat(Int(std::string(num)));
    return q;
  }
  const std::string_view den = text.substr(slash + 1);
  if (!is_integer_text(den) || den[0] == '-') {
    throw ParseError("malformed fraction '" + std::string(text) + "'");
  }
  const Int d{std::string(den)};
  if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  q = Rat(Int(std::string(num)), d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rat& q) { return q.get_str(); }

Int floor_of(const Rat& q) {
  Int r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Int ceil_of(const Rat& q) {
  Int r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Rat pow2(long n) {
  Int p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(n < 0 ? -n : n));
  Rat out = n < 0 ? Rat(Int(1), p) : Rat(p);
  return out;
}

}  // namespace locmult
