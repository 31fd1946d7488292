#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace fmethod {

/// Exact rational scalar. mpq_class keeps numerator and denominator coprime
/// with a positive denominator once canonicalized, which every helper here does.
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Parses `num`, `num/den` or `-num/den`. No decimal points, no exponents.
inline Rational parse_rational(std::string_view text) {
  auto bad = [&] { return std::invalid_argument("not a rational: '" + std::string(text) + "'"); };
  if (text.empty()) throw bad();
  std::size_t slash = text.find('/');
  auto check_int = [&](std::string_view s) {
    std::size_t i = 0;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) i = 1;
    if (i >= s.size()) throw bad();
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') throw bad();
  };
  std::string num(text.substr(0, slash));
  if (!num.empty() && num[0] == '+') num.erase(0, 1);
  check_int(num);
  mpz_class n(num, 10);
  mpz_class d(1);
  if (slash != std::string_view::npos) {
    std::string den(text.substr(slash + 1));
    check_int(den);
    if (den[0] == '-' || den[0] == '+') throw bad();
    d = mpz_class(den, 10);
    if (d == 0) throw bad();
  }
  Rational r(n, d);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(10); }

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

/// r ∈ {0, 1, 2, ...}
inline bool is_natural(const Rational& r) { return is_integer(r) && sgn(r) >= 0; }

/// r ∈ {1, 2, 3, ...}
inline bool is_positive_natural(const Rational& r) { return is_integer(r) && sgn(r) > 0; }

inline long to_long(const Rational& r) {
  if (!is_integer(r)) throw std::domain_error("rational is not an integer: " + to_string(r));
  if (!r.get_num().fits_slong_p()) throw std::overflow_error("integer does not fit in long");
  return r.get_num().get_si();
}

inline Rational factorial(long k) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(k));
  return Rational(f);
}

inline Rational pow(const Rational& base, long e) {
  Rational out(1);
  for (long i = 0; i < e; ++i) out *= base;
  return out;
}

}  // namespace fmethod
