#pragma once

/// \file rational.hpp
/// Exact rational scalar (GMP) plus the string conventions shared by all
/// file formats: rationals travel as "p" or "p/q" with decimal integers.
/// Decimal and scientific notation are also accepted on input ("0.25",
/// "1e-6") and converted exactly.

#include <gmpxx.h>

#include <cctype>
#include <cstdint>
#include <string>

#include "errors.hpp"

namespace cubelift {

using Rational = mpq_class;

/// num / 2^k, canonicalized.
inline Rational dyadic(long num, unsigned k) {
  Rational q(num);
  q /= Rational(mpz_class(1) << k);
  return q;
}

inline int sign(const Rational& q) { return sgn(q); }

inline double to_double(const Rational& q) { return q.get_d(); }

inline bool is_integer(const Rational& q) {
  return mpz_cmp_ui(q.get_den().get_mpz_t(), 1) == 0;
}

/// Canonical "p" or "p/q" form (denominator omitted when 1).
inline std::string format_rational(const Rational& q) {
  return q.get_str();
}

namespace detail {

inline bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

inline Rational parse_fraction(const std::string& s, const std::string& orig) {
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = s.substr(slash + 1);
  std::string num_digits = (!num.empty() && (num[0] == '-' || num[0] == '+'))
                               ? num.substr(1)
                               : num;
  if (!all_digits(num_digits) || !all_digits(den))
    throw ValidationError("malformed rational '" + orig + "'");
  mpz_class p(num, 10), q(den, 10);
  if (q == 0) throw ValidationError("zero denominator in '" + orig + "'");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

}  // namespace detail

/// Parse "p", "p/q", "d.d" or "dEe" into an exact rational.
/// Throws ValidationError on anything else (including NaN/Inf tokens).
inline Rational parse_rational(const std::string& s) {
  if (s.empty()) throw ValidationError("empty rational string");
  if (s.find('/') != std::string::npos) return detail::parse_fraction(s, s);

  // [sign] digits [. digits] [e [sign] digits]
  std::string t = s;
  bool neg = false;
  std::size_t pos = 0;
  if (t[pos] == '+' || t[pos] == '-') {
    neg = (t[pos] == '-');
    ++pos;
  }
  std::string int_part, frac_part, exp_part;
  while (pos < t.size() && std::isdigit(static_cast<unsigned char>(t[pos])))
    int_part += t[pos++];
  if (pos < t.size() && t[pos] == '.') {
    ++pos;
    while (pos < t.size() && std::isdigit(static_cast<unsigned char>(t[pos])))
      frac_part += t[pos++];
  }
  long exp10 = 0;
  if (pos < t.size() && (t[pos] == 'e' || t[pos] == 'E')) {
    ++pos;
    bool eneg = false;
    if (pos < t.size() && (t[pos] == '+' || t[pos] == '-')) {
      eneg = (t[pos] == '-');
      ++pos;
    }
    while (pos < t.size() && std::isdigit(static_cast<unsigned char>(t[pos])))
      exp_part += t[pos++];
    if (exp_part.empty()) throw ValidationError("malformed rational '" + s + "'");
    exp10 = std::stol(exp_part);
    if (eneg) exp10 = -exp10;
  }
  if (pos != t.size() || (int_part.empty() && frac_part.empty()))
    throw ValidationError("malformed rational '" + s + "'");

  mpz_class digits((int_part.empty() ? "0" : int_part) + frac_part, 10);
  Rational r(digits);
  long shift = exp10 - static_cast<long>(frac_part.size());
  mpz_class pow10;
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
  if (shift >= 0)
    r *= Rational(pow10);
  else
    r /= Rational(pow10);
  if (neg) r = -r;
  r.canonicalize();
  return r;
}

}  // namespace cubelift
