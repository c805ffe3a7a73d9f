#ifndef POTTS_RATIONAL_HPP
#define POTTS_RATIONAL_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace potts {

/// Exact arbitrary-precision rational. mpq_class keeps values in canonical
/// reduced form (gcd(num,den)=1, den>0) as long as canonicalize() is called
/// after raw construction, which the helpers below take care of.
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Parses "num/den" or plain "num". Used for command-line w and b values.
inline Rational parse_rational(const std::string& s) {
  Rational q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) {
  return q.get_str();
}

inline Rational pow_int(const Rational& base, unsigned long e) {
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), e);
  return r;
}

inline bool is_dyadic(const Rational& q) {
  mpz_class den = q.get_den();
  return mpz_scan1(den.get_mpz_t(), 0) == mpz_sizeinbase(den.get_mpz_t(), 2) - 1;
}

}  // namespace potts

#endif  // POTTS_RATIONAL_HPP
