#ifndef POTTS_INTERVAL_HPP
#define POTTS_INTERVAL_HPP

#include <mpfr.h>

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

#include "potts/rational.hpp"

namespace potts {

/// Directed-rounding interval on MPFR floats. Every operation returns an
/// enclosure of the exact result: lower endpoints are rounded toward
/// -infinity, upper endpoints toward +infinity.
class Interval {
 public:
  explicit Interval(mpfr_prec_t prec = 128) : prec_(prec) {
    mpfr_init2(lo_, prec);
    mpfr_init2(hi_, prec);
    mpfr_set_zero(lo_, 0);
    mpfr_set_zero(hi_, 0);
  }

  Interval(const Interval& o) : prec_(o.prec_) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
  }

  Interval(Interval&& o) noexcept : prec_(o.prec_) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
  }

  Interval& operator=(Interval o) {
    std::swap(prec_, o.prec_);
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
    return *this;
  }

  ~Interval() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
  }

  static Interval exact(const Rational& q, mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_set_q(r.lo_, q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_, q.get_mpq_t(), MPFR_RNDU);
    return r;
  }

  static Interval exact(long n, mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_set_si(r.lo_, n, MPFR_RNDD);
    mpfr_set_si(r.hi_, n, MPFR_RNDU);
    return r;
  }

  mpfr_prec_t prec() const { return prec_; }
  mpfr_srcptr lo() const { return lo_; }
  mpfr_srcptr hi() const { return hi_; }

  bool certainly_positive() const { return mpfr_sgn(lo_) > 0; }
  bool certainly_negative() const { return mpfr_sgn(hi_) < 0; }
  bool certainly_nonnegative() const { return mpfr_sgn(lo_) >= 0; }
  bool contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }

  /// True iff every value of *this is strictly below every value of o.
  bool certainly_less(const Interval& o) const { return mpfr_less_p(hi_, o.lo_); }

  bool contains(const Rational& q) const {
    return mpfr_cmp_q(lo_, q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, q.get_mpq_t()) >= 0;
  }

  double lo_double() const { return mpfr_get_d(lo_, MPFR_RNDD); }
  double hi_double() const { return mpfr_get_d(hi_, MPFR_RNDU); }
  double mid_double() const { return 0.5 * (lo_double() + hi_double()); }
  double width_double() const {
    mpfr_t w;
    mpfr_init2(w, prec_);
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    double r = mpfr_get_d(w, MPFR_RNDU);
    mpfr_clear(w);
    return r;
  }

  friend Interval operator+(const Interval& a, const Interval& b) {
    Interval r(std::max(a.prec_, b.prec_));
    mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
  }

  friend Interval operator-(const Interval& a, const Interval& b) {
    Interval r(std::max(a.prec_, b.prec_));
    mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
    return r;
  }

  friend Interval operator-(const Interval& a) {
    Interval r(a.prec_);
    mpfr_neg(r.lo_, a.hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, a.lo_, MPFR_RNDU);
    return r;
  }

  friend Interval operator*(const Interval& a, const Interval& b) {
    Interval r(std::max(a.prec_, b.prec_));
    mpfr_t t;
    mpfr_init2(t, r.prec_);
    // lo: minimum of the four endpoint products rounded down.
    mpfr_mul(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_mul(t, a.lo_, b.hi_, MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
    mpfr_mul(t, a.hi_, b.lo_, MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
    mpfr_mul(t, a.hi_, b.hi_, MPFR_RNDD);
    mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
    // hi: maximum rounded up.
    mpfr_mul(r.hi_, a.lo_, b.lo_, MPFR_RNDU);
    mpfr_mul(t, a.lo_, b.hi_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    mpfr_mul(t, a.hi_, b.lo_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    mpfr_mul(t, a.hi_, b.hi_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    mpfr_clear(t);
    return r;
  }

  friend Interval operator/(const Interval& a, const Interval& b) {
    if (b.contains_zero()) throw std::domain_error("interval division by interval containing zero");
    // 1/x maps [lo,hi] to [1/hi, 1/lo] for either constant sign.
    Interval inv(b.prec_);
    mpfr_ui_div(inv.lo_, 1, b.hi_, MPFR_RNDD);
    mpfr_ui_div(inv.hi_, 1, b.lo_, MPFR_RNDU);
    return a * inv;
  }

  Interval log() const {
    if (!certainly_positive()) throw std::domain_error("log of interval not certainly positive");
    Interval r(prec_);
    mpfr_log(r.lo_, lo_, MPFR_RNDD);
    mpfr_log(r.hi_, hi_, MPFR_RNDU);
    return r;
  }

  Interval exp() const {
    Interval r(prec_);
    mpfr_exp(r.lo_, lo_, MPFR_RNDD);
    mpfr_exp(r.hi_, hi_, MPFR_RNDU);
    return r;
  }

  /// Integer power; base must be certainly positive when n < 0 or the
  /// interval spans zero. For n >= 1 and positive base x^n is monotone.
  Interval pow_int(long n) const {
    if (n == 0) return exact(1, prec_);
    if (n < 0) return exact(1L, prec_) / pow_int(-n);
    if (!certainly_nonnegative()) throw std::domain_error("pow_int of sign-indefinite interval");
    Interval r(prec_);
    mpfr_pow_ui(r.lo_, lo_, static_cast<unsigned long>(n), MPFR_RNDD);
    mpfr_pow_ui(r.hi_, hi_, static_cast<unsigned long>(n), MPFR_RNDU);
    return r;
  }

  /// General power b^e = exp(e * log(b)); requires certainly positive base.
  Interval pow(const Interval& e) const { return (log() * e).exp(); }

  /// Degenerate point interval at the midpoint of x (not an enclosure of
  /// anything; for empirical probes only).
  static Interval midpoint_of(const Interval& x) {
    Interval r(x.prec_);
    mpfr_add(r.lo_, x.lo_, x.hi_, MPFR_RNDN);
    mpfr_div_2ui(r.lo_, r.lo_, 1, MPFR_RNDN);
    mpfr_set(r.hi_, r.lo_, MPFR_RNDU);
    return r;
  }

  /// Entrywise max/min enclosures: max maps to [max(lo), max(hi)].
  static Interval max(const Interval& a, const Interval& b) {
    Interval r(std::max(a.prec_, b.prec_));
    mpfr_max(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
  }

  static Interval min(const Interval& a, const Interval& b) {
    Interval r(std::max(a.prec_, b.prec_));
    mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_min(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
  }

  /// Re-rounds into a wider working precision (the enclosure is unchanged).
  Interval widen_to(mpfr_prec_t prec) const {
    Interval r(prec);
    mpfr_set(r.lo_, lo_, MPFR_RNDD);
    mpfr_set(r.hi_, hi_, MPFR_RNDU);
    return r;
  }

  std::string str(size_t digits = 20) const {
    char* s = nullptr;
    std::string out;
    mpfr_asprintf(&s, "[%.*Re, %.*Re]", static_cast<int>(digits), lo_, static_cast<int>(digits), hi_);
    out = s;
    mpfr_free_str(s);
    return out;
  }

 private:
  mpfr_prec_t prec_;
  mpfr_t lo_, hi_;
};

}  // namespace potts

#endif  // POTTS_INTERVAL_HPP
