#ifndef POTTS_POLY_HPP
#define POTTS_POLY_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "potts/interval.hpp"
#include "potts/rational.hpp"

namespace potts {

/// Dense univariate polynomial with exact rational coefficients, indexed by
/// degree. The zero polynomial is the empty coefficient list.
class RationalPoly {
 public:
  RationalPoly() = default;
  explicit RationalPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  static RationalPoly constant(const Rational& c) { return RationalPoly({c}); }
  static RationalPoly monomial(const Rational& c, size_t deg) {
    std::vector<Rational> v(deg + 1, Rational(0));
    v[deg] = c;
    return RationalPoly(std::move(v));
  }

  bool is_zero() const { return coeffs_.empty(); }
  // Degree of the zero polynomial is reported as -1.
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }

  const Rational& coeff(size_t i) const {
    static const Rational zero(0);
    return i < coeffs_.size() ? coeffs_[i] : zero;
  }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  friend RationalPoly operator+(const RationalPoly& a, const RationalPoly& b) {
    std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
    for (size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
    return RationalPoly(std::move(c));
  }

  friend RationalPoly operator-(const RationalPoly& a, const RationalPoly& b) {
    std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
    for (size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) - b.coeff(i);
    return RationalPoly(std::move(c));
  }

  friend RationalPoly operator*(const RationalPoly& a, const RationalPoly& b) {
    if (a.is_zero() || b.is_zero()) return RationalPoly();
    std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
    for (size_t i = 0; i < a.coeffs_.size(); ++i)
      for (size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return RationalPoly(std::move(c));
  }

  friend RationalPoly operator*(const Rational& s, const RationalPoly& a) {
    std::vector<Rational> c(a.coeffs_);
    for (auto& x : c) x *= s;
    return RationalPoly(std::move(c));
  }

  friend bool operator==(const RationalPoly& a, const RationalPoly& b) {
    return a.coeffs_ == b.coeffs_;
  }

  Rational eval(const Rational& x) const {
    Rational r(0);
    for (size_t i = coeffs_.size(); i-- > 0;) r = r * x + coeffs_[i];
    return r;
  }

  Interval eval(const Interval& x) const {
    Interval r = Interval::exact(0L, x.prec());
    for (size_t i = coeffs_.size(); i-- > 0;) r = r * x + Interval::exact(coeffs_[i], x.prec());
    return r;
  }

  /// Formal derivative.
  RationalPoly derivative() const {
    if (coeffs_.size() <= 1) return RationalPoly();
    std::vector<Rational> c(coeffs_.size() - 1);
    for (size_t i = 1; i < coeffs_.size(); ++i) c[i - 1] = Rational(static_cast<long>(i)) * coeffs_[i];
    return RationalPoly(std::move(c));
  }

  RationalPoly nth_derivative(unsigned n) const {
    RationalPoly p = *this;
    for (unsigned i = 0; i < n; ++i) p = p.derivative();
    return p;
  }

  /// Taylor shift: returns q with q(t) = p(t+1), the expansion of p in
  /// powers of (b-1). Synthetic Horner, one pass per output coefficient.
  RationalPoly shift_to_one() const {
    std::vector<Rational> c(coeffs_);
    size_t n = c.size();
    for (size_t i = 0; i + 1 < n; ++i)
      for (size_t j = n - 1; j > i; --j) c[j - 1] += c[j];
    return RationalPoly(std::move(c));
  }

  /// Exact division by b^m; throws if any of the m lowest coefficients is
  /// nonzero.
  RationalPoly divide_by_power(size_t m) const {
    if (coeffs_.size() < m) {
      if (!is_zero()) throw std::domain_error("non-exact division by b^m");
      return RationalPoly();
    }
    for (size_t i = 0; i < m && i < coeffs_.size(); ++i)
      if (coeffs_[i] != 0) throw std::domain_error("non-exact division by b^m");
    return RationalPoly(std::vector<Rational>(coeffs_.begin() + m, coeffs_.end()));
  }

  RationalPoly divide_by_scalar(const Rational& s) const {
    if (s == 0) throw std::domain_error("division by zero scalar");
    std::vector<Rational> c(coeffs_);
    for (auto& x : c) x /= s;
    return RationalPoly(std::move(c));
  }

  std::string str() const {
    if (is_zero()) return "0";
    std::string s;
    for (size_t i = coeffs_.size(); i-- > 0;) {
      if (coeffs_[i] == 0) continue;
      if (!s.empty()) s += " + ";
      s += coeffs_[i].get_str();
      if (i > 0) s += "*b^" + std::to_string(i);
    }
    return s;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }
  std::vector<Rational> coeffs_;
};

enum class PositivityStatus { Proven, Unknown };
enum class PositivityMethod { ShiftNonnegCoeffs, DerivativeCascade, None };

struct PositivityVerdict {
  PositivityStatus status = PositivityStatus::Unknown;
  PositivityMethod method = PositivityMethod::None;
  bool proven() const { return status == PositivityStatus::Proven; }
};

inline const char* method_name(PositivityMethod m) {
  switch (m) {
    case PositivityMethod::ShiftNonnegCoeffs: return "shift-nonneg";
    case PositivityMethod::DerivativeCascade: return "derivative-cascade";
    default: return "none";
  }
}

namespace detail {

enum class RaySign { No, Nonneg, StrictlyPositive };

// Sufficient criterion for p >= 0 on (1,inf): p(1) >= 0 and p' >= 0 on the
// ray, recursively. Strictness propagates: a strictly increasing tail or a
// strictly positive value at 1 upgrades Nonneg to StrictlyPositive.
inline RaySign cascade_sign(const RationalPoly& p) {
  if (p.degree() <= 0) {
    Rational c = p.coeff(0);
    if (c < 0) return RaySign::No;
    return c > 0 ? RaySign::StrictlyPositive : RaySign::Nonneg;
  }
  Rational at_one = p.eval(Rational(1));
  if (at_one < 0) return RaySign::No;
  RaySign d = cascade_sign(p.derivative());
  if (d == RaySign::No) return RaySign::No;
  if (d == RaySign::StrictlyPositive) return RaySign::StrictlyPositive;
  return at_one > 0 ? RaySign::StrictlyPositive : RaySign::Nonneg;
}

}  // namespace detail

/// Tries to prove p(b) > 0 for all b > 1. First by checking that all
/// coefficients of the (b-1)-expansion are nonnegative with at least one
/// positive, then by the derivative cascade. Sound: never returns Proven
/// for a polynomial with a root above 1.
inline PositivityVerdict certify_positive_on_open_ray(const RationalPoly& p) {
  if (p.is_zero()) throw std::domain_error("zero polynomial");
  RationalPoly shifted = p.shift_to_one();
  bool all_nonneg = true, one_pos = false;
  for (const Rational& c : shifted.coeffs()) {
    if (c < 0) all_nonneg = false;
    if (c > 0) one_pos = true;
  }
  if (all_nonneg && one_pos)
    return {PositivityStatus::Proven, PositivityMethod::ShiftNonnegCoeffs};
  if (detail::cascade_sign(p) == detail::RaySign::StrictlyPositive)
    return {PositivityStatus::Proven, PositivityMethod::DerivativeCascade};
  return {PositivityStatus::Unknown, PositivityMethod::None};
}

}  // namespace potts

#endif  // POTTS_POLY_HPP
