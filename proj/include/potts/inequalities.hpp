#ifndef POTTS_INEQUALITIES_HPP
#define POTTS_INEQUALITIES_HPP

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "potts/interval.hpp"
#include "potts/params.hpp"
#include "potts/poly.hpp"
#include "potts/rational.hpp"

namespace potts {

/// Interval evaluators for the four auxiliary functions of b > 1 that
/// control the region self-map condition:
///   l = (b^d + k - 2 + w) / (w b^d + k - 1)
///   g = (2 b^d + 1 + w) / ((1 + w) b^d + 2)
///   h = b^d (b - 1)(k - 1 + w) / ((b^d - 1)(b - w))
///   u = b^h
/// h has a removable singularity at b = 1 with value (k-1+w)/(d(1-w));
/// evaluators require b certainly above 1.
struct IneqFunctions {
  int k;
  int d;
  Rational w;

  IneqFunctions(int k_, int d_, Rational w_) : k(k_), d(d_), w(std::move(w_)) {}

  Interval l(const Interval& b) const {
    Interval bd = b.pow_int(d);
    Interval wi = Interval::exact(w, b.prec());
    return (bd + Interval::exact(k - 2, b.prec()) + wi) /
           (wi * bd + Interval::exact(k - 1, b.prec()));
  }

  Interval g(const Interval& b) const {
    Interval bd = b.pow_int(d);
    Interval wi = Interval::exact(w, b.prec());
    Interval one = Interval::exact(1L, b.prec());
    Interval two = Interval::exact(2L, b.prec());
    return (two * bd + one + wi) / ((one + wi) * bd + two);
  }

  Interval h(const Interval& b) const {
    Interval one = Interval::exact(1L, b.prec());
    if (!one.certainly_less(b)) throw std::domain_error("h requires b certainly above 1");
    Interval bd = b.pow_int(d);
    Interval wi = Interval::exact(w, b.prec());
    return bd * (b - one) * (Interval::exact(k - 1, b.prec()) + wi) / ((bd - one) * (b - wi));
  }

  Interval u(const Interval& b) const { return b.pow(h(b)); }
};

/// The exact polynomial family at the critical weight w = 1 - k/(d+1),
/// after clearing denominators: l = p/q, h = s/t, their Wronskians r, v,
/// the combined numerator P of the sufficient condition for u > l, its
/// reduced form P0 = P/(k d b^d), and the one-sided certificates Q (for
/// b^2 > l) and m (for h increasing, hence u > b).
struct CriticalPolys {
  RationalPoly p, q, s, t, r, v, P, P0, Q, m;
};

inline CriticalPolys build_critical_polys(int k, int d) {
  if (k < 2 || d < 2) throw std::invalid_argument("need k >= 2, d >= 2");
  auto C = [](long c) { return RationalPoly::constant(Rational(c)); };
  auto B = [](long c, size_t deg) { return RationalPoly::monomial(Rational(c), deg); };

  CriticalPolys out;
  out.p = B(d + 1, d) + C(d * (k - 1) - 1);
  out.q = B(d - k + 1, d) + C((d + 1) * (k - 1));
  out.s = B(d * k, d + 1) - B(d * k, d);
  out.t = (B(1, d) - C(1)) * (B(d + 1, 1) + C(k - d - 1));
  out.r = out.q * out.p.derivative() - out.p * out.q.derivative();
  if (out.r != B(static_cast<long>(k) * k * d * d, d - 1))
    throw std::logic_error("Wronskian of l did not reduce to k^2 d^2 b^(d-1)");
  out.v = out.t * out.s.derivative() - out.s * out.t.derivative();

  RationalPoly b = B(1, 1), b1 = B(1, 1) + C(1);  // b and b+1
  out.P = b1 * out.s * out.p * out.q * out.t +
          C(2) * b * (b - C(1)) * out.v * out.p * out.q - b * b1 * out.r * out.t * out.t;
  out.P0 = out.P.divide_by_scalar(Rational(static_cast<long>(k) * d)).divide_by_power(d);

  out.Q = B(d - k + 1, d + 2) - B(d + 1, d) + B((d + 1) * (k - 1), 2) + C(1 - d * (k - 1));
  out.m = B(k, d + 1) - B(d * (d + 1), 2) + B(2 * d * d - d * k + 2 * d - k, 1) +
          C(-d * d + d * k - d);
  return out;
}

/// Numerator of b - g(b) at the critical weight, up to the positive factor
/// (d+1) / denominator: (2d+2-k) b^(d+1) - 2(d+1) b^d + 2(d+1) b - (2d+2-k).
inline RationalPoly critical_g_gap_poly(int k, int d) {
  auto C = [](long c) { return RationalPoly::constant(Rational(c)); };
  auto B = [](long c, size_t deg) { return RationalPoly::monomial(Rational(c), deg); };
  long e = 2 * d + 2 - k;
  return B(e, d + 1) - B(2 * (d + 1), d) + B(2 * (d + 1), 1) - C(e);
}

struct InequalityProof {
  int id = 0;
  PositivityStatus status = PositivityStatus::Unknown;
  PositivityMethod method = PositivityMethod::None;
  std::string certificate_poly;  // the polynomial whose ray-positivity was certified
  uint64_t poly_hash = 0;
  std::string note;
  bool proven() const { return status == PositivityStatus::Proven; }
};

namespace detail {

inline uint64_t fnv1a(const std::string& s) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

inline InequalityProof prove_via_poly(int id, const RationalPoly& poly) {
  PositivityVerdict v = certify_positive_on_open_ray(poly);
  InequalityProof proof;
  proof.id = id;
  proof.status = v.status;
  proof.method = v.method;
  proof.certificate_poly = poly.str();
  proof.poly_hash = fnv1a(proof.certificate_poly);
  return proof;
}

}  // namespace detail

inline bool inequality_supported(int which, int k, int d) {
  if (which < 1 || which > 4) return false;
  if (which == 4) return (k == 3 || k == 4) && d >= 2;
  if (k == 3) return d >= 2;
  if (k == 4) return d >= 4;
  return false;
}

/// Proves one of the four inequalities (1: u > l, 2: u > b, 3: b^2 > l,
/// 4: g < b) for all b > 1 at weight w. Monotonicity in w (l decreasing,
/// u increasing, g decreasing on [0,1)) reduces any w >= w_c to the
/// critical weight, where each inequality becomes a polynomial
/// ray-positivity statement.
inline InequalityProof verify_inequality(int which, int k, int d, const Rational& w) {
  if (!inequality_supported(which, k, d))
    throw std::invalid_argument("inequality unsupported for this (k, d)");
  Rational wc = PottsParams::critical_weight(k, d);
  InequalityProof proof;
  proof.id = which;
  if (w < wc || w >= 1) {
    proof.note = "weight below critical threshold; no reduction available";
    return proof;
  }
  switch (which) {
    case 1:
      proof = detail::prove_via_poly(1, build_critical_polys(k, d).P0);
      break;
    case 2:
      proof = detail::prove_via_poly(2, build_critical_polys(k, d).m);
      break;
    case 3:
      proof = detail::prove_via_poly(3, build_critical_polys(k, d).Q);
      break;
    case 4:
      proof = detail::prove_via_poly(4, critical_g_gap_poly(k, d));
      break;
  }
  return proof;
}

// ---------------------------------------------------------------------------
// Reference coefficient tables for the reduced positivity certificate P0 and
// its derivative cascade, used to cross-check the symbolic construction.

struct TableEntry {
  std::string label;
  RationalPoly expected;  // polynomial in d (coefficient table) or x = d-4 (cascade table)
};

namespace detail {

inline RationalPoly var() { return RationalPoly::monomial(Rational(1), 1); }
inline RationalPoly cpoly(long c) { return RationalPoly::constant(Rational(c)); }
// a*v + c for the table's linear factors, v the table variable.
inline RationalPoly lin(long a, long c) {
  return RationalPoly::monomial(Rational(a), 1) + cpoly(c);
}
inline RationalPoly from_coeffs(std::vector<long> asc) {
  std::vector<Rational> c;
  c.reserve(asc.size());
  for (long v : asc) c.emplace_back(v);
  return RationalPoly(std::move(c));
}

}  // namespace detail

/// Closed-form coefficients of P0 as polynomials in d, valid for d >= 4;
/// row labels name the b-power i*d + j, i,j in {0..3}.
inline std::vector<TableEntry> p0_coefficient_table(int k) {
  using detail::cpoly;
  using detail::from_coeffs;
  RationalPoly D = detail::var();
  std::vector<TableEntry> rows;
  auto add = [&rows](std::string label, RationalPoly v) {
    rows.push_back({std::move(label), std::move(v)});
  };
  if (k == 3) {
    add("b^0", (D - cpoly(2)) * from_coeffs({2, 0, -3, 8}));
    add("b^1", from_coeffs({-14, -24, 60, 19, -24}));
    add("b^2", (D + cpoly(1)) * detail::lin(3, -1) * from_coeffs({-16, 1, 8}));
    add("b^3", cpoly(-1) * (D + cpoly(1)) * (D + cpoly(1)) * from_coeffs({-2, 3, 8}));
    add("b^d", (D - cpoly(2)) * from_coeffs({-6, -1, 4, 8}));
    add("b^d+1", cpoly(-3) * from_coeffs({-14, -19, 15, -8, 8}));
    add("b^d+2", cpoly(3) * from_coeffs({-16, 20, 15, -4, 8}));
    add("b^d+3", cpoly(-1) * (D + cpoly(1)) * from_coeffs({6, -1, -8, 8}));
    add("b^2d", cpoly(2) * (D - cpoly(2)) * (D + cpoly(1)) * from_coeffs({3, -2, 1}));
    add("b^2d+1", cpoly(-3) * from_coeffs({14, 14, 3, -4, 2}));
    add("b^2d+2", cpoly(3) * from_coeffs({16, -7, 0, -2, 2}));
    add("b^2d+3", cpoly(-1) * (D - cpoly(2)) * (D + cpoly(1)) * from_coeffs({3, 2, 2}));
    add("b^3d", (D - cpoly(2)) * (D - cpoly(2)) * (D + cpoly(1)));
    add("b^3d+1", cpoly(-1) * (D - cpoly(2)) * (D + cpoly(1)) * (D + cpoly(7)));
    add("b^3d+2", cpoly(-1) * (D - cpoly(8)) * (D - cpoly(2)) * (D + cpoly(1)));
    add("b^3d+3", (D - cpoly(2)) * (D + cpoly(1)) * (D + cpoly(1)));
  } else if (k == 4) {
    add("b^0", (D - cpoly(3)) * from_coeffs({3, 0, -1, 18}));
    add("b^1", from_coeffs({-27, -39, 173, 67, -54}));
    add("b^2", (D + cpoly(1)) * from_coeffs({33, -124, -23, 54}));
    add("b^3", cpoly(-1) * (D + cpoly(1)) * (D + cpoly(1)) * from_coeffs({-3, 7, 18}));
    add("b^d", (D - cpoly(3)) * from_coeffs({-9, -2, 3, 12}));
    add("b^d+1", from_coeffs({81, 99, -129, 73, -36}));
    add("b^d+2", from_coeffs({-99, 163, 115, -47, 36}));
    add("b^d+3", cpoly(-1) * (D + cpoly(1)) * from_coeffs({9, -6, -19, 12}));
    add("b^2d", (D - cpoly(3)) * (D + cpoly(1)) * from_coeffs({9, -5, 2}));
    add("b^2d+1", from_coeffs({-81, -81, -37, 21, -6}));
    add("b^2d+2", from_coeffs({99, -53, 19, -15, 6}));
    add("b^2d+3", cpoly(-1) * (D - cpoly(3)) * (D + cpoly(1)) * from_coeffs({3, 1, 2}));
    add("b^3d", (D - cpoly(3)) * (D - cpoly(3)) * (D + cpoly(1)));
    add("b^3d+1", cpoly(-1) * (D - cpoly(3)) * (D + cpoly(1)) * (D + cpoly(9)));
    add("b^3d+2", cpoly(-1) * (D - cpoly(11)) * (D - cpoly(3)) * (D + cpoly(1)));
    add("b^3d+3", (D - cpoly(3)) * (D + cpoly(1)) * (D + cpoly(1)));
  } else {
    throw std::invalid_argument("table defined for k = 3 and 4 only");
  }
  return rows;
}

/// Closed forms for the cascade values P_j^(i)(1), j,i in {0..3}, as
/// polynomials in x = d-4, after dividing by the common positive factor
/// 6(x+4)^3(x+5) for k=3 resp. 8(x+4)^3(x+5) for k=4. Row order is
/// (j, i) lexicographic.
inline std::vector<TableEntry> cascade_value_table(int k) {
  using detail::cpoly;
  using detail::from_coeffs;
  using detail::lin;
  RationalPoly X = detail::var();
  std::vector<TableEntry> rows;
  auto add = [&rows](std::string label, RationalPoly v) {
    rows.push_back({std::move(label), std::move(v)});
  };
  for (int i = 0; i < 4; ++i) add("P0^(" + std::to_string(i) + ")(1)", RationalPoly());
  if (k == 3) {
    add("P1^(0)(1)", cpoly(54) * lin(1, 2));
    add("P1^(1)(1)", cpoly(3) * from_coeffs({1045, 759, 122}));
    add("P1^(2)(1)", cpoly(3) * from_coeffs({17560, 16831, 5019, 478}));
    add("P1^(3)(1)", from_coeffs({623616, 754415, 328134, 61731, 4276}));
    add("P2^(0)(1)",
        cpoly(4) * from_coeffs({1467858, 2188942, 1272211, 363231, 51218, 2864}));
    add("P2^(1)(1)", cpoly(2) * from_coeffs({22913226, 38515725, 26371144, 9479789, 1895748,
                                             200624, 8800}));
    add("P2^(2)(1)", cpoly(4) * from_coeffs({73916010, 139341417, 110605547, 48198140, 12502085,
                                             1935943, 166078, 6100}));
    add("P2^(3)(1)",
        cpoly(4) * lin(1, 2) * from_coeffs({192411450, 311415975, 217534941, 85033465, 20093453,
                                            2871108, 229772, 7948}));
    add("P3^(0)(1)",
        cpoly(12) * lin(1, 2) * from_coeffs({259667100, 493884000, 414113609, 199973638, 60841362,
                                             11945536, 1478477, 105498, 3324}));
    add("P3^(1)(1)", cpoly(4) * lin(1, 2) * lin(1, 5) * lin(2, 9) * lin(3, 13) *
                         from_coeffs({3950100, 5063412, 2712487, 775749, 124569, 10607, 372}));
    add("P3^(2)(1)", cpoly(4) * lin(1, 2) * lin(1, 5) * lin(1, 5) * lin(1, 6) * lin(2, 9) *
                         lin(3, 13) * lin(3, 14) * from_coeffs({18249, 13148, 3431, 368, 12}));
    add("P3^(3)(1)", cpoly(36) * lin(1, 2) * lin(1, 5) * lin(1, 5) * lin(1, 5) * lin(1, 5) *
                         lin(1, 6) * lin(1, 7) * lin(2, 9) * lin(2, 11) * lin(3, 13) * lin(3, 14));
  } else if (k == 4) {
    add("P1^(0)(1)", cpoly(48) * X);
    add("P1^(1)(1)", cpoly(8) * from_coeffs({135, 215, 44}));
    add("P1^(2)(1)", cpoly(2) * from_coeffs({12690, 18585, 6684, 709}));
    add("P1^(3)(1)", from_coeffs({308889, 515121, 265045, 55427, 4134}));
    add("P2^(0)(1)", cpoly(4) * from_coeffs({695142, 1366575, 933894, 297314, 45392, 2699}));
    add("P2^(1)(1)", cpoly(2) * from_coeffs({10317699, 22435155, 17941968, 7170108, 1549849,
                                             174193, 8020}));
    add("P2^(2)(1)", cpoly(2) * from_coeffs({64122030, 153239211, 141154110, 68251666, 19136364,
                                             3149973, 284024, 10878}));
    add("P2^(3)(1)",
        cpoly(3) * lin(1, 1) * from_coeffs({216527850, 352706325, 247912018, 97489094, 23169850,
                                            3329185, 267882, 9316}));
    add("P3^(0)(1)",
        cpoly(12) * lin(1, 1) * from_coeffs({213929100, 409934700, 346232169, 168375593, 51576597,
                                             10192836, 1269517, 91143, 2889}));
    add("P3^(1)(1)", cpoly(3) * lin(1, 1) * lin(1, 5) * lin(2, 9) * lin(3, 13) *
                         from_coeffs({4227300, 5463996, 2949267, 848735, 136865, 11669, 408}));
    add("P3^(2)(1)", cpoly(6) * lin(1, 1) * lin(1, 5) * lin(1, 5) * lin(1, 6) * lin(2, 9) *
                         lin(3, 13) * lin(3, 14) * from_coeffs({9471, 6883, 1807, 193, 6}));
    add("P3^(3)(1)", cpoly(27) * lin(1, 1) * lin(1, 5) * lin(1, 5) * lin(1, 5) * lin(1, 5) *
                         lin(1, 6) * lin(1, 7) * lin(2, 9) * lin(2, 11) * lin(3, 13) * lin(3, 14));
  } else {
    throw std::invalid_argument("table defined for k = 3 and 4 only");
  }
  return rows;
}

inline Rational cascade_common_factor(int k, int d) {
  long x = d - 4;
  Rational f = Rational(x + 4) * (x + 4) * (x + 4) * (x + 5);
  return (k == 3 ? Rational(6) : Rational(8)) * f;
}

struct TableMismatch {
  int d = 0;
  std::string row;
  Rational expected, actual;
};

struct TableReport {
  std::vector<TableMismatch> mismatches;
  long entries_checked = 0;
  bool ok() const { return mismatches.empty(); }
};

/// Rebuilds P0 and its derivative cascade for each d and compares every
/// coefficient and cascade value against the closed-form tables, exactly.
inline TableReport regenerate_tables(int k, const std::vector<int>& d_values) {
  TableReport report;
  std::vector<TableEntry> coeff_rows = p0_coefficient_table(k);
  std::vector<TableEntry> value_rows = cascade_value_table(k);
  for (int d : d_values) {
    if (d < 4) throw std::invalid_argument("tables require d >= 4");
    CriticalPolys polys = build_critical_polys(k, d);
    // Coefficient rows, labelled b^(i*d+j).
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        const TableEntry& row = coeff_rows[4 * i + j];
        Rational expected = row.expected.eval(Rational(d));
        Rational actual = polys.P0.coeff(static_cast<size_t>(i) * d + j);
        ++report.entries_checked;
        if (expected != actual) report.mismatches.push_back({d, row.label, expected, actual});
      }
    // All other coefficients must vanish.
    for (long e = 0; e <= polys.P0.degree(); ++e) {
      long i = e / d, j = e % d;
      if (i <= 3 && j <= 3) continue;
      if (polys.P0.coeff(e) != 0)
        report.mismatches.push_back({d, "b^" + std::to_string(e), Rational(0), polys.P0.coeff(e)});
    }
    // Cascade values P_j^(i)(1).
    Rational common = cascade_common_factor(k, d);
    Rational x(d - 4);
    RationalPoly pj = polys.P0;
    for (int j = 0; j < 4; ++j) {
      if (j > 0) pj = pj.nth_derivative(4).divide_by_power(d - 4);
      for (int i = 0; i < 4; ++i) {
        const TableEntry& row = value_rows[4 * j + i];
        Rational expected = row.expected.eval(x) * common;
        Rational actual = pj.nth_derivative(i).eval(Rational(1));
        ++report.entries_checked;
        if (expected != actual) report.mismatches.push_back({d, row.label, expected, actual});
      }
    }
  }
  return report;
}

/// Reconstructs P0 from the coefficient table alone; must agree with the
/// symbolic construction for d >= 4.
inline RationalPoly p0_from_table(int k, int d) {
  std::vector<TableEntry> rows = p0_coefficient_table(k);
  RationalPoly out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      out = out + RationalPoly::monomial(rows[4 * i + j].expected.eval(Rational(d)),
                                         static_cast<size_t>(i) * d + j);
  return out;
}

}  // namespace potts

#endif  // POTTS_INEQUALITIES_HPP
