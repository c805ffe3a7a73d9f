#ifndef POTTS_REGIONS_HPP
#define POTTS_REGIONS_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "potts/interval.hpp"
#include "potts/maps.hpp"
#include "potts/params.hpp"

namespace potts {

enum class Membership { Inside, BoundaryOrUndecided, Outside };

/// The S_k-symmetric region family T_{a,b} (k = 3 or 4), a, b > 1. In log
/// coordinates the region is the union over S_k of images of one sector
/// piece, and equals an intersection of k! half-spaces when the dual
/// representation is valid.
struct RegionParams {
  int k;
  Interval a, b;

  RegionParams(int k_, Interval a_, Interval b_) : k(k_), a(std::move(a_)), b(std::move(b_)) {
    if (k != 3 && k != 4) throw std::invalid_argument("region k must be 3 or 4");
    if (!(Interval::exact(1L, a.prec()).certainly_less(a)) ||
        !(Interval::exact(1L, b.prec()).certainly_less(b)))
      throw std::invalid_argument("region parameters must satisfy a, b > 1");
  }

  static RegionParams from_rational(int k, const Rational& a, const Rational& b,
                                    mpfr_prec_t prec = 128) {
    return RegionParams(k, Interval::exact(a, prec), Interval::exact(b, prec));
  }

  Interval a_hat() const { return a.log(); }
  Interval b_hat() const { return b.log(); }

  /// Certified validity of the half-space (dual) representation:
  /// sqrt(b) <= a <= b^2 for k=3, b <= a <= b^2 for k=4.
  bool dual_valid() const {
    Interval b2 = b.pow_int(2);
    if (!mpfr_lessequal_p(a.hi(), b2.lo())) return false;
    if (k == 4) return mpfr_lessequal_p(b.hi(), a.lo());
    Interval a2 = a.pow_int(2);
    return mpfr_lessequal_p(b.hi(), a2.lo());
  }

  RegionParams powered(int d) const { return RegionParams(k, a.pow_int(d), b.pow_int(d)); }

  RegionParams widen_to(mpfr_prec_t prec) const {
    return RegionParams(k, a.widen_to(prec), b.widen_to(prec));
  }
};

namespace detail {

// Half-space slack in log coordinates: ab_hat + b_hat*u_first - a_hat*u_last,
// nonnegative iff u lies in the base half-space H_{a,b}.
inline Interval halfspace_slack(const std::vector<Interval>& u, const Interval& a_hat,
                                const Interval& b_hat) {
  return a_hat * b_hat + b_hat * u.front() - a_hat * u.back();
}

}  // namespace detail

/// Membership in T_{a,b} via the intersection-of-half-spaces representation.
/// Inside means certified interior, Outside certified exterior; precision
/// exhaustion yields BoundaryOrUndecided, never a wrong verdict.
inline Membership region_membership_union_log(const std::vector<Interval>& xhat,
                                              const RegionParams& r);

inline Membership region_membership_log(const std::vector<Interval>& xhat, const RegionParams& r) {
  if (static_cast<int>(xhat.size()) != r.k - 1) throw std::invalid_argument("dimension mismatch");
  // Without the certified dual representation fall back to the defining
  // union-of-pieces test.
  if (!r.dual_valid()) return region_membership_union_log(xhat, r);
  Interval a_hat = r.a_hat(), b_hat = r.b_hat();
  bool all_strict = true;
  for (const Permutation& sigma : Permutation::all(r.k)) {
    std::vector<Interval> u = perm_act_log(sigma, xhat);
    Interval slack = detail::halfspace_slack(u, a_hat, b_hat);
    if (slack.certainly_negative()) return Membership::Outside;
    if (!slack.certainly_positive()) all_strict = false;
  }
  return all_strict ? Membership::Inside : Membership::BoundaryOrUndecided;
}

inline Membership region_membership(const std::vector<Interval>& x_plain, const RegionParams& r) {
  std::vector<Interval> xhat;
  xhat.reserve(x_plain.size());
  for (const Interval& e : x_plain) {
    if (!e.certainly_positive()) return Membership::BoundaryOrUndecided;
    xhat.push_back(e.log());
  }
  return region_membership_log(xhat, r);
}

inline Membership region_membership(const std::vector<Rational>& x, const RegionParams& r) {
  std::vector<Interval> xi;
  xi.reserve(x.size());
  for (const Rational& e : x) xi.push_back(Interval::exact(e, r.a.prec()));
  return region_membership(xi, r);
}

/// Membership via the defining union-of-sector-pieces representation; valid
/// for any a, b > 1. Used to cross-validate the dual representation.
inline Membership region_membership_union_log(const std::vector<Interval>& xhat,
                                              const RegionParams& r) {
  Interval a_hat = r.a_hat(), b_hat = r.b_hat();
  bool some_undecided = false;
  for (const Permutation& sigma : Permutation::all(r.k)) {
    // x in M_sigma(piece) iff M_{sigma^{-1}}(x) in piece.
    std::vector<Interval> u = perm_act_log(sigma.inverse(), xhat);
    // Base piece: sector u1 <= 0 <= u2 (<= u3) intersected with H_{a,b}.
    std::vector<Interval> cons;
    cons.push_back(-u[0]);
    cons.push_back(u[1]);
    for (size_t i = 2; i < u.size(); ++i) cons.push_back(u[i] - u[i - 1]);
    cons.push_back(detail::halfspace_slack(u, a_hat, b_hat));
    bool strict = true, violated = false;
    for (const Interval& c : cons) {
      if (c.certainly_negative()) violated = true;
      if (!c.certainly_positive()) strict = false;
    }
    if (strict) return Membership::Inside;
    if (!violated) some_undecided = true;
  }
  return some_undecided ? Membership::BoundaryOrUndecided : Membership::Outside;
}

/// Vertex of the log-coordinate polytope, each component an integer
/// combination ca*log(a) + cb*log(b).
struct LogVertex {
  std::vector<std::pair<int, int>> comps;
};

inline std::vector<LogVertex> region_vertices_symbolic(int k) {
  auto A = [](int s) { return std::make_pair(s, 0); };
  auto B = [](int s) { return std::make_pair(0, s); };
  auto O = std::make_pair(0, 0);
  if (k == 3)
    return {{{O, O}},      {{O, A(-1)}},    {{A(-1), O}},   {{A(1), A(1)}},
            {{O, B(1)}},   {{B(1), O}},     {{B(-1), B(-1)}}};
  if (k == 4)
    return {{{O, O, O}},           {{A(-1), O, O}},       {{O, A(-1), O}},
            {{O, O, A(-1)}},       {{A(1), A(1), A(1)}},  {{B(1), O, O}},
            {{O, B(1), O}},        {{O, O, B(1)}},        {{O, B(1), B(1)}},
            {{B(1), O, B(1)}},     {{B(1), B(1), O}},     {{O, B(-1), B(-1)}},
            {{B(-1), O, B(-1)}},   {{B(-1), B(-1), O}},   {{B(-1), B(-1), B(-1)}}};
  throw std::invalid_argument("k must be 3 or 4");
}

/// The vertex set P of the log polytope: 7 points for k=3, 15 for k=4.
inline std::vector<std::vector<Interval>> region_vertices(const RegionParams& r) {
  Interval a_hat = r.a_hat(), b_hat = r.b_hat();
  std::vector<std::vector<Interval>> out;
  for (const LogVertex& v : region_vertices_symbolic(r.k)) {
    std::vector<Interval> p;
    for (auto [ca, cb] : v.comps)
      p.push_back(Interval::exact(ca, r.a.prec()) * a_hat + Interval::exact(cb, r.b.prec()) * b_hat);
    out.push_back(std::move(p));
  }
  return out;
}

namespace detail {

inline LogVertex perm_act_symbolic(const Permutation& sigma, const LogVertex& v) {
  std::vector<std::pair<int, int>> full(v.comps);
  full.push_back({0, 0});
  Permutation inv = sigma.inverse();
  int k = static_cast<int>(full.size());
  auto last = full[inv.apply(k) - 1];
  LogVertex out;
  for (int i = 1; i < k; ++i) {
    auto c = full[inv.apply(i) - 1];
    out.comps.push_back({c.first - last.first, c.second - last.second});
  }
  return out;
}

}  // namespace detail

namespace detail {

// Exact nonnegativity of A*t^2 + C*t + B on the closed interval [lo, hi]:
// endpoints plus the interior stationary point when the parabola opens up.
inline bool quadratic_nonneg_on(long A, long B, long C, const Rational& lo, const Rational& hi) {
  auto val = [&](const Rational& t) -> Rational {
    return Rational(A) * t * t + Rational(C) * t + Rational(B);
  };
  if (val(lo) < 0 || val(hi) < 0) return false;
  if (A > 0) {
    Rational t_min = make_rational(-C, 2 * A);
    if (t_min > lo && t_min < hi && val(t_min) < 0) return false;
  }
  return true;
}

}  // namespace detail

/// Checks that every vertex of P satisfies every transformed half-space
/// constraint with nonstrict sign. Requires the dual representation to be
/// valid, which pins rho = log(a)/log(b) to [1/2, 2] (k=3) resp. [1, 2]
/// (k=4); each slack is the integer quadratic A rho^2 + C rho + B times
/// log(b)^2, decided exactly over the whole rho range. Vertices that lie on
/// a facet have slack exactly zero, which interval arithmetic could never
/// certify; the exact route has no such gap.
inline bool vertices_satisfy_halfspaces(const RegionParams& r) {
  if (!r.dual_valid()) return false;
  Rational rho_lo = r.k == 3 ? make_rational(1, 2) : Rational(1);
  Rational rho_hi(2);
  for (const LogVertex& v : region_vertices_symbolic(r.k)) {
    for (const Permutation& sigma : Permutation::all(r.k)) {
      LogVertex u = detail::perm_act_symbolic(sigma, v);
      // slack = ab + b_hat*u_first - a_hat*u_last as A*aa + B*bb + C*ab.
      auto [ca1, cb1] = u.comps.front();
      auto [cal, cbl] = u.comps.back();
      long A = -cal, B = cb1, C = 1 + ca1 - cbl;
      if (!detail::quadratic_nonneg_on(A, B, C, rho_lo, rho_hi)) return false;
    }
  }
  return true;
}

struct ConvexityReport {
  bool vertices_ok = false;
  long samples_checked = 0;
  long disagreements = 0;
  std::optional<std::vector<double>> first_disagreement;
  bool ok() const { return vertices_ok && disagreements == 0; }
};

/// Samples random log points in inside / near-boundary / outside strata and
/// checks that the union-of-pieces and intersection-of-half-spaces
/// membership tests never contradict each other where both are decided.
inline ConvexityReport verify_log_convexity(const RegionParams& r, long samples, uint64_t seed) {
  ConvexityReport rep;
  rep.vertices_ok = vertices_satisfy_halfspaces(r);
  std::mt19937_64 rng(seed);
  double scale = std::max(r.a_hat().hi_double(), r.b_hat().hi_double());
  std::uniform_real_distribution<double> stratum_scale(0.1, 3.0);
  mpfr_prec_t prec = r.a.prec();
  for (long i = 0; i < samples; ++i) {
    double s = stratum_scale(rng) * scale;
    std::uniform_real_distribution<double> coord(-s, s);
    std::vector<Interval> xhat;
    for (int j = 0; j < r.k - 1; ++j) {
      Rational c = make_rational(static_cast<long>(coord(rng) * (1 << 20)), 1 << 20);
      xhat.push_back(Interval::exact(c, prec));
    }
    Membership inter = region_membership_log(xhat, r);
    Membership uni = region_membership_union_log(xhat, r);
    ++rep.samples_checked;
    bool clash = (inter == Membership::Inside && uni == Membership::Outside) ||
                 (inter == Membership::Outside && uni == Membership::Inside);
    if (clash) {
      ++rep.disagreements;
      if (!rep.first_disagreement) {
        std::vector<double> pt;
        for (const Interval& e : xhat) pt.push_back(e.mid_double());
        rep.first_disagreement = pt;
      }
    }
  }
  return rep;
}

/// Evaluator for the slice boundary curve l_{a,b}(x) = b * x^(log(b)/log(a)).
inline Interval slice_curve(const RegionParams& r, const Interval& x) {
  return r.b * x.pow(r.b_hat() / r.a_hat());
}

enum class SliceId { K3_23, K3_123, K4_243, K4_134 };

/// Inequality description of T_{a,b} intersected with one sorted sector.
inline Membership slice_membership(const RegionParams& r, SliceId slice,
                                   const std::vector<Interval>& x) {
  mpfr_prec_t prec = r.a.prec();
  Interval one = Interval::exact(1L, prec);
  std::vector<Interval> cons;
  switch (slice) {
    case SliceId::K3_23:  // x <= 1 <= y <= l(x)
      cons = {one - x[0], x[1] - one, slice_curve(r, x[0]) - x[1]};
      break;
    case SliceId::K3_123:  // y <= 1 <= x <= l(y)
      cons = {one - x[1], x[0] - one, slice_curve(r, x[1]) - x[0]};
      break;
    case SliceId::K4_243:  // x <= 1 <= y <= z <= l(x)
      cons = {one - x[0], x[1] - one, x[2] - x[1], slice_curve(r, x[0]) - x[2]};
      break;
    case SliceId::K4_134:  // z <= y <= 1 <= x <= y*l(z/y)
      cons = {x[1] - x[2], one - x[1], x[0] - one, x[1] * slice_curve(r, x[2] / x[1]) - x[0]};
      break;
  }
  bool strict = true;
  for (const Interval& c : cons) {
    if (c.certainly_negative()) return Membership::Outside;
    if (!c.certainly_positive()) strict = false;
  }
  return strict ? Membership::Inside : Membership::BoundaryOrUndecided;
}

/// Simplex containing T_{a,b} cap R_(123) (k=3) resp. R_(134) (k=4),
/// obtained from the tangent-line bound on the concave slice curve.
/// Requires a >= b.
inline std::vector<std::vector<Interval>> simplex_over_approx(const RegionParams& r) {
  if (!mpfr_lessequal_p(r.b.hi(), r.a.lo()))
    throw std::invalid_argument("simplex over-approximation requires a >= b");
  mpfr_prec_t prec = r.a.prec();
  Interval one = Interval::exact(1L, prec);
  // 1 - (b-1) log(a) / (b log(b))
  Interval tangent = one - (r.b - one) * r.a_hat() / (r.b * r.b_hat());
  if (r.k == 3) return {{one, one}, {r.b, one}, {one, tangent}};
  Interval invb = one / r.b;
  return {{one, one, one}, {r.b, one, one}, {one, invb, invb}, {one, one, tangent}};
}

enum class Containment { Certified, NotCertified };

/// Certified check that F(T_source) lies strictly inside T_target.
/// Route: P(T_{a,b}) = T_{a^d,b^d}; over-approximate the powered slice by
/// its tangent simplex; push vertices through the linear-fractional map G
/// (so the image hull is the hull of the image vertices); certify every
/// image vertex strictly inside the target. S_k symmetry extends the slice
/// result to the whole region.
inline Containment containment_check(const RegionParams& source, const RegionParams& target,
                                     const PottsParams& params, mpfr_prec_t max_prec = 1024) {
  for (mpfr_prec_t prec = source.a.prec();; prec *= 2) {
    RegionParams src = source.widen_to(prec);
    RegionParams tgt = target.widen_to(prec);
    bool ok = true;
    try {
      if (!src.dual_valid() || !tgt.dual_valid()) throw std::domain_error("invalid region");
      RegionParams powered = src.powered(params.d);
      std::vector<std::vector<Interval>> verts = simplex_over_approx(powered);
      Interval w = Interval::exact(params.w, prec);
      for (const std::vector<Interval>& v : verts) {
        // G extends to the half-space sum(x) + w > 0; certify membership.
        Interval dom = w;
        for (const Interval& e : v) dom = dom + e;
        if (!dom.certainly_positive()) {
          ok = false;
          break;
        }
        std::vector<Interval> img = map_G(v, w);
        for (const Interval& e : img)
          if (!e.certainly_positive()) ok = false;
        if (!ok) break;
        if (region_membership(img, tgt) != Membership::Inside) {
          ok = false;
          break;
        }
      }
    } catch (const std::domain_error&) {
      ok = false;
    }
    if (ok) return Containment::Certified;
    if (prec * 2 > max_prec) return Containment::NotCertified;
  }
}

/// CSV export of the log-coordinate vertex set (midpoint values).
inline std::string region_csv(const RegionParams& r) {
  std::ostringstream os;
  os << "vertex";
  for (int j = 0; j < r.k - 1; ++j) os << ",log_x" << (j + 1);
  os << "\n";
  auto verts = region_vertices(r);
  char buf[64];
  for (size_t i = 0; i < verts.size(); ++i) {
    os << i;
    for (const Interval& e : verts[i]) {
      snprintf(buf, sizeof buf, ",%.12f", e.mid_double());
      os << buf;
    }
    os << "\n";
  }
  return os.str();
}

/// Deterministic SVG rendering of the k=3 log region with the six sector
/// boundaries dashed.
inline std::string region_svg(const RegionParams& r) {
  if (r.k != 3) throw std::invalid_argument("SVG export is k=3 only");
  double ah = r.a_hat().mid_double(), bh = r.b_hat().mid_double();
  double m = 1.4 * std::max(ah, bh);
  auto X = [&](double x) { return 200.0 + 180.0 * x / m; };
  auto Y = [&](double y) { return 200.0 - 180.0 * y / m; };
  // Boundary vertices of the hexagon in circular order.
  double poly[6][2] = {{bh, 0}, {ah, ah}, {0, bh}, {-ah, 0}, {-bh, -bh}, {0, -ah}};
  std::ostringstream os;
  char buf[160];
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"400\" height=\"400\" "
        "viewBox=\"0 0 400 400\">\n";
  os << "<polygon points=\"";
  for (int i = 0; i < 6; ++i) {
    snprintf(buf, sizeof buf, "%s%.3f,%.3f", i ? " " : "", X(poly[i][0]), Y(poly[i][1]));
    os << buf;
  }
  os << "\" fill=\"#cfe8ff\" stroke=\"#1f77b4\" stroke-width=\"1.5\"/>\n";
  // Sector boundaries: the two axes and the diagonal.
  double lines[3][4] = {{-m, 0, m, 0}, {0, -m, 0, m}, {-m, -m, m, m}};
  for (auto& L : lines) {
    snprintf(buf, sizeof buf,
             "<line x1=\"%.3f\" y1=\"%.3f\" x2=\"%.3f\" y2=\"%.3f\" stroke=\"#888\" "
             "stroke-dasharray=\"6,4\" stroke-width=\"1\"/>\n",
             X(L[0]), Y(L[1]), X(L[2]), Y(L[3]));
    os << buf;
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace potts

#endif  // POTTS_REGIONS_HPP
