#ifndef POTTS_CERTIFY_HPP
#define POTTS_CERTIFY_HPP

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "potts/brute_force.hpp"
#include "potts/inequalities.hpp"
#include "potts/interval.hpp"
#include "potts/maps.hpp"
#include "potts/params.hpp"
#include "potts/rational.hpp"
#include "potts/regions.hpp"

namespace potts {

struct LUM {
  Interval L, U, M;
};

/// Certified enclosures of L(b) = max(b, l(b)), U(b) = min(b^2, u(b)) and
/// their midpoint; throws when L < U cannot be separated at this precision.
inline LUM compute_lum(const Interval& b, int k, int d, const Rational& w) {
  IneqFunctions f(k, d, w);
  LUM out{Interval::max(b, f.l(b)), Interval::min(b.pow_int(2), f.u(b)), Interval(b.prec())};
  if (!out.L.certainly_less(out.U))
    throw std::runtime_error("cannot separate L(b) < U(b) at this precision");
  out.M = (out.L + out.U) / Interval::exact(2L, b.prec());
  return out;
}

/// The invariant region T_{M(b),b} for a dyadic b, built at the given
/// working precision.
inline RegionParams midpoint_region(const Rational& b, int k, int d, const Rational& w,
                                    mpfr_prec_t prec) {
  Interval bi = Interval::exact(b, prec);
  return RegionParams(k, compute_lum(bi, k, d, w).M, bi);
}

struct CertifyOptions {
  Rational b_margin = make_rational(1, 10);
  Rational bisection_tol = make_rational(1, 1000);  // relative to b - 1
  int max_iters = 500;
  Rational threshold = make_rational(1, 1000000);  // success when b - 1 drops below
  mpfr_prec_t precision = 128;
  mpfr_prec_t max_precision = 1024;
  uint64_t audit_seed = 1;
  long audit_samples = 200;
};

struct AuditResult {
  bool run = false;
  bool ok = false;
  std::vector<int> depths;
};

/// Certified requires: all four inequalities proven (they carry the
/// every-b>1 content via polynomial positivity), base ratio vectors inside
/// the initial region, every emitted containment step certified, and the
/// b_n strictly decreasing. threshold_reached records whether the sequence
/// additionally got within the numeric threshold of 1 inside the step
/// budget; at the critical weight the map's linearization at the fixed
/// point is an isometry, the decay is only algebraic, and the achieved
/// distance bound is reported instead.
struct Certificate {
  explicit Certificate(PottsParams p) : params(std::move(p)) {}

  PottsParams params;
  std::vector<InequalityProof> inequalities;
  std::vector<Rational> b_sequence;  // b_0, b_1, ...
  bool certified = false;
  bool threshold_reached = false;
  int failed_step = -1;  // -1 when certified
  double distance_bound = 0.0;
  mpfr_prec_t precision_bits = 128;
  AuditResult audit;
};

namespace detail {

// Smallest dyadic with denominator 2^bits that is >= q.
inline Rational dyadic_ceil(const Rational& q, unsigned bits) {
  mpz_class scaled = q.get_num() << bits;
  mpz_class num, rem;
  mpz_cdiv_qr(num.get_mpz_t(), rem.get_mpz_t(), scaled.get_mpz_t(), q.get_den().get_mpz_t());
  Rational out(num, mpz_class(1) << bits);
  out.canonicalize();
  return out;
}

inline bool base_vectors_inside(const Rational& b, const PottsParams& p, mpfr_prec_t prec) {
  try {
    RegionParams region = midpoint_region(b, p.k, p.d, p.w, prec);
    for (int color = 1; color <= p.k; ++color)
      if (region_membership(base_case_ratios(color, p), region) != Membership::Inside) return false;
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

// Certified check that F maps T_{M(b_src),b_src} strictly into
// T_{M(b_tgt),b_tgt}, retrying at doubled precision.
inline bool step_certified(const Rational& b_src, const Rational& b_tgt, const PottsParams& p,
                           const CertifyOptions& opts) {
  for (mpfr_prec_t prec = opts.precision; prec <= opts.max_precision; prec *= 2) {
    try {
      RegionParams src = midpoint_region(b_src, p.k, p.d, p.w, prec);
      RegionParams tgt = midpoint_region(b_tgt, p.k, p.d, p.w, prec);
      if (containment_check(src, tgt, p, prec) == Containment::Certified) return true;
    } catch (const std::exception&) {
      // not separable at this precision; retry wider
    }
  }
  return false;
}

}  // namespace detail

/// Builds the strictly decreasing sequence b_0 > b_1 > ... with
/// F(T_{M(b_{n-1}),b_{n-1}}) certified inside T_{M(b_n),b_n} at each step,
/// bisecting from above for each b_n; succeeds when b_N - 1 falls below the
/// threshold.
inline Certificate build_shrinking_sequence(const PottsParams& p, const CertifyOptions& opts = {}) {
  Certificate cert(p);
  cert.precision_bits = opts.precision;

  // Pick b_0: start just above 1/w (the largest base-vector coordinate) and
  // grow until all k base ratio vectors are certified inside T_{M(b0),b0}.
  Rational b0 = detail::dyadic_ceil((1 / p.w) * (1 + opts.b_margin), 12);
  bool found = false;
  for (int tries = 0; tries < 64; ++tries) {
    if (detail::base_vectors_inside(b0, p, opts.precision)) {
      found = true;
      break;
    }
    b0 = b0 * make_rational(3, 2);
  }
  if (!found) {
    cert.failed_step = 0;
    return cert;
  }
  cert.b_sequence.push_back(b0);

  Rational prev = b0;
  for (int n = 1; n <= opts.max_iters; ++n) {
    if (!detail::step_certified(prev, prev, p, opts)) {
      cert.failed_step = n;
      return cert;
    }
    // Bisect downward for (approximately) the smallest certified target;
    // any certified target is sound, minimality only affects speed.
    Rational lo(1), hi = prev;
    while (hi - lo > opts.bisection_tol * (hi - 1)) {
      Rational mid = (lo + hi) / 2;
      if (detail::step_certified(prev, mid, p, opts))
        hi = mid;
      else
        lo = mid;
    }
    if (hi >= prev) break;  // no certified progress at this tolerance; stop here
    cert.b_sequence.push_back(hi);
    if (hi - 1 < opts.threshold) {
      cert.threshold_reached = true;
      break;
    }
    prev = hi;
  }
  // Every performed step was certified and strictly decreasing.
  cert.certified = true;

  // Distance bound of the final region to the all-ones vector: every log
  // vertex coordinate is at most log(M(b_N)), so every plain coordinate is
  // within M(b_N) - 1 of 1.
  Rational b_final = cert.b_sequence.back();
  Interval m_final = compute_lum(Interval::exact(b_final, opts.precision), p.k, p.d, p.w).M;
  cert.distance_bound = std::sqrt(static_cast<double>(p.k - 1)) * (m_final.hi_double() - 1.0);
  return cert;
}

/// Full pipeline: the four inequality certificates, the shrinking sequence,
/// and a finite-tree audit checking that brute-force ratios at depths 1 and
/// 2 lie in the corresponding regions.
inline Certificate certify_uniqueness(const PottsParams& p, const CertifyOptions& opts = {}) {
  bool supported = (p.k == 3 && p.d >= 2) || (p.k == 4 && p.d >= 4);
  if (!supported) throw std::invalid_argument("certification supports k=3, d>=2 and k=4, d>=4");
  Certificate cert = build_shrinking_sequence(p, opts);
  cert.inequalities.clear();
  bool all_proven = true;
  for (int which = 1; which <= 4; ++which) {
    InequalityProof proof = verify_inequality(which, p.k, p.d, p.w);
    all_proven = all_proven && proof.proven();
    cert.inequalities.push_back(std::move(proof));
  }
  if (!all_proven) cert.certified = false;

  if (cert.certified) {
    cert.audit.run = true;
    cert.audit.ok = true;
    for (int depth : {1, 2}) {
      if (static_cast<size_t>(depth) >= cert.b_sequence.size()) break;
      cert.audit.depths.push_back(depth);
      RegionParams region =
          midpoint_region(cert.b_sequence[depth], p.k, p.d, p.w, opts.precision);
      double leaves = std::pow(p.d, depth);
      RegionSweepResult sweep = all_ratios_in_region(depth, p, region, /*allow_sampling=*/leaves > 10,
                                                     opts.audit_samples, opts.audit_seed);
      if (!sweep.all_inside) cert.audit.ok = false;
    }
    if (!cert.audit.ok) cert.certified = false;
  }
  return cert;
}

/// Deterministic JSON rendering of a certificate; rationals as "num/den".
inline nlohmann::ordered_json certificate_json(const Certificate& cert) {
  nlohmann::ordered_json j;
  j["params"] = {{"k", cert.params.k}, {"d", cert.params.d}, {"w", to_string(cert.params.w)}};
  j["inequalities"] = nlohmann::ordered_json::array();
  for (const InequalityProof& proof : cert.inequalities) {
    j["inequalities"].push_back({{"id", proof.id},
                                 {"method", method_name(proof.method)},
                                 {"status", proof.proven() ? "proven" : "unknown"},
                                 {"poly_hash", proof.poly_hash}});
  }
  j["b_sequence"] = nlohmann::ordered_json::array();
  for (const Rational& b : cert.b_sequence) j["b_sequence"].push_back(to_string(b));
  j["status"] = cert.certified ? "certified" : "failed";
  j["threshold_reached"] = cert.threshold_reached;
  if (!cert.certified) j["failed_step"] = cert.failed_step;
  j["distance_bound"] = cert.distance_bound;
  j["precision_bits"] = static_cast<long>(cert.precision_bits);
  j["audit"] = {{"run", cert.audit.run}, {"ok", cert.audit.ok}, {"depths", cert.audit.depths}};
  return j;
}

}  // namespace potts

#endif  // POTTS_CERTIFY_HPP
