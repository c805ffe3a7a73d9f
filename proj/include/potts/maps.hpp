#ifndef POTTS_MAPS_HPP
#define POTTS_MAPS_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "potts/interval.hpp"
#include "potts/params.hpp"
#include "potts/rational.hpp"

namespace potts {

/// Ratio vectors live in the projective chart with the k-th coordinate
/// normalized to 1; only the first k-1 entries are stored.
template <class S>
using RatioVec = std::vector<S>;

inline Rational one_like(const Rational&) { return Rational(1); }
inline Interval one_like(const Interval& x) { return Interval::exact(1L, x.prec()); }

template <class S>
S pow_entry(const S& x, int d);
inline Rational pow_entry(const Rational& x, int d) { return pow_int(x, d); }
inline Interval pow_entry(const Interval& x, int d) { return x.pow_int(d); }

/// A permutation of {1..k}; image(i) = sigma(i), 1-based.
struct Permutation {
  std::vector<int> images;

  explicit Permutation(std::vector<int> img) : images(std::move(img)) {
    std::vector<int> seen(images.size() + 1, 0);
    for (int v : images) {
      if (v < 1 || v > static_cast<int>(images.size()) || seen[v]++)
        throw std::invalid_argument("not a permutation");
    }
  }

  static Permutation identity(int k) {
    std::vector<int> img(k);
    std::iota(img.begin(), img.end(), 1);
    return Permutation(std::move(img));
  }

  /// Builds sigma from disjoint cycles, e.g. from_cycles(4, {{1,3},{2,4}}).
  static Permutation from_cycles(int k, const std::vector<std::vector<int>>& cycles) {
    Permutation p = identity(k);
    for (const auto& c : cycles)
      for (size_t i = 0; i < c.size(); ++i) p.images[c[i] - 1] = c[(i + 1) % c.size()];
    return p;
  }

  int k() const { return static_cast<int>(images.size()); }
  int apply(int i) const { return images[i - 1]; }

  Permutation inverse() const {
    std::vector<int> img(images.size());
    for (int i = 1; i <= k(); ++i) img[apply(i) - 1] = i;
    return Permutation(std::move(img));
  }

  /// Composition sigma o rho: first rho, then sigma.
  friend Permutation operator*(const Permutation& sigma, const Permutation& rho) {
    std::vector<int> img(sigma.images.size());
    for (int i = 1; i <= sigma.k(); ++i) img[i - 1] = sigma.apply(rho.apply(i));
    return Permutation(std::move(img));
  }

  friend bool operator==(const Permutation& a, const Permutation& b) {
    return a.images == b.images;
  }

  static std::vector<Permutation> all(int k) {
    std::vector<int> img(k);
    std::iota(img.begin(), img.end(), 1);
    std::vector<Permutation> out;
    do {
      out.push_back(Permutation(img));
    } while (std::next_permutation(img.begin(), img.end()));
    return out;
  }
};

/// mu_i(x) = (w-1) x_i + sum_j x_j on the full k-coordinate chart.
template <class S>
S mu(int i, const std::vector<S>& x_full, const S& w) {
  if (i < 1 || i > static_cast<int>(x_full.size())) throw std::out_of_range("color index");
  S sum = x_full[0];
  for (size_t j = 1; j < x_full.size(); ++j) sum = sum + x_full[j];
  return sum + (w - one_like(w)) * x_full[i - 1];
}

/// G in the projective chart: entry i of the image is mu_i(x,1)/mu_k(x,1).
template <class S>
RatioVec<S> map_G(const RatioVec<S>& x, const S& w) {
  std::vector<S> full(x);
  full.push_back(one_like(w));
  int k = static_cast<int>(full.size());
  S denom = mu(k, full, w);
  RatioVec<S> out;
  out.reserve(x.size());
  for (int i = 1; i < k; ++i) out.push_back(mu(i, full, w) / denom);
  return out;
}

template <class S>
RatioVec<S> pow_entries(const RatioVec<S>& x, int d) {
  RatioVec<S> out;
  out.reserve(x.size());
  for (const S& e : x) out.push_back(pow_entry(e, d));
  return out;
}

/// F = G composed with entrywise d-th powers.
template <class S>
RatioVec<S> map_F(const RatioVec<S>& x, const S& w, int d) {
  return map_G(pow_entries(x, d), w);
}

/// The S_k color-relabeling action in the projective chart: append the
/// implicit 1, permute, renormalize by the new k-th coordinate.
template <class S>
RatioVec<S> perm_act(const Permutation& sigma, const RatioVec<S>& x) {
  std::vector<S> full(x);
  S one = one_like(x.at(0));
  full.push_back(one);
  Permutation inv = sigma.inverse();
  int k = static_cast<int>(full.size());
  const S& denom = full[inv.apply(k) - 1];
  RatioVec<S> out;
  out.reserve(x.size());
  for (int i = 1; i < k; ++i) out.push_back(full[inv.apply(i) - 1] / denom);
  return out;
}

/// Same action in log coordinates, where it is linear: append 0, permute,
/// subtract the new last coordinate.
inline std::vector<Interval> perm_act_log(const Permutation& sigma, const std::vector<Interval>& xhat) {
  std::vector<Interval> full(xhat);
  full.push_back(Interval::exact(0L, xhat.at(0).prec()));
  Permutation inv = sigma.inverse();
  int k = static_cast<int>(full.size());
  const Interval& last = full[inv.apply(k) - 1];
  std::vector<Interval> out;
  out.reserve(xhat.size());
  for (int i = 1; i < k; ++i) out.push_back(full[inv.apply(i) - 1] - last);
  return out;
}

/// One level of the tree recursion: entrywise products of the d child
/// ratio vectors followed by the degree-1 update G.
template <class S>
RatioVec<S> tree_recursion_step(const std::vector<RatioVec<S>>& children, const S& w, int d) {
  if (static_cast<int>(children.size()) != d) throw std::invalid_argument("expected d children");
  RatioVec<S> prod(children[0]);
  for (int s = 1; s < d; ++s)
    for (size_t i = 0; i < prod.size(); ++i) prod[i] = prod[i] * children[s][i];
  return map_G(prod, w);
}

/// Ratio vector of the depth-0 hat tree whose single boundary vertex is
/// pinned to fixed_color.
inline RatioVec<Rational> base_case_ratios(int fixed_color, const PottsParams& p) {
  if (fixed_color < 1 || fixed_color > p.k) throw std::out_of_range("color index");
  if (fixed_color == p.k) return RatioVec<Rational>(p.k - 1, Rational(1) / p.w);
  RatioVec<Rational> r(p.k - 1, Rational(1));
  r[fixed_color - 1] = p.w;
  return r;
}

/// Level conversions between plain-tree and hat-tree ratios: the plain
/// ratio at level n is the entrywise d-th power of the hat ratio at level
/// n-1, and the hat ratio is obtained from the plain one by the degree-1
/// update G.
template <class S>
RatioVec<S> hat_to_plain(const RatioVec<S>& hat_ratio, int d) {
  return pow_entries(hat_ratio, d);
}

template <class S>
RatioVec<S> plain_to_hat(const RatioVec<S>& plain_ratio, const S& w) {
  return map_G(plain_ratio, w);
}

enum class IterationVerdict { Converged, Cycling, Undecided };

struct IterationTrace {
  IterationVerdict verdict = IterationVerdict::Undecided;
  int steps = 0;
  double final_deviation = 0.0;              // max_i |x_i - 1| at the last step
  std::vector<std::vector<double>> orbit;    // midpoints, one row per step
};

/// Empirical convergence probe of the iteration x -> F(x). Runs in interval
/// mode at fixed precision; verdicts are tolerance comparisons on interval
/// midpoints, not certificates.
inline IterationTrace iterate_F(const RatioVec<Rational>& x0, const PottsParams& p, int max_steps,
                                double tol, mpfr_prec_t prec = 128) {
  if (tol <= 0) throw std::invalid_argument("tol must be positive");
  Interval w = Interval::exact(p.w, prec);
  RatioVec<Interval> x;
  for (const Rational& e : x0) x.push_back(Interval::exact(e, prec));

  auto mids = [](const RatioVec<Interval>& v) {
    std::vector<double> m;
    for (const Interval& e : v) m.push_back(e.mid_double());
    return m;
  };
  auto deviation = [](const std::vector<double>& m) {
    double dev = 0.0;
    for (double e : m) dev = std::max(dev, std::fabs(e - 1.0));
    return dev;
  };
  auto dist = [](const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (size_t i = 0; i < a.size(); ++i) d = std::max(d, std::fabs(a[i] - b[i]));
    return d;
  };

  IterationTrace trace;
  trace.orbit.push_back(mids(x));
  for (int step = 0;; ++step) {
    const std::vector<double>& cur = trace.orbit.back();
    double dev = deviation(cur);
    trace.steps = step;
    trace.final_deviation = dev;
    if (dev < tol) {
      trace.verdict = IterationVerdict::Converged;
      return trace;
    }
    // A revisit only counts as a cycle when both points are clearly away
    // from the fixed point; a slowly contracting orbit has near-coincident
    // consecutive iterates that must not be mistaken for a cycle.
    for (size_t j = 0; j + 1 < trace.orbit.size(); ++j) {
      if (dist(trace.orbit[j], cur) < tol && deviation(trace.orbit[j]) >= 100 * tol &&
          dev >= 100 * tol) {
        trace.verdict = IterationVerdict::Cycling;
        return trace;
      }
    }
    if (step >= max_steps) {
      trace.verdict = IterationVerdict::Undecided;
      return trace;
    }
    x = map_F(x, w, p.d);
    // Re-center on midpoints: enclosure widths compound exponentially over
    // hundreds of steps, and this probe's verdicts are midpoint-based anyway.
    for (Interval& e : x) e = Interval::midpoint_of(e);
    trace.orbit.push_back(mids(x));
  }
}

}  // namespace potts

#endif  // POTTS_MAPS_HPP
