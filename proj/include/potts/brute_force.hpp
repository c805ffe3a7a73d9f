#ifndef POTTS_BRUTE_FORCE_HPP
#define POTTS_BRUTE_FORCE_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "potts/maps.hpp"
#include "potts/params.hpp"
#include "potts/rational.hpp"
#include "potts/regions.hpp"

namespace potts {

/// Canonical finite tree: in plain mode the root has d children and every
/// internal vertex d children down to depth n, whose vertices form the
/// boundary. Hat mode prepends an extra root connected to the plain root by
/// a single edge.
struct FiniteTree {
  int d = 0;
  int n = 0;
  bool hat = false;
  std::vector<int> parent;                 // parent[v]; -1 at the root
  std::vector<std::vector<int>> children;  // children[v]
  std::vector<int> boundary;               // vertex ids of the boundary, in creation order

  static FiniteTree make(int d, int n, bool hat) {
    if (d < 2 || n < 0) throw std::invalid_argument("need d >= 2, n >= 0");
    FiniteTree t;
    t.d = d;
    t.n = n;
    t.hat = hat;
    auto add = [&t](int par) {
      t.parent.push_back(par);
      t.children.emplace_back();
      int id = static_cast<int>(t.parent.size()) - 1;
      if (par >= 0) t.children[par].push_back(id);
      return id;
    };
    int plain_root;
    if (hat) {
      int hat_root = add(-1);
      plain_root = add(hat_root);
    } else {
      plain_root = add(-1);
    }
    std::vector<int> frontier{plain_root};
    for (int depth = 0; depth < n; ++depth) {
      std::vector<int> next;
      for (int v : frontier)
        for (int c = 0; c < d; ++c) next.push_back(add(v));
      frontier = std::move(next);
    }
    t.boundary = std::move(frontier);
    return t;
  }

  int root() const { return 0; }
  int num_vertices() const { return static_cast<int>(parent.size()); }
  int num_free() const { return num_vertices() - static_cast<int>(boundary.size()); }

  bool is_boundary(int v) const {
    for (int b : boundary)
      if (b == v) return true;
    return false;
  }
};

/// Assignment of a color in [k] to each boundary vertex, indexed in the
/// order of FiniteTree::boundary.
struct BoundaryCondition {
  std::vector<int> colors;

  static BoundaryCondition uniform(const FiniteTree& t, int color) {
    return {std::vector<int>(t.boundary.size(), color)};
  }

  /// Decodes index as a base-k numeral, least significant digit first.
  static BoundaryCondition from_index(const FiniteTree& t, int k, unsigned long long index) {
    BoundaryCondition tau;
    tau.colors.resize(t.boundary.size());
    for (size_t i = 0; i < tau.colors.size(); ++i) {
      tau.colors[i] = static_cast<int>(index % k) + 1;
      index /= k;
    }
    return tau;
  }

  unsigned long long to_index(int k) const {
    unsigned long long idx = 0;
    for (size_t i = colors.size(); i-- > 0;) idx = idx * k + (colors[i] - 1);
    return idx;
  }
};

namespace detail {

// Message at v: vector over colors c of the total weight of colorings of
// the subtree below v with v colored c, edges to children included.
inline std::vector<Rational> subtree_message(const FiniteTree& t, int v,
                                             const std::vector<int>& pinned,
                                             const PottsParams& p) {
  std::vector<Rational> msg(p.k, Rational(0));
  if (pinned[v] > 0) {
    msg[pinned[v] - 1] = 1;
  } else {
    std::fill(msg.begin(), msg.end(), Rational(1));
  }
  for (int child : t.children[v]) {
    std::vector<Rational> cm = subtree_message(t, child, pinned, p);
    Rational total(0);
    for (const Rational& z : cm) total += z;
    for (int c = 0; c < p.k; ++c) {
      // Edge (v, child) contributes w when monochromatic.
      Rational factor = total + (p.w - 1) * cm[c];
      msg[c] *= factor;
    }
  }
  return msg;
}

inline std::vector<int> pin_boundary(const FiniteTree& t, const BoundaryCondition& tau) {
  if (tau.colors.size() != t.boundary.size())
    throw std::invalid_argument("boundary condition not total");
  std::vector<int> pinned(t.num_vertices(), 0);
  for (size_t i = 0; i < t.boundary.size(); ++i) pinned[t.boundary[i]] = tau.colors[i];
  return pinned;
}

// Full enumeration over free-vertex colorings; cross-check for the DP.
inline Rational enumerate_partition_function(const FiniteTree& t, const std::vector<int>& pinned,
                                             const PottsParams& p) {
  std::vector<int> free_vs;
  for (int v = 0; v < t.num_vertices(); ++v)
    if (pinned[v] == 0) free_vs.push_back(v);
  if (free_vs.size() > 12) throw std::invalid_argument("enumeration limited to 12 free vertices");
  std::vector<int> color(pinned);
  Rational total(0);
  unsigned long long count = 1;
  for (size_t i = 0; i < free_vs.size(); ++i) count *= p.k;
  for (unsigned long long idx = 0; idx < count; ++idx) {
    unsigned long long rest = idx;
    for (int v : free_vs) {
      color[v] = static_cast<int>(rest % p.k) + 1;
      rest /= p.k;
    }
    int mono = 0;
    for (int v = 1; v < t.num_vertices(); ++v)
      if (color[v] == color[t.parent[v]]) ++mono;
    total += pow_int(p.w, mono);
  }
  return total;
}

}  // namespace detail

/// Z with the boundary pinned to tau and the root pinned to root_color,
/// exact, by leaf-to-root dynamic programming.
inline Rational restricted_partition_function(const FiniteTree& t, const BoundaryCondition& tau,
                                              int root_color, const PottsParams& p) {
  if (root_color < 1 || root_color > p.k) throw std::out_of_range("color index");
  std::vector<int> pinned = detail::pin_boundary(t, tau);
  if (pinned[t.root()] != 0) {
    // Degenerate n=0 plain tree: the root is the boundary.
    return pinned[t.root()] == root_color ? Rational(1) : Rational(0);
  }
  std::vector<Rational> msg = detail::subtree_message(t, t.root(), pinned, p);
  return msg[root_color - 1];
}

/// Same quantity by full enumeration; only valid on small trees.
inline Rational restricted_partition_function_enum(const FiniteTree& t,
                                                   const BoundaryCondition& tau, int root_color,
                                                   const PottsParams& p) {
  std::vector<int> pinned = detail::pin_boundary(t, tau);
  if (pinned[t.root()] != 0)
    return pinned[t.root()] == root_color ? Rational(1) : Rational(0);
  pinned[t.root()] = root_color;
  return detail::enumerate_partition_function(t, pinned, p);
}

/// Root ratio vector (Z_1/Z_k, ..., Z_{k-1}/Z_k), exact.
inline RatioVec<Rational> ratios_bruteforce(const FiniteTree& t, const BoundaryCondition& tau,
                                            const PottsParams& p) {
  std::vector<int> pinned = detail::pin_boundary(t, tau);
  if (pinned[t.root()] != 0) throw std::invalid_argument("root must be free for ratios");
  std::vector<Rational> msg = detail::subtree_message(t, t.root(), pinned, p);
  if (msg[p.k - 1] == 0) throw std::logic_error("Z_k vanished with w > 0");
  RatioVec<Rational> r;
  for (int i = 0; i < p.k - 1; ++i) r.push_back(msg[i] / msg[p.k - 1]);
  return r;
}

/// Root color distribution given tau, exact; sums to 1.
inline std::vector<Rational> root_marginals(const FiniteTree& t, const BoundaryCondition& tau,
                                            const PottsParams& p) {
  std::vector<int> pinned = detail::pin_boundary(t, tau);
  std::vector<Rational> msg;
  if (pinned[t.root()] != 0) {
    msg.assign(p.k, Rational(0));
    msg[pinned[t.root()] - 1] = 1;
  } else {
    msg = detail::subtree_message(t, t.root(), pinned, p);
  }
  Rational total(0);
  for (const Rational& z : msg) total += z;
  for (Rational& z : msg) z /= total;
  return msg;
}

struct DeviationResult {
  Rational max_deviation;
  BoundaryCondition argmax;
  unsigned long long boundaries_checked = 0;
  bool exhaustive = true;
};

namespace detail {

// Shared sweep over boundary conditions: exhaustive when the boundary has
// at most `guard` vertices, otherwise seed-controlled uniform sampling.
template <class Visit>
void sweep_boundaries(const FiniteTree& t, int k, bool allow_sampling, long samples, uint64_t seed,
                      bool& exhaustive, Visit visit) {
  size_t leaves = t.boundary.size();
  if (leaves <= 10) {
    exhaustive = true;
    unsigned long long count = 1;
    for (size_t i = 0; i < leaves; ++i) count *= k;
    for (unsigned long long idx = 0; idx < count; ++idx)
      visit(BoundaryCondition::from_index(t, k, idx));
    return;
  }
  if (!allow_sampling)
    throw std::invalid_argument("boundary too large for exhaustive enumeration; enable sampling");
  exhaustive = false;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> color(1, k);
  for (long s = 0; s < samples; ++s) {
    BoundaryCondition tau;
    tau.colors.resize(leaves);
    for (auto& c : tau.colors) c = color(rng);
    visit(tau);
  }
}

}  // namespace detail

/// Worst-case root-marginal deviation max_{tau,c} |Pr(root=c|tau) - 1/k|
/// over the plain depth-n tree, with a witness boundary condition.
inline DeviationResult worst_case_deviation(int n, const PottsParams& p, bool allow_sampling = false,
                                            long samples = 1000, uint64_t seed = 1) {
  FiniteTree t = FiniteTree::make(p.d, n, /*hat=*/false);
  DeviationResult res{Rational(-1), BoundaryCondition{}, 0, true};
  Rational inv_k = make_rational(1, p.k);
  detail::sweep_boundaries(t, p.k, allow_sampling, samples, seed, res.exhaustive,
                           [&](const BoundaryCondition& tau) {
                             std::vector<Rational> m = root_marginals(t, tau, p);
                             for (const Rational& pr : m) {
                               Rational dev = abs(pr - inv_k);
                               if (dev > res.max_deviation) {
                                 res.max_deviation = dev;
                                 res.argmax = tau;
                               }
                             }
                             ++res.boundaries_checked;
                           });
  return res;
}

struct RegionSweepResult {
  bool all_inside = true;
  std::optional<BoundaryCondition> first_violation;
  unsigned long long boundaries_checked = 0;
  bool exhaustive = true;
};

/// Checks that the hat-tree root ratio lies in the region for every (or a
/// sample of) boundary condition(s). A verdict other than certified-Inside
/// counts as a violation, keeping the check conservative.
inline RegionSweepResult all_ratios_in_region(int n, const PottsParams& p, const RegionParams& region,
                                              bool allow_sampling = false, long samples = 1000,
                                              uint64_t seed = 1) {
  FiniteTree t = FiniteTree::make(p.d, n, /*hat=*/true);
  RegionSweepResult res;
  detail::sweep_boundaries(t, p.k, allow_sampling, samples, seed, res.exhaustive,
                           [&](const BoundaryCondition& tau) {
                             ++res.boundaries_checked;
                             if (!res.all_inside) return;
                             RatioVec<Rational> r = ratios_bruteforce(t, tau, p);
                             if (region_membership(r, region) != Membership::Inside) {
                               res.all_inside = false;
                               res.first_violation = tau;
                             }
                           });
  return res;
}

/// CSV dump: one row per boundary condition with its base-k index, ratio
/// entries, and root marginals.
inline std::string boundary_sweep_csv(const FiniteTree& t, const PottsParams& p,
                                      bool allow_sampling = false, long samples = 1000,
                                      uint64_t seed = 1) {
  std::ostringstream os;
  os << "tau_index";
  for (int i = 1; i < p.k; ++i) os << ",ratio_" << i;
  for (int c = 1; c <= p.k; ++c) os << ",marginal_" << c;
  os << "\n";
  bool exhaustive = true;
  detail::sweep_boundaries(t, p.k, allow_sampling, samples, seed, exhaustive,
                           [&](const BoundaryCondition& tau) {
                             os << tau.to_index(p.k);
                             for (const Rational& r : ratios_bruteforce(t, tau, p))
                               os << "," << to_string(r);
                             for (const Rational& m : root_marginals(t, tau, p))
                               os << "," << to_string(m);
                             os << "\n";
                           });
  return os.str();
}

}  // namespace potts

#endif  // POTTS_BRUTE_FORCE_HPP
