#ifndef POTTS_PARAMS_HPP
#define POTTS_PARAMS_HPP

#include <stdexcept>

#include "potts/rational.hpp"

namespace potts {

/// Model parameters: k states on the infinite (d+1)-regular tree with
/// anti-ferromagnetic interaction weight w (exact rational, 0 < w < 1).
struct PottsParams {
  int k;
  int d;
  Rational w;

  PottsParams(int k_, int d_, Rational w_) : k(k_), d(d_), w(std::move(w_)) {
    if (k < 2 || k > 4) throw std::invalid_argument("k must be in {2,3,4}");
    if (d < 2) throw std::invalid_argument("d must be >= 2");
    if (w <= 0 || w >= 1) throw std::invalid_argument("w must satisfy 0 < w < 1");
  }

  /// Uniqueness threshold max(0, 1 - k/(d+1)), exact.
  Rational critical_weight() const { return critical_weight(k, d); }

  static Rational critical_weight(int k, int d) {
    Rational wc = Rational(1) - make_rational(k, d + 1);
    return wc > 0 ? wc : Rational(0);
  }
};

}  // namespace potts

#endif  // POTTS_PARAMS_HPP
