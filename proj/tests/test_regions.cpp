#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <random>
#include <sstream>

#include "doctest.h"
#include "potts/certify.hpp"
#include "potts/regions.hpp"

using namespace potts;

namespace {

std::mt19937_64 rng(20240813);

Rational random_coord() {
  // Log-space coordinate scale comparable to log(2) regions.
  std::uniform_int_distribution<long> num(-300, 300);
  return make_rational(num(rng), 128);
}

std::vector<std::pair<int, int>> canon(const LogVertex& v) { return v.comps; }

}  // namespace

TEST_CASE("region parameter validation") {
  CHECK_THROWS(RegionParams::from_rational(5, Rational(2), Rational(2)));
  CHECK_THROWS(RegionParams::from_rational(3, Rational(1), Rational(2)));
  RegionParams r = RegionParams::from_rational(3, Rational(2), Rational(3));
  CHECK(r.dual_valid());  // sqrt(3) <= 2 <= 9
  CHECK(!RegionParams::from_rational(3, Rational(8), Rational(2)).dual_valid());  // a > b^2
  CHECK(!RegionParams::from_rational(4, make_rational(3, 2), Rational(2)).dual_valid());  // a < b
  RegionParams p = r.powered(3);
  CHECK(p.a.contains(Rational(8)));
  CHECK(p.b.contains(Rational(27)));
}

TEST_CASE("membership basics") {
  RegionParams r = RegionParams::from_rational(3, Rational(2), Rational(2));
  CHECK(region_membership(RatioVec<Rational>{Rational(1), Rational(1)}, r) == Membership::Inside);
  // (1/a, 1) is a polytope vertex.
  CHECK(region_membership(RatioVec<Rational>{make_rational(1, 2), Rational(1)}, r) ==
        Membership::BoundaryOrUndecided);
  CHECK(region_membership(RatioVec<Rational>{Rational(5), Rational(1)}, r) == Membership::Outside);
  CHECK_THROWS(region_membership(RatioVec<Rational>{Rational(1)}, r));

  RegionParams r4 = RegionParams::from_rational(4, Rational(2), Rational(2));
  CHECK(region_membership(RatioVec<Rational>{Rational(1), Rational(1), Rational(1)}, r4) ==
        Membership::Inside);
  CHECK(region_membership(RatioVec<Rational>{Rational(5), Rational(5), Rational(5)}, r4) ==
        Membership::Outside);
  // Nonpositive coordinates can never be certified.
  CHECK(region_membership(std::vector<Interval>{Interval::exact(0L, 128),
                                                Interval::exact(1L, 128)},
                          r) == Membership::BoundaryOrUndecided);
}

TEST_CASE("membership falls back to the union test when the dual form is invalid") {
  RegionParams r = RegionParams::from_rational(3, Rational(8), Rational(2));  // a = b^3
  CHECK(!r.dual_valid());
  // The all-ones point sits on the sector boundaries, so the union test can
  // only report it as undecided -- but never as outside.
  CHECK(region_membership(RatioVec<Rational>{Rational(1), Rational(1)}, r) != Membership::Outside);
  // A point strictly inside one sector piece is certified.
  CHECK(region_membership(RatioVec<Rational>{make_rational(1, 2), make_rational(5, 4)}, r) ==
        Membership::Inside);
  CHECK(region_membership(RatioVec<Rational>{Rational(100), Rational(1)}, r) ==
        Membership::Outside);
  CHECK(!vertices_satisfy_halfspaces(r));
}

TEST_CASE("vertex sets") {
  CHECK(region_vertices_symbolic(3).size() == 7);
  CHECK(region_vertices_symbolic(4).size() == 15);
  CHECK_THROWS(region_vertices_symbolic(5));
  RegionParams r = RegionParams::from_rational(3, Rational(2), Rational(3));
  auto verts = region_vertices(r);
  CHECK(verts.size() == 7);
  // First vertex is the all-ones point (origin in log coordinates).
  CHECK(verts[0][0].contains(Rational(0)));
  CHECK(verts[0][1].contains(Rational(0)));

  // The symbolic vertex set is closed under the full color action.
  for (int k : {3, 4}) {
    std::vector<std::vector<std::pair<int, int>>> base;
    for (const LogVertex& v : region_vertices_symbolic(k)) base.push_back(canon(v));
    std::sort(base.begin(), base.end());
    for (const Permutation& sigma : Permutation::all(k)) {
      std::vector<std::vector<std::pair<int, int>>> image;
      for (const LogVertex& v : region_vertices_symbolic(k))
        image.push_back(canon(detail::perm_act_symbolic(sigma, v)));
      std::sort(image.begin(), image.end());
      CHECK(image == base);
    }
  }
}

TEST_CASE("vertices satisfy all transformed half-spaces when the dual form is valid") {
  for (int k : {3, 4}) {
    CHECK(vertices_satisfy_halfspaces(RegionParams::from_rational(k, Rational(2), Rational(2))));
    CHECK(vertices_satisfy_halfspaces(RegionParams::from_rational(k, Rational(3), Rational(2))));
    CHECK(vertices_satisfy_halfspaces(
        RegionParams::from_rational(k, make_rational(7, 2), Rational(2))));
  }
}

TEST_CASE("union and intersection membership never contradict") {
  for (int k : {3, 4}) {
    ConvexityReport rep =
        verify_log_convexity(RegionParams::from_rational(k, Rational(2), Rational(2)), 500, 11);
    CHECK(rep.ok());
    CHECK(rep.samples_checked == 500);
  }
}

TEST_CASE("slice boundary curve") {
  RegionParams r = RegionParams::from_rational(3, Rational(2), Rational(3));
  CHECK(slice_curve(r, Interval::exact(1L, 128)).contains(Rational(3)));
  // l(1/a) = b * a^(-log b / log a) = b / b = 1.
  Interval at_inv_a = slice_curve(r, Interval::exact(make_rational(1, 2), 128));
  CHECK(at_inv_a.contains(Rational(1)));
  // Exponent 1 when a = b: the curve is the line b*x.
  RegionParams eq = RegionParams::from_rational(3, Rational(2), Rational(2));
  CHECK(slice_curve(eq, Interval::exact(make_rational(3, 4), 128)).contains(make_rational(3, 2)));
}

TEST_CASE("slice membership") {
  RegionParams r = RegionParams::from_rational(3, Rational(2), Rational(2));
  std::vector<Interval> in{Interval::exact(make_rational(3, 4), 128),
                           Interval::exact(make_rational(9, 8), 128)};
  CHECK(slice_membership(r, SliceId::K3_23, in) == Membership::Inside);
  std::vector<Interval> out{Interval::exact(make_rational(3, 4), 128),
                            Interval::exact(Rational(3), 128)};
  CHECK(slice_membership(r, SliceId::K3_23, out) == Membership::Outside);
  // Same point with the roles of x and y swapped lies in the mirrored slice.
  std::vector<Interval> mirrored{Interval::exact(make_rational(9, 8), 128),
                                 Interval::exact(make_rational(3, 4), 128)};
  CHECK(slice_membership(r, SliceId::K3_123, mirrored) == Membership::Inside);

  RegionParams r4 = RegionParams::from_rational(4, Rational(2), Rational(2));
  std::vector<Interval> in4{Interval::exact(make_rational(3, 4), 128),
                            Interval::exact(make_rational(9, 8), 128),
                            Interval::exact(make_rational(5, 4), 128)};
  CHECK(slice_membership(r4, SliceId::K4_243, in4) == Membership::Inside);
}

TEST_CASE("tangent simplex over-approximation") {
  RegionParams eq = RegionParams::from_rational(3, Rational(2), Rational(2));
  auto verts = simplex_over_approx(eq);
  REQUIRE(verts.size() == 3);
  CHECK(verts[0][0].contains(Rational(1)));
  CHECK(verts[1][0].contains(Rational(2)));
  // With a = b the tangent vertex is exactly (1, 1/b).
  CHECK(verts[2][1].contains(make_rational(1, 2)));

  RegionParams r4 = RegionParams::from_rational(4, Rational(3), Rational(2));
  CHECK(simplex_over_approx(r4).size() == 4);

  CHECK_THROWS(simplex_over_approx(RegionParams::from_rational(3, Rational(2), Rational(3))));
}

TEST_CASE("tangent simplex contains the slice") {
  // Random points certified inside the sorted slice must lie inside the
  // simplex hull: check via the three (resp. four) supporting half-spaces
  // indirectly by verifying the tangent bound dominates the curve.
  RegionParams r = RegionParams::from_rational(3, Rational(3), Rational(2));
  Interval one = Interval::exact(1L, 128);
  Interval tangent = one - (r.b - one) * r.a_hat() / (r.b * r.b_hat());
  for (long i = 1; i < 20; ++i) {
    // Points y in [tangent, 1]; the curve x = l^{ -1 }(...) stays right of
    // the chord, i.e. the slice lies inside the triangle. Equivalent check:
    // l(x) <= chord value at x for x in [1, b].
    Rational x = 1 + make_rational(i, 20);
    Interval lx = slice_curve(r, Interval::exact(x, 128));
    // Chord through (1, b) and (b, 1) ... the relevant edge joins (b, 1)
    // and (1, tangent): in the K3_23 slice the curve bound is y <= l(x),
    // concavity gives l(x) <= l(1) + l'(1)(x - 1) = b + (b log b/log a)(x-1).
    Interval tangent_line =
        r.b + r.b * r.b_hat() / r.a_hat() * (Interval::exact(x, 128) - one);
    CHECK(!tangent_line.certainly_less(lx));
  }
}

TEST_CASE("membership commutes with powering") {
  RegionParams r = RegionParams::from_rational(3, Rational(2), Rational(2));
  RegionParams p = r.powered(2);
  int decided = 0;
  for (int trial = 0; trial < 200; ++trial) {
    Rational x = 1 + random_coord() / 4, y = 1 + random_coord() / 4;
    if (x <= 0 || y <= 0) continue;
    RatioVec<Rational> pt{x, y};
    Membership m1 = region_membership(pt, r);
    Membership m2 = region_membership(pow_entries(pt, 2), p);
    if (m1 == Membership::BoundaryOrUndecided || m2 == Membership::BoundaryOrUndecided) continue;
    CHECK(m1 == m2);
    ++decided;
  }
  CHECK(decided > 100);
}

TEST_CASE("membership is invariant under the color action") {
  for (int k : {3, 4}) {
    RegionParams r = RegionParams::from_rational(k, Rational(2), Rational(2));
    for (int trial = 0; trial < 50; ++trial) {
      RatioVec<Rational> x;
      for (int i = 1; i < k; ++i) {
        Rational c = 1 + random_coord() / 4;
        x.push_back(c > 0 ? c : make_rational(1, 2));
      }
      Membership base = region_membership(x, r);
      for (const Permutation& sigma : Permutation::all(k))
        CHECK(region_membership(perm_act(sigma, x), r) == base);
    }
  }
}

TEST_CASE("inner hull vertices are not outside") {
  RegionParams r = RegionParams::from_rational(3, Rational(2), Rational(3));
  std::vector<RatioVec<Rational>> inner{{Rational(1), Rational(1)},
                                        {make_rational(1, 2), Rational(1)},
                                        {Rational(1), Rational(3)}};
  for (const auto& v : inner) CHECK(region_membership(v, r) != Membership::Outside);
  RegionParams r4 = RegionParams::from_rational(4, Rational(2), Rational(3));
  std::vector<RatioVec<Rational>> inner4{{Rational(1), Rational(1), Rational(1)},
                                         {make_rational(1, 2), Rational(1), Rational(1)},
                                         {Rational(1), Rational(3), Rational(3)},
                                         {Rational(1), Rational(1), Rational(3)}};
  for (const auto& v : inner4) CHECK(region_membership(v, r4) != Membership::Outside);
}

TEST_CASE("containment certification") {
  PottsParams p(3, 3, make_rational(1, 4));
  Rational b = make_rational(21, 20);
  RegionParams src = midpoint_region(b, p.k, p.d, p.w, 128);
  CHECK(containment_check(src, src, p) == Containment::Certified);
  // A much smaller target cannot absorb the image of the larger source.
  RegionParams tiny = midpoint_region(make_rational(257, 256), p.k, p.d, p.w, 128);
  CHECK(containment_check(src, tiny, p, 256) == Containment::NotCertified);
}

TEST_CASE("certified containment is confirmed by sampled exact images") {
  PottsParams p(3, 3, make_rational(1, 4));
  Rational b = make_rational(21, 20);
  RegionParams src = midpoint_region(b, p.k, p.d, p.w, 128);
  REQUIRE(containment_check(src, src, p) == Containment::Certified);
  int confirmed = 0;
  std::uniform_int_distribution<long> num(-50, 50);
  for (int trial = 0; trial < 5000 && confirmed < 50; ++trial) {
    RatioVec<Rational> x{1 + make_rational(num(rng), 1024), 1 + make_rational(num(rng), 1024)};
    if (region_membership(x, src) != Membership::Inside) continue;
    CHECK(region_membership(map_F(x, p.w, p.d), src) == Membership::Inside);
    ++confirmed;
  }
  CHECK(confirmed == 50);
}

TEST_CASE("CSV and SVG export") {
  RegionParams r = RegionParams::from_rational(3, Rational(2), Rational(3));
  std::string csv = region_csv(r);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "vertex,log_x1,log_x2");
  long rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 7);

  std::string svg = region_svg(r);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("<polygon") != std::string::npos);
  CHECK(region_svg(r) == svg);  // deterministic
  CHECK_THROWS(region_svg(RegionParams::from_rational(4, Rational(2), Rational(2))));
}
