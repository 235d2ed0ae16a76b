#include <random>
#include <vector>

#include "doctest.h"
#include "ecfuzz/curve.hpp"
#include "helpers.hpp"

using namespace ecfuzz;
using testutil::small_base;
using testutil::small_curve;

TEST_CASE("curve construction checks the discriminant") {
  PrimeField f = make_field(23);
  CHECK_NOTHROW(make_curve(f.element(2), f.element(5)));
  CHECK_NOTHROW(make_curve(f.element(-3), f.element(0)));   // 4*(-27) = -108 != 0 mod 23
  CHECK_THROWS_AS(make_curve(f.element(0), f.element(0)), SingularCurve);
  CHECK_THROWS_AS(make_curve(f.element(-3), f.element(2)), SingularCurve);  // 4a^3+27b^2 = 0
}

TEST_CASE("point membership") {
  CurveParams e = small_curve();
  PrimeField f = e.field();
  CHECK(on_curve(small_base(), e));
  CHECK(on_curve(CurvePoint::infinity(), e));
  CHECK_FALSE(on_curve(CurvePoint(f.element(5), f.element(6)), e));
  CHECK_FALSE(on_curve(CurvePoint(f.element(0), f.element(0)), e));
}

TEST_CASE("negation mirrors y") {
  CurveParams e = small_curve();
  PrimeField f = e.field();
  CurvePoint g = small_base();
  CurvePoint ng = negate(g);
  CHECK(ng.x() == f.element(5));
  CHECK(ng.y() == f.element(18));
  CHECK(on_curve(ng, e));
  CHECK(negate(CurvePoint::infinity()).is_infinity());
  CHECK(negate(negate(g)) == g);
}

TEST_CASE("small-curve multiples match enumerated values") {
  CurveParams e = small_curve();
  PrimeField f = e.field();
  CurvePoint g = small_base();

  auto pt = [&](long x, long y) { return CurvePoint(f.element(x), f.element(y)); };

  CurvePoint g2 = point_double(g, e);
  CHECK(g2 == pt(21, 19));
  CurvePoint g3 = point_add(g, g2, e);
  CHECK(g3 == pt(1, 10));
  CHECK(point_add(g2, g3, e) == pt(10, 17));  // 5G

  // walk to 11G and 32G
  CurvePoint acc = g;
  for (int i = 1; i < 11; ++i) acc = point_add(acc, g, e);
  CHECK(acc == pt(4, 13));  // 11G
  for (int i = 11; i < 32; ++i) acc = point_add(acc, g, e);
  CHECK(acc == pt(5, 18));  // 32G = -G
  CHECK(point_add(acc, g, e).is_infinity());       // 33G = O
  CHECK(point_add(point_add(acc, g, e), g, e) == g);  // 34G = G
}

TEST_CASE("identity and inverse cases") {
  CurveParams e = small_curve();
  CurvePoint g = small_base();
  CurvePoint o = CurvePoint::infinity();
  CHECK(point_add(g, o, e) == g);
  CHECK(point_add(o, g, e) == g);
  CHECK(point_add(o, o, e).is_infinity());
  CHECK(point_add(g, negate(g), e).is_infinity());
  CHECK(point_double(o, e).is_infinity());
}

TEST_CASE("doubling a point with y = 0 gives infinity") {
  // y^2 = x^3 - x over GF(23) has the 2-torsion point (0,0)
  PrimeField f = make_field(23);
  CurveParams e = make_curve(f.element(-1), f.element(0));
  CurvePoint two_torsion(f.element(0), f.element(0));
  REQUIRE(on_curve(two_torsion, e));
  CHECK(point_double(two_torsion, e).is_infinity());
  CHECK(negate(two_torsion) == two_torsion);
  CHECK(point_add(two_torsion, two_torsion, e).is_infinity());
}

TEST_CASE("closure and commutativity on random points") {
  CurveParams e = small_curve();
  CurvePoint g = small_base();

  // the full subgroup, including infinity
  std::vector<CurvePoint> points{CurvePoint::infinity()};
  CurvePoint acc = g;
  while (!acc.is_infinity()) {
    points.push_back(acc);
    acc = point_add(acc, g, e);
  }
  REQUIRE(points.size() == 33);

  std::mt19937_64 rng(3);
  for (int i = 0; i < 500; ++i) {
    const CurvePoint& p = points[rng() % points.size()];
    const CurvePoint& q = points[rng() % points.size()];
    CurvePoint s = point_add(p, q, e);
    CHECK(on_curve(s, e));
    CHECK(s == point_add(q, p, e));
  }
}

TEST_CASE("strict mode validates inputs") {
  CurveParams e = small_curve().with_strict(true);
  PrimeField f = e.field();
  CurvePoint g = small_base();
  CurvePoint off(f.element(5), f.element(6));
  CHECK_THROWS_AS(point_add(off, g, e), OffCurve);
  CHECK_THROWS_AS(point_add(g, off, e), OffCurve);
  CHECK_THROWS_AS(point_double(off, e), OffCurve);
  CHECK_NOTHROW(point_add(g, g, e));
  CHECK_FALSE(small_curve().strict());
  CHECK(e.strict());
}
