#include "doctest.h"
#include "helpers.hpp"

using namespace th;

TEST_CASE("curve construction") {
  CHECK_THROWS_AS(curve(F5, "0", "0"), DomainError);
  CHECK_THROWS_AS(curve(QQ, "-3*t^2", "2*t^3"), DomainError);
  CHECK_NOTHROW(sample());
  CHECK(sample().warnings().empty());
  CHECK_FALSE(curve(F5, "0", "t^3 + 1").warnings().empty());
}

TEST_CASE("group law on the sample curve") {
  const auto& E = sample();
  auto P = sampleP();
  auto Z = Point<PrimeField>::zero();
  CHECK(add(E, P, Z) == P);
  CHECK(add(E, P, negate(P)).is_zero());
  auto P2 = scalar_mul(E, 2, P);
  CHECK(P2 == pt(F5, "t^2 - 2*t", "-t^3 + 3*t^2 - t"));
  CHECK(on_curve(E, P2));
  CHECK(scalar_mul(E, 0, P).is_zero());
  CHECK(scalar_mul(E, -3, P) == negate(scalar_mul(E, 3, P)));
  CHECK_THROWS_AS(add(E, pt(F5, "t", "0"), P), DomainError);

  // associativity and repeated addition
  auto P3 = scalar_mul(E, 3, P), P5 = scalar_mul(E, 5, P);
  CHECK(add(E, add(E, P, P2), P5) == add(E, P, add(E, P2, P5)));
  Point<PrimeField> acc = Z;
  for (int n = 1; n <= 12; ++n) {
    acc = add(E, acc, P);
    CHECK(acc == scalar_mul(E, n, P));
  }
  CHECK(add(E, P2, P3) == P5);
}

TEST_CASE("small multiples of (0, b)") {
  auto E = curve(F7, "0", "t^2");
  auto Q = pt(F7, "0", "t");
  CHECK(scalar_mul(E, 2, Q) == pt(F7, "0", "-t"));
  CHECK(scalar_mul(E, 3, Q).is_zero());
}

TEST_CASE("j-invariant") {
  CHECK(j_invariant(curve(QQ, "-t^2", "t^2")) == R(QQ, "6912*t^2/(4*t^2 - 27)"));
  CHECK(j_invariant(sample()) == R(F5, "3*t^2/(t^2 + 2)"));
  CHECK_FALSE(is_isotrivial_j(sample()));
  CHECK(j_invariant(curve(F3, "(t^3+t)^2", "0")) == R(F3, "1728"));
  CHECK(is_isotrivial_j(curve(QQ, "0", "1")));
}

TEST_CASE("Hasse invariant") {
  CHECK(hasse_invariant(curve(F5, "1", "0")) == R(F5, "2"));
  CHECK(hasse_invariant(curve(F5, "0", "1")).is_zero());
  CHECK(hasse_invariant(sample()) == R(F5, "3*t^2"));
  CHECK(hasse_invariant(curve(F7, "0", "t^2")) == R(F7, "3*t^2"));
  CHECK(is_ordinary(sample()));
  CHECK_THROWS_AS(hasse_invariant(curve(QQ, "t", "1")), DomainError);
}

TEST_CASE("local models and defects") {
  const auto& E = sample();
  CHECK(local_model(E, place(F5, "t")).defect == 0);
  CHECK(local_model(E, Place<PrimeField>::infinity()).defect == -1);
  auto E3 = curve(F3, "(t^3 + t)^2", "0");
  CHECK(E3.defect(Place<PrimeField>::infinity()) == -2);
  // A = t^8 u^4 style: non-minimal at t
  auto E2 = curve(F7, "t^4*(t+1)", "t^6*(t+2)");
  auto lm = local_model(E2, place(F7, "t"));
  CHECK(lm.defect == 1);
  CHECK(lm.A_min == R(F7, "t + 1"));
  CHECK(lm.B_min == R(F7, "t + 2"));
  CHECK(detail::floor_div(-2, 4) == -1);
  CHECK(detail::floor_div(-6, 4) == -2);
}

TEST_CASE("h_E_gamma") {
  const auto& E = sample();
  CHECK(h_E_gamma(E, place(F5, "t")) == 2);
  CHECK(h_E_gamma(E, place(F5, "t - 1")) == 0);
  auto hd = hasse_data(E);
  CHECK(hd.order_at(place(F5, "t")) == 2);
  CHECK(hd.order_at(place(F5, "t + 3")) == 0);
}

TEST_CASE("h_E_gamma is invariant under twists by a place polynomial") {
  auto u = R(F5, "t + 1");
  auto E = sample();
  auto Et = Curve<PrimeField>(E.A() * u.pow(4), E.B() * u.pow(6));
  CHECK(hasse_invariant(Et) == hasse_invariant(E) * u.pow(4));
  for (const char* v : {"t", "t + 1", "t + 2", "inf"})
    CHECK(h_E_gamma(Et, place(F5, v)) == h_E_gamma(E, place(F5, v)));
}

TEST_CASE("torsion") {
  auto t1 = is_torsion(curve(F7, "0", "t^2"), pt(F7, "0", "t"));
  CHECK(t1.is_torsion());
  CHECK(t1.order == 3);
  auto t2 = is_torsion(curve(F3, "(t^3+t)^2", "0"), pt(F3, "0", "0"));
  CHECK(t2.is_torsion());
  CHECK(t2.order == 2);
  CHECK(is_torsion(sample(), sampleP()).is_non_torsion());
  CHECK(is_torsion(curve(QQ, "-t^2", "t^2"), pt(QQ, "t", "t")).is_non_torsion());
  CHECK(is_torsion(curve(QQ, "0", "t^2"), pt(QQ, "0", "t")).order == 3);
  CHECK(is_torsion(sample(), Point<PrimeField>::zero()).order == 1);
}

TEST_CASE("naive height") {
  CHECK(naive_height(Point<PrimeField>::zero()) == 0);
  CHECK(naive_height(sampleP()) == 1);
  CHECK(naive_height(scalar_mul(sample(), 2, sampleP())) == 2);
}
