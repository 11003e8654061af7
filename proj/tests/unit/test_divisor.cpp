#include "doctest.h"
#include "helpers.hpp"

using namespace th;

TEST_CASE("divisors of small multiples") {
  const auto& E = sample();
  auto P = sampleP();
  CHECK(divisor_of_point(E, P).empty());
  CHECK(divisor_of_point(E, scalar_mul(E, 2, P)).empty());
  CHECK(divisor_of_point(E, scalar_mul(E, 3, P)).to_string() == "[t + 2]");
  CHECK(divisor_of_point(E, scalar_mul(E, 4, P)).to_string() == "2*[t + 1]");
  CHECK(divisor_of_point(E, scalar_mul(E, 5, P)).to_string() == "[t^4 + t^3 + 3*t^2 + 1]");
  CHECK(divisor_of_point(E, scalar_mul(E, 6, P)).to_string() == "[t + 2] + [t^4 + 2*t^2 + 2*t + 1]");
  CHECK(divisor_of_point(curve(F7, "0", "t^2"), pt(F7, "0", "t")).empty());
  CHECK_THROWS_AS(divisor_of_point(E, Point<PrimeField>::zero()), DomainError);
}

TEST_CASE("divisor degree") {
  EffDivisor<PrimeField> D;
  CHECK(divisor_degree(D) == 0);
  D.finite.emplace_back(place(F3, "t^2 + 1"), 2);
  D.infinity_mult = 1;
  CHECK(divisor_degree(D) == 5);
  CHECK(D.to_string() == "2*[t^2 + 1] + [inf]");
  CHECK(D.order_at(place(F3, "t^2 + 1")) == 2);
  CHECK(D.order_at(place(F3, "t")) == 0);
}

TEST_CASE("characteristic 3 needs support-only mode") {
  auto E = curve(F3, "(t^3+t)^2", "0");
  auto R = pt(F3, "t*(t^3+t)", "(t^3+t)^2");
  REQUIRE(on_curve(E, R));
  CHECK_THROWS_AS(divisor_of_point(E, R, DivisorMode::exact), DomainError);
  CHECK(divisor_of_point(E, scalar_mul(E, 3, R), DivisorMode::support_only).support_only);
}

TEST_CASE("degrees along the sample sequence") {
  auto seq = divisor_sequence(sample(), sampleP(), 12, Point<PrimeField>::zero(), DivisorMode::exact, 3);
  const long want[] = {0, 0, 1, 2, 4, 5, 8, 10, 13, 16, 20, 23};
  for (std::size_t i = 0; i < 12; ++i) CHECK(seq[i]->degree() == want[i]);
  // parallel and serial agree
  auto serial = divisor_sequence(sample(), sampleP(), 12, Point<PrimeField>::zero(), DivisorMode::exact, 1);
  for (std::size_t i = 0; i < 12; ++i) CHECK(*seq[i] == *serial[i]);
}

TEST_CASE("apparition index") {
  auto a = apparition_index(sample(), sampleP(), place(F5, "t + 1"), 20);
  REQUIRE(a);
  CHECK(a->m == 4);
  CHECK_FALSE(apparition_index(sample(), sampleP(), place(F5, "t + 1"), 3));
}

TEST_CASE("divisibility") {
  CHECK(divisibility_check(sample(), sampleP(), 1, 1).empty());
  CHECK(divisibility_check(sample(), sampleP(), 20, 2).empty());
  CHECK(divisibility_check(curve(QQ, "-t^2", "t^2"), pt(QQ, "t", "t"), 8, 2).empty());
}

TEST_CASE("Zsigmondy scan") {
  ScanOptions opt;
  opt.n_max = 16;
  opt.jobs = 2;
  auto s = zsigmondy_scan(sample(), sampleP(), Point<PrimeField>::zero(), opt);
  REQUIRE(s.records.size() == 16);
  CHECK(s.last_nonprimitive == 2);
  CHECK(s.q_order == 1);
  CHECK_FALSE(s.records[0].has_primitive);
  CHECK(s.records[2].new_places == std::vector<std::string>{"t + 2"});
  for (const auto& r : s.records) {
    CHECK(r.has_primitive == !r.new_support.empty());
    CHECK(r.degree == r.divisor->degree());
  }
  auto res = nonprimitive_coverage(sample(), sampleP(), Point<PrimeField>::zero(), 1, s, 16);
  for (const auto& e : res) CHECK(e.ok());

  ScanOptions bad;
  CHECK_THROWS_AS(zsigmondy_scan(sample(), Point<PrimeField>::zero(), Point<PrimeField>::zero(), bad),
                  DomainError);
}

TEST_CASE("scan over Q(t)") {
  ScanOptions opt;
  opt.n_max = 8;
  auto s = zsigmondy_scan(curve(QQ, "-t^2", "t^2"), pt(QQ, "t", "t"), Point<RationalField>::zero(), opt);
  CHECK(s.records.size() == 8);
  CHECK(s.records.back().has_primitive);
}
