#include "doctest.h"
#include "helpers.hpp"
#include "zsigff/growth.hpp"

using namespace th;

TEST_CASE("order at a place without factoring") {
  auto R = scalar_mul(sample(), 6, sampleP());
  auto D = divisor_of_point(sample(), R);
  for (const char* v : {"t + 2", "t^4 + 2*t^2 + 2*t + 1", "t + 1", "inf"})
    CHECK(divisor_order_at(sample(), R, place(F5, v)) == D.order_at(place(F5, v)));
}

TEST_CASE("p-adic helpers") {
  CHECK(ord_p(50, 5) == 2);
  CHECK(ord_p(7, 5) == 0);
  CHECK(ipow(5, 3) == 125);
}

TEST_CASE("tame growth law at t + 2") {
  GrowthOptions opt;
  opt.n_max = 12;
  opt.indices = {1, 2, 3, 4, 6, 15, 16, 30};
  auto rep = growth_law_verify(sample(), sampleP(), place(F5, "t + 2"), opt);
  CHECK(rep.m == 3);
  CHECK(rep.h == 0);
  CHECK(rep.mismatches() == 0);
  for (const auto& r : rep.rows) {
    if (r.n % 3 != 0) CHECK(r.branch == "i");
    if (r.n == 15) CHECK(r.expected == 5);
  }
}

TEST_CASE("characteristic zero growth is constant on multiples") {
  GrowthOptions opt;
  opt.n_max = 8;
  auto E = curve(QQ, "-t^2", "t^2");
  auto seq = divisor_sequence(E, pt(QQ, "t", "t"), 4, Point<RationalField>::zero(), DivisorMode::exact, 1);
  REQUIRE(!seq[3]->finite.empty());
  auto v = seq[3]->finite.front().first;
  auto rep = growth_law_verify(E, pt(QQ, "t", "t"), v, opt);
  CHECK(rep.mismatches() == 0);
  bool saw_ii = false;
  for (const auto& r : rep.rows) saw_ii |= r.branch == "ii";
  CHECK(saw_ii);
}

TEST_CASE("wild place") {
  auto E = curve(F5, "t^5", "1");
  auto P = pt(F5, "0", "1");
  CHECK(h_E_gamma(E, place(F5, "t")) == 5);
  GrowthOptions opt;
  opt.n_max = 6;
  opt.indices = {3, 6, 15, 30, 75};
  auto rep = growth_law_verify(E, P, place(F5, "t"), opt);
  CHECK(rep.m == 3);
  CHECK(rep.mismatches() == 0);
  REQUIRE(rep.delta);
  CHECK(rep.delta->observed.at(0) == 0);
  CHECK(rep.delta->observed.at(1) == 5);
  CHECK(rep.delta->observed.at(2) == 30);
}

TEST_CASE("saturation index") {
  CHECK(saturation_index({{0, 0}}, 5, 5) == 0);
  CHECK(saturation_index({{0, 0}, {1, 5}, {2, 30}}, 5, 5) == 0);
  CHECK(saturation_index({{0, 0}, {1, 3}, {2, 20}}, 5, 5) == 1);
}

TEST_CASE("height gap and canonical estimate") {
  auto rows = height_gap_profile(sample(), sampleP(), 20);
  for (const auto& r : rows) CHECK(std::labs(r.gap) <= 2);
  auto est = canonical_height_estimate(sample(), sampleP(), 16, 2);
  CHECK(est.fit_limit == 4);
  CHECK(est.validated());
  CHECK_THROWS_AS(canonical_height_estimate(curve(F7, "0", "t^2"), pt(F7, "0", "t"), 16), DomainError);
}

TEST_CASE("quasi-parallelogram") {
  const auto& E = sample();
  auto P = sampleP(), Z = Point<PrimeField>::zero();
  CHECK(quasi_parallelogram_check(E, {{P, Z}}) == -naive_height(P));
  CHECK(quasi_parallelogram_check(E, {{P, negate(P)}}) == -4 * naive_height(P));
  std::vector<std::pair<Point<PrimeField>, Point<PrimeField>>> sample_pairs;
  for (int a = 1; a <= 4; ++a)
    for (int b = 1; b <= 4; ++b) sample_pairs.emplace_back(scalar_mul(E, a, P), scalar_mul(E, b, P));
  CHECK(quasi_parallelogram_check(E, sample_pairs) <= 4);
}

TEST_CASE("linear bound") {
  auto lb = linear_bound_check(sample(), sampleP(), place(F5, "t + 2"), 12);
  CHECK(lb.max_ratio > 0);
}
