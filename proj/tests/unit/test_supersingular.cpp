#include "doctest.h"
#include "helpers.hpp"

using namespace th;

TEST_CASE("supersingular constants") {
  CHECK(find_supersingular(3) == std::pair<std::uint64_t, std::uint64_t>{1, 0});
  CHECK(find_supersingular(5) == std::pair<std::uint64_t, std::uint64_t>{0, 1});
  CHECK(find_supersingular(7) == std::pair<std::uint64_t, std::uint64_t>{1, 0});
  CHECK(detail::constant_curve_supersingular(F7, 1, 0));
  CHECK_FALSE(detail::constant_curve_supersingular(F5, 1, 0));
}

TEST_CASE("torsion point of the twist") {
  auto d3 = make_demo(3);
  CHECK(d3.Q == pt(F3, "0", "0"));
  auto d5 = make_demo(5);
  CHECK(d5.Q == pt(F5, "-(t^3 + 1)", "0"));
  CHECK(make_demo(7).Q == pt(F7, "0", "0"));
  for (auto* d : {&d3, &d5}) {
    CHECK(on_curve(d->E, d->P));
    CHECK(on_curve(d->E, d->Q));
    CHECK(scalar_mul(d->E, 2, d->Q).is_zero());
  }
  CHECK_THROWS_AS(make_demo(4), DomainError);
}

TEST_CASE("Frobenius identity") {
  for (std::uint64_t p : {3ULL, 5ULL, 7ULL}) {
    auto d = make_demo(p);
    CHECK(frobenius_identity_check(d, 1, d.P));
    CHECK(frobenius_identity_check(d, 1, add(d.E, d.P, d.Q)));
  }
}

TEST_CASE("failure demonstration") {
  auto d = make_demo(5);
  auto rep = failure_demonstration(d, 3);
  CHECK(rep.ok());
  CHECK(rep.P_non_torsion);
  CHECK_FALSE(rep.constant_ordinary);
  REQUIRE(rep.levels.size() == 3);
  CHECK(rep.levels[0].has_primitive);
  CHECK_FALSE(rep.levels[1].has_primitive);
  CHECK(rep.levels[1].route == "both");
  CHECK(rep.levels[2].route == "frobenius");
  CHECK(failure_demonstration(d, 0).levels.empty());
  CHECK(failure_demonstration(make_demo(3), 2).ok());
}

TEST_CASE("Frobenius route agrees with the group law") {
  auto d = make_demo(5);
  auto PQ = add(d.E, d.P, d.Q);
  auto direct = divisor_of_point(d.E, add(d.E, scalar_mul(d.E, 5, d.P), d.Q));
  CHECK(frobenius_divisor(d, PQ.x(), 1) == direct);
}
