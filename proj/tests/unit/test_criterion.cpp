#include <cmath>
#include <numbers>

#include "doctest.h"
#include "zsigff/criterion.hpp"
#include "zsigff/errors.hpp"

using namespace zsigff::criterion;

TEST_CASE("divisor set") {
  CHECK(divisor_set(12, 2) == std::vector<long>{3});
  CHECK(divisor_set(1, 5).empty());
  CHECK(divisor_set(30, 1) == std::vector<long>{2, 3, 5, 6, 10, 15, 30});
}

TEST_CASE("s_sum") {
  CHECK(s_sum(12, 0, 2) == mpq_class(1, 9));
  CHECK(s_sum(1, 7, 2) == 0);
  CHECK(s_sum(25, 5, 2) == mpq_class(6, 25));
}

TEST_CASE("zeta(2) enclosure") {
  const long double z = std::numbers::pi_v<long double> * std::numbers::pi_v<long double> / 6;
  for (long M : {64L, 1024L, 65536L}) {
    auto e = zeta2_enclosure(M);
    CHECK(e.lower < e.upper);
    CHECK(e.lower.get_d() <= static_cast<double>(z));
    CHECK(e.upper.get_d() >= static_cast<double>(z));
  }
  CHECK(zeta2_enclosure(65536).upper - zeta2_enclosure(65536).lower <
        zeta2_enclosure(64).upper - zeta2_enclosure(64).lower);
}

TEST_CASE("closed bound") {
  auto e = closed_bound(0, 2);
  CHECK(e.below(mpq_class(1, 2)));
  CHECK(std::fabs(e.midpoint().get_d() - 0.3949) < 1e-3);
  CHECK(closed_bound(7, 3).at_least(mpq_class(1, 2)));
  CHECK(closed_bound(7, 4).below(mpq_class(1, 2)));
  CHECK_THROWS_AS(closed_bound(3, 2), zsigff::DomainError);
  CHECK_THROWS_AS(closed_bound(9, 2), zsigff::DomainError);
}

TEST_CASE("admissibility") {
  CHECK(pair_admissible(5, 1));
  CHECK(pair_admissible(5, 5));
  CHECK_FALSE(pair_admissible(5, 4));
  CHECK_FALSE(pair_admissible(2, 1));
  CHECK_FALSE(pair_admissible(3, 7));
  CHECK(pair_admissible(17, 2));
  auto rows = admissibility_table({0, 5, 7, 11, 13, 17}, 12);
  CHECK(rows[0].summary == ">= 2");
  CHECK(rows[1].summary == "5 or >= 10");
  CHECK(rows[2].summary == ">= 4");
  CHECK(rows[3].summary == ">= 3");
  CHECK(rows[5].summary == ">= 2");
  CHECK(admissibility_table({2, 3}, 6)[0].summary == "none");
}

TEST_CASE("divisor sum identity") {
  auto a = divisor_sum_identity(12, 2);
  CHECK(a.lhs == 14);
  CHECK(a.equal());
  CHECK(divisor_sum_identity(1, 5).lhs == 1);
  auto b = divisor_sum_identity(7, 5);
  CHECK(b.lhs == 2);
  CHECK(b.equal());
  for (long n = 1; n <= 500; ++n) CHECK(divisor_sum_identity(n, 3).equal());
}

TEST_CASE("worst-case dominance") {
  CHECK(worst_case_dominance(7, 2, 1).max_sum == 0);
  auto d = worst_case_dominance(0, 2, 10000);
  CHECK(d.max_sum < mpq_class(395, 1000));
  auto d5 = worst_case_dominance(5, 11, 10000);
  CHECK(d5.max_sum <= closed_bound(5, 11).upper);
}

TEST_CASE("decimal rendering") {
  CHECK(decimal(mpq_class(1, 3), 4) == "0.3333");
  CHECK(decimal(mpq_class(-1, 8), 3) == "-0.125");
}
