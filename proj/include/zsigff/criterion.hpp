#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace zsigff::criterion {

/// d | n with d > r and gcd(d, r) = 1, ascending.
std::vector<long> divisor_set(long n, long r);

/// Sum over divisor_set(n, r) of p^{ord_p d} / d^2 (the p-power is 1 for p = 0).
mpq_class s_sum(long n, long p, long r);

struct Enclosure {
  mpq_class lower;
  mpq_class upper;

  mpq_class midpoint() const { return (lower + upper) / 2; }
  bool below(const mpq_class& c) const { return upper < c; }
  bool at_least(const mpq_class& c) const { return lower >= c; }
  bool contains(const mpq_class& c) const { return lower <= c && c <= upper; }
};

/// Certified enclosure of zeta(2) from M terms: partial sums rounded to
/// dyadic rationals, tail in (1/(M+1), 1/M).
Enclosure zeta2_enclosure(long M);

/// zeta(2)(1 + 1/(p-1)) - sum_{i<=r} 1/i^2, the 1/(p-1) term omitted for
/// p = 0. Refined until the comparison with 1/2 is decided.
Enclosure closed_bound(long p, long r);

/// Admissibility of (p, r): r = 1 with p not in
/// {2, 3}; p >= 5 dividing r; or the closed bound certified below 1/2.
bool pair_admissible(long p, long r);

struct DivisorSumIdentity {
  mpq_class lhs;
  mpq_class rhs;
  bool equal() const { return lhs == rhs; }
};

/// sum_{d | n} p^{ord_p d} against (p^{e+1} - 1)/((e+1)(p-1)) tau(n), e = ord_p n.
DivisorSumIdentity divisor_sum_identity(long n, long p);

struct Dominance {
  mpq_class max_sum;
  long argmax = 0;
};

/// max over n <= n_max of s_sum(n, p, r).
Dominance worst_case_dominance(long p, long r, long n_max);

struct TableRow {
  long p;
  /// admissible[i] refers to r = i + 2.
  std::vector<bool> admissible;
  /// Compact form such as "5 or >= 10".
  std::string summary;
};

std::vector<TableRow> admissibility_table(const std::vector<long>& primes, long r_max);

std::string decimal(const mpq_class& q, int digits = 6);

}  // namespace zsigff::criterion
