#include "zsigff/criterion.hpp"

#include <map>
#include <mutex>
#include <numeric>

#include "zsigff/errors.hpp"
#include "zsigff/field.hpp"

namespace zsigff::criterion {

namespace {

void check_p(long p) {
  if (p < 0 || (p > 0 && !is_prime_u64(static_cast<std::uint64_t>(p))))
    throw DomainError("p must be 0 or a prime, got " + std::to_string(p));
}

long ord_p(long n, long p) {
  if (p <= 1) return 0;
  long e = 0;
  while (n % p == 0) {
    n /= p;
    ++e;
  }
  return e;
}

mpz_class zpow(long b, long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(b), static_cast<unsigned long>(e));
  return r;
}

std::vector<long> divisors(long n) {
  std::vector<long> small, large;
  for (long d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    small.push_back(d);
    if (d != n / d) large.push_back(n / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

struct PartialSum {
  mpz_class lo;  // floor-rounded sum, scaled by 2^bits
  mpz_class hi;
  unsigned long bits;
};

std::mutex cache_mu;
std::map<long, PartialSum> cache;

const PartialSum& partial_sum(long M) {
  std::lock_guard<std::mutex> lk(cache_mu);
  auto it = cache.find(M);
  if (it != cache.end()) return it->second;
  unsigned long bits = 2 * static_cast<unsigned long>(mpz_sizeinbase(mpz_class(M).get_mpz_t(), 2)) + 32;
  mpz_class one = mpz_class(1) << bits;
  PartialSum s{0, 0, bits};
  mpz_class q, r;
  for (long i = 1; i <= M; ++i) {
    mpz_class d = mpz_class(i) * i;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), one.get_mpz_t(), d.get_mpz_t());
    s.lo += q;
    s.hi += (r == 0) ? q : q + 1;
  }
  return cache.emplace(M, std::move(s)).first->second;
}

mpq_class harmonic2(long r) {
  mpq_class h = 0;
  for (long i = 1; i <= r; ++i) h += mpq_class(1, static_cast<unsigned long>(i * i));
  return h;
}

constexpr long kStartTerms = 64;
constexpr long kMaxTerms = 1L << 24;

}  // namespace

std::vector<long> divisor_set(long n, long r) {
  if (n < 1 || r < 1) throw DomainError("divisor_set needs n, r >= 1");
  std::vector<long> out;
  for (long d : divisors(n))
    if (d > r && std::gcd(d, r) == 1) out.push_back(d);
  return out;
}

mpq_class s_sum(long n, long p, long r) {
  check_p(p);
  mpq_class s = 0;
  for (long d : divisor_set(n, r)) {
    mpq_class term(zpow(p, p > 0 ? ord_p(d, p) : 0), mpz_class(d) * d);
    term.canonicalize();
    s += term;
  }
  return s;
}

Enclosure zeta2_enclosure(long M) {
  if (M < 1) throw DomainError("zeta2_enclosure needs M >= 1");
  const PartialSum& s = partial_sum(M);
  mpz_class den = mpz_class(1) << s.bits;
  mpq_class lo(s.lo, den), hi(s.hi, den);
  lo.canonicalize();
  hi.canonicalize();
  lo += mpq_class(1, static_cast<unsigned long>(M + 1));
  hi += mpq_class(1, static_cast<unsigned long>(M));
  return {lo, hi};
}

Enclosure closed_bound(long p, long r) {
  check_p(p);
  if (p == 2 || p == 3) throw DomainError("closed bound is defined for p = 0 or p >= 5");
  if (r < 1) throw DomainError("r must be positive");
  const mpq_class coef = p == 0 ? mpq_class(1) : mpq_class(p, p - 1);
  const mpq_class h = harmonic2(r);
  const mpq_class half(1, 2);
  for (long M = kStartTerms; M <= kMaxTerms; M *= 4) {
    Enclosure z = zeta2_enclosure(M);
    Enclosure e{coef * z.lower - h, coef * z.upper - h};
    if (!e.contains(half)) return e;
  }
  throw Inconclusive("closed bound comparison with 1/2 undecided at " + std::to_string(kMaxTerms) +
                     " terms for p = " + std::to_string(p) + ", r = " + std::to_string(r));
}

bool pair_admissible(long p, long r) {
  check_p(p);
  if (r < 1) throw DomainError("r must be positive");
  if (p == 2 || p == 3) return false;
  if (r == 1) return true;
  if (p >= 5 && r % p == 0) return true;
  return closed_bound(p, r).below(mpq_class(1, 2));
}

DivisorSumIdentity divisor_sum_identity(long n, long p) {
  check_p(p);
  if (p == 0) throw DomainError("divisor sum identity needs a prime p");
  if (n < 1) throw DomainError("n must be positive");
  auto ds = divisors(n);
  mpz_class lhs = 0;
  for (long d : ds) lhs += zpow(p, ord_p(d, p));
  long e = ord_p(n, p);
  mpq_class rhs(zpow(p, e + 1) - 1, mpz_class((e + 1) * (p - 1)));
  rhs.canonicalize();
  rhs *= static_cast<long>(ds.size());
  return {mpq_class(lhs), rhs};
}

Dominance worst_case_dominance(long p, long r, long n_max) {
  Dominance d{0, 0};
  for (long n = 1; n <= n_max; ++n) {
    mpq_class s = s_sum(n, p, r);
    if (d.argmax == 0 || s > d.max_sum) {
      d.max_sum = s;
      d.argmax = n;
    }
  }
  return d;
}

std::vector<TableRow> admissibility_table(const std::vector<long>& primes, long r_max) {
  std::vector<TableRow> out;
  for (long p : primes) {
    TableRow row{p, {}, ""};
    for (long r = 2; r <= r_max; ++r) row.admissible.push_back(pair_admissible(p, r));
    // Smallest r0 with every r in [r0, r_max] admissible; isolated ones before it.
    long tail = r_max + 1;
    while (tail > 2 && row.admissible[static_cast<std::size_t>(tail - 3)]) --tail;
    std::string s;
    for (long r = 2; r < tail; ++r)
      if (row.admissible[static_cast<std::size_t>(r - 2)]) s += (s.empty() ? "" : ", ") + std::to_string(r);
    if (tail <= r_max) s += (s.empty() ? "" : " or ") + std::string(">= ") + std::to_string(tail);
    row.summary = s.empty() ? "none" : s;
    out.push_back(std::move(row));
  }
  return out;
}

std::string decimal(const mpq_class& q, int digits) {
  mpz_class scale = zpow(10, digits);
  mpz_class v = q.get_num() * scale;
  mpz_class quo;
  // Round half away from zero.
  mpz_class twice = 2 * v + (sgn(v) >= 0 ? q.get_den() : -q.get_den());
  mpz_tdiv_q(quo.get_mpz_t(), twice.get_mpz_t(), mpz_class(2 * q.get_den()).get_mpz_t());
  std::string sgn_s = quo < 0 ? "-" : "";
  mpz_class a = abs(quo);
  std::string body = a.get_str();
  if (static_cast<int>(body.size()) <= digits) body = std::string(digits + 1 - body.size(), '0') + body;
  return sgn_s + body.substr(0, body.size() - digits) + "." + body.substr(body.size() - digits);
}

}  // namespace zsigff::criterion
