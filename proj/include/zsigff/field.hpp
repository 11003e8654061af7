#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "zsigff/errors.hpp"

namespace zsigff {

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// The prime field F_p for an odd prime p < 2^31. Elements are canonical
/// representatives in [0, p).
class PrimeField {
 public:
  using value_type = std::uint64_t;
  static constexpr bool is_finite = true;

  explicit PrimeField(std::uint64_t p) : p_(p) {
    if (p < 3 || p >= (std::uint64_t{1} << 31) || !is_prime_u64(p))
      throw DomainError("characteristic must be an odd prime below 2^31, got " +
                        std::to_string(p));
  }

  std::uint64_t characteristic() const noexcept { return p_; }

  value_type zero() const noexcept { return 0; }
  value_type one() const noexcept { return 1; }
  bool is_zero(value_type a) const noexcept { return a == 0; }
  bool is_one(value_type a) const noexcept { return a == 1; }

  value_type add(value_type a, value_type b) const noexcept {
    value_type s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  value_type sub(value_type a, value_type b) const noexcept {
    return a >= b ? a - b : a + p_ - b;
  }
  value_type neg(value_type a) const noexcept { return a == 0 ? 0 : p_ - a; }
  value_type mul(value_type a, value_type b) const noexcept { return a * b % p_; }

  value_type pow(value_type a, std::uint64_t e) const noexcept {
    value_type r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  value_type inv(value_type a) const {
    if (a == 0) throw DomainError("inverse of zero in F_" + std::to_string(p_));
    return pow(a, p_ - 2);
  }

  value_type div(value_type a, value_type b) const { return mul(a, inv(b)); }

  value_type from_int(long long v) const noexcept {
    long long m = v % static_cast<long long>(p_);
    if (m < 0) m += static_cast<long long>(p_);
    return static_cast<value_type>(m);
  }

  value_type from_mpz(const mpz_class& v) const {
    mpz_class m = v % static_cast<unsigned long>(p_);
    if (m < 0) m += static_cast<unsigned long>(p_);
    return m.get_ui();
  }

  /// Rational c = n/d reduced into F_p; throws when p divides d.
  value_type from_mpq(const mpq_class& c) const {
    return div(from_mpz(c.get_num()), from_mpz(c.get_den()));
  }

  std::string to_string(value_type a) const { return std::to_string(a); }

  bool operator==(const PrimeField& o) const noexcept { return p_ == o.p_; }

 private:
  std::uint64_t p_;
};

/// The rational numbers, characteristic 0. mpq_class keeps values in lowest
/// terms with positive denominator.
class RationalField {
 public:
  using value_type = mpq_class;
  static constexpr bool is_finite = false;

  std::uint64_t characteristic() const noexcept { return 0; }

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  bool is_zero(const value_type& a) const { return sgn(a) == 0; }
  bool is_one(const value_type& a) const { return a == 1; }

  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }

  value_type inv(const value_type& a) const {
    if (sgn(a) == 0) throw DomainError("inverse of zero in Q");
    return 1 / a;
  }
  value_type div(const value_type& a, const value_type& b) const { return a * inv(b); }

  value_type pow(value_type a, std::uint64_t e) const {
    value_type r = 1;
    while (e) {
      if (e & 1) r *= a;
      a *= a;
      e >>= 1;
    }
    return r;
  }

  value_type from_int(long long v) const { return mpq_class(mpz_class(std::to_string(v))); }
  value_type from_mpz(const mpz_class& v) const { return mpq_class(v); }
  value_type from_mpq(const mpq_class& c) const { return c; }

  std::string to_string(const value_type& a) const { return a.get_str(); }

  bool operator==(const RationalField&) const noexcept { return true; }
};

}  // namespace zsigff
