#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "zsigff/errors.hpp"
#include "zsigff/field.hpp"

namespace zsigff {

/// Dense univariate polynomial in t over a field, coefficients lowest degree
/// first. The zero polynomial has an empty coefficient vector and degree -1.
template <class F>
class Poly {
 public:
  using field_type = F;
  using value_type = typename F::value_type;

  explicit Poly(F field) : field_(std::move(field)) {}

  Poly(F field, std::vector<value_type> coeffs)
      : field_(std::move(field)), c_(std::move(coeffs)) {
    trim();
  }

  static Poly constant(const F& field, value_type c) {
    return Poly(field, std::vector<value_type>{std::move(c)});
  }
  static Poly one(const F& field) { return constant(field, field.one()); }
  static Poly monomial(const F& field, value_type c, std::size_t deg) {
    std::vector<value_type> v(deg + 1, field.zero());
    v[deg] = std::move(c);
    return Poly(field, std::move(v));
  }
  /// The indeterminate t.
  static Poly variable(const F& field) { return monomial(field, field.one(), 1); }

  const F& field() const noexcept { return field_; }
  const std::vector<value_type>& coefficients() const noexcept { return c_; }

  long degree() const noexcept { return static_cast<long>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  bool is_constant() const noexcept { return c_.size() <= 1; }
  bool is_one() const { return c_.size() == 1 && field_.is_one(c_[0]); }
  bool is_monic() const { return !c_.empty() && field_.is_one(c_.back()); }

  value_type coeff(std::size_t i) const { return i < c_.size() ? c_[i] : field_.zero(); }
  value_type leading() const { return c_.empty() ? field_.zero() : c_.back(); }

  Poly monic() const {
    if (is_zero() || is_monic()) return *this;
    return scaled(field_.inv(leading()));
  }

  Poly scaled(const value_type& s) const {
    if (field_.is_zero(s)) return Poly(field_);
    std::vector<value_type> v(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) v[i] = field_.mul(c_[i], s);
    return Poly(field_, std::move(v));
  }

  Poly derivative() const {
    if (c_.size() <= 1) return Poly(field_);
    std::vector<value_type> v(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i)
      v[i - 1] = field_.mul(c_[i], field_.from_int(static_cast<long long>(i)));
    return Poly(field_, std::move(v));
  }

  /// f(t^k).
  Poly inflate(std::size_t k) const {
    if (k == 1 || c_.size() <= 1) return *this;
    std::vector<value_type> v((c_.size() - 1) * k + 1, field_.zero());
    for (std::size_t i = 0; i < c_.size(); ++i) v[i * k] = c_[i];
    return Poly(field_, std::move(v));
  }

  /// g with g(t^k) = f, when every exponent of f is divisible by k.
  std::optional<Poly> deflate(std::size_t k) const {
    if (k == 1) return *this;
    std::vector<value_type> v;
    v.reserve(c_.size() / k + 1);
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (i % k == 0)
        v.push_back(c_[i]);
      else if (!field_.is_zero(c_[i]))
        return std::nullopt;
    }
    return Poly(field_, std::move(v));
  }

  value_type eval(const value_type& a) const {
    value_type r = field_.zero();
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = field_.add(field_.mul(r, a), *it);
    return r;
  }

  Poly pow(std::uint64_t e) const {
    Poly r = one(field_);
    Poly b = *this;
    while (e) {
      if (e & 1) r = r * b;
      e >>= 1;
      if (e) b = b * b;
    }
    return r;
  }

  /// Canonical text form: decreasing degree, e.g. `3*t^2 + 1`.
  std::string to_string(const std::string& var = "t") const;

  Poly operator-() const {
    std::vector<value_type> v(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) v[i] = field_.neg(c_[i]);
    return Poly(field_, std::move(v));
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    a.check_same(b);
    const auto& f = a.field_;
    std::vector<value_type> v(std::max(a.c_.size(), b.c_.size()), f.zero());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f.add(a.coeff(i), b.coeff(i));
    return Poly(f, std::move(v));
  }

  friend Poly operator-(const Poly& a, const Poly& b) {
    a.check_same(b);
    const auto& f = a.field_;
    std::vector<value_type> v(std::max(a.c_.size(), b.c_.size()), f.zero());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f.sub(a.coeff(i), b.coeff(i));
    return Poly(f, std::move(v));
  }

  friend Poly operator*(const Poly& a, const Poly& b) {
    a.check_same(b);
    if (a.is_zero() || b.is_zero()) return Poly(a.field_);
    return Poly(a.field_, multiply_coeffs(a.field_, a.c_, b.c_));
  }

  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend bool operator==(const Poly& a, const Poly& b) {
    return a.field_ == b.field_ && a.c_ == b.c_;
  }

  /// Canonical total order: by degree, then coefficients from the top down.
  friend bool operator<(const Poly& a, const Poly& b) {
    if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size();
    for (std::size_t i = a.c_.size(); i-- > 0;) {
      if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i];
    }
    return false;
  }

  void check_same(const Poly& o) const {
    if (!(field_ == o.field_))
      throw DomainError("characteristic mismatch: " + std::to_string(field_.characteristic()) +
                        " vs " + std::to_string(o.field_.characteristic()));
  }

 private:
  void trim() {
    while (!c_.empty() && field_.is_zero(c_.back())) c_.pop_back();
  }

  static std::vector<value_type> multiply_coeffs(const F& f, const std::vector<value_type>& a,
                                                 const std::vector<value_type>& b);

  F field_;
  std::vector<value_type> c_;
};

namespace detail {

inline std::vector<std::uint64_t> mul_mod_p(std::uint64_t p, const std::vector<std::uint64_t>& a,
                                            const std::vector<std::uint64_t>& b) {
  const std::vector<std::uint64_t>& lo = a.size() <= b.size() ? a : b;
  const std::vector<std::uint64_t>& hi = a.size() <= b.size() ? b : a;
  std::vector<std::uint64_t> acc(a.size() + b.size() - 1, 0);
  const std::uint64_t sq = (p - 1) * (p - 1);
  // Each acc entry gains at most one product per outer iteration.
  const std::uint64_t batch =
      sq == 0 ? std::numeric_limits<std::uint64_t>::max()
              : (std::numeric_limits<std::uint64_t>::max() - p) / sq;
  std::uint64_t pending = 0;
  for (std::size_t i = 0; i < lo.size(); ++i) {
    const std::uint64_t ai = lo[i];
    if (ai != 0) {
      std::uint64_t* dst = acc.data() + i;
      const std::uint64_t* src = hi.data();
      const std::size_t n = hi.size();
      for (std::size_t j = 0; j < n; ++j) dst[j] += ai * src[j];
      if (++pending == batch) {
        for (auto& x : acc) x %= p;
        pending = 0;
      }
    }
  }
  for (auto& x : acc) x %= p;
  return acc;
}

}  // namespace detail

template <class F>
std::vector<typename F::value_type> Poly<F>::multiply_coeffs(const F& f,
                                                             const std::vector<value_type>& a,
                                                             const std::vector<value_type>& b) {
  if constexpr (F::is_finite) {
    return detail::mul_mod_p(f.characteristic(), a, b);
  } else {
    std::vector<value_type> r(a.size() + b.size() - 1, f.zero());
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (f.is_zero(a[i])) continue;
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return r;
  }
}

template <class F>
std::string Poly<F>::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    const value_type& c = c_[i];
    if (field_.is_zero(c)) continue;
    std::string mag;
    bool negative = false;
    if constexpr (F::is_finite) {
      mag = field_.to_string(c);
    } else {
      negative = sgn(c) < 0;
      mag = negative ? mpq_class(-c).get_str() : c.get_str();
    }
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    std::string mono = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
    if (mono.empty())
      out += mag;
    else if (mag == "1")
      out += mono;
    else
      out += mag + "*" + mono;
  }
  return out;
}

/// Quotient and remainder with deg(remainder) < deg(divisor).
template <class F>
std::pair<Poly<F>, Poly<F>> divrem(const Poly<F>& a, const Poly<F>& b) {
  a.check_same(b);
  if (b.is_zero()) throw DomainError("division by the zero polynomial");
  const F& f = a.field();
  using V = typename F::value_type;
  if (a.degree() < b.degree()) return {Poly<F>(f), a};
  const auto& bc = b.coefficients();
  const std::size_t db = bc.size() - 1;
  const std::size_t nq = a.coefficients().size() - db;
  std::vector<V> q(nq, f.zero());
  if constexpr (F::is_finite) {
    const std::uint64_t p = f.characteristic();
    std::vector<std::uint64_t> r = a.coefficients();
    std::vector<std::uint64_t> nb(db);
    for (std::size_t j = 0; j < db; ++j) nb[j] = bc[j] == 0 ? 0 : p - bc[j];
    const std::uint64_t inv = f.inv(bc[db]);
    const std::uint64_t sq = (p - 1) * (p - 1);
    const bool lazy = sq == 0 || (db + 1) <= (std::numeric_limits<std::uint64_t>::max() - p) / sq;
    for (std::size_t k = nq; k-- > 0;) {
      const std::uint64_t top = r[k + db] % p;
      r[k + db] = 0;
      if (top == 0) continue;
      const std::uint64_t qk = top * inv % p;
      q[k] = qk;
      std::uint64_t* dst = r.data() + k;
      if (lazy) {
        for (std::size_t j = 0; j < db; ++j) dst[j] += qk * nb[j];
      } else {
        for (std::size_t j = 0; j < db; ++j) dst[j] = (dst[j] % p + qk * nb[j] % p) % p;
      }
    }
    r.resize(db);
    for (auto& x : r) x %= p;
    return {Poly<F>(f, std::move(q)), Poly<F>(f, std::move(r))};
  } else {
    std::vector<V> r = a.coefficients();
    const V inv = f.inv(bc[db]);
    for (std::size_t k = nq; k-- > 0;) {
      V top = r[k + db];
      if (f.is_zero(top)) continue;
      V qk = top * inv;
      q[k] = qk;
      for (std::size_t j = 0; j < db; ++j)
        if (!f.is_zero(bc[j])) r[k + j] -= qk * bc[j];
      r[k + db] = 0;
    }
    r.resize(db);
    return {Poly<F>(f, std::move(q)), Poly<F>(f, std::move(r))};
  }
}

template <class F>
Poly<F> operator%(const Poly<F>& a, const Poly<F>& b) {
  return divrem(a, b).second;
}

/// Exact quotient; throws if b does not divide a.
template <class F>
Poly<F> exact_div(const Poly<F>& a, const Poly<F>& b) {
  auto [q, r] = divrem(a, b);
  if (!r.is_zero()) throw ConsistencyError("exact_div: nonzero remainder");
  return q;
}

template <class F>
bool divides(const Poly<F>& d, const Poly<F>& a) {
  return (a % d).is_zero();
}

/// Monic greatest common divisor; gcd(0, 0) = 0.
template <class F>
Poly<F> gcd(Poly<F> a, Poly<F> b) {
  a.check_same(b);
  while (!b.is_zero()) {
    Poly<F> r = a % b;
    a = std::move(b);
    b = r.is_zero() ? std::move(r) : r.monic();
  }
  return a.monic();
}

template <class F>
Poly<F> lcm(const Poly<F>& a, const Poly<F>& b) {
  if (a.is_zero() || b.is_zero()) return Poly<F>(a.field());
  return (exact_div(a, gcd(a, b)) * b).monic();
}

/// Extended Euclid: returns (g, s, u) with s*a + u*b = g, g monic.
template <class F>
std::tuple<Poly<F>, Poly<F>, Poly<F>> ext_gcd(const Poly<F>& a, const Poly<F>& b) {
  const F& f = a.field();
  Poly<F> r0 = a, r1 = b;
  Poly<F> s0 = Poly<F>::one(f), s1(f);
  Poly<F> u0(f), u1 = Poly<F>::one(f);
  while (!r1.is_zero()) {
    auto [q, r] = divrem(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Poly<F> s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    Poly<F> u2 = u0 - q * u1;
    u0 = std::move(u1);
    u1 = std::move(u2);
  }
  if (r0.is_zero()) return {r0, s0, u0};
  auto li = f.inv(r0.leading());
  return {r0.scaled(li), s0.scaled(li), u0.scaled(li)};
}

template <class F>
Poly<F> mulmod(const Poly<F>& a, const Poly<F>& b, const Poly<F>& m) {
  return (a * b) % m;
}

/// base^e mod m for an arbitrary-size nonnegative exponent.
template <class F>
Poly<F> powmod(const Poly<F>& base, const mpz_class& e, const Poly<F>& m) {
  Poly<F> r = Poly<F>::one(base.field()) % m;
  if (e == 0) return r;
  Poly<F> b = base % m;
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    r = mulmod(r, r, m);
    if (mpz_tstbit(e.get_mpz_t(), i)) r = mulmod(r, b, m);
  }
  return r;
}

}  // namespace zsigff
