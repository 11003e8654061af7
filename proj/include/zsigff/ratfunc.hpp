#pragma once

#include <optional>
#include <string>
#include <utility>

#include "zsigff/poly.hpp"

namespace zsigff {

/// Reduced fraction num/den of polynomials with monic denominator.
template <class F>
class RatFunc {
 public:
  using poly_type = Poly<F>;
  using value_type = typename F::value_type;

  explicit RatFunc(const F& field) : num_(field), den_(Poly<F>::one(field)) {}
  RatFunc(const Poly<F>& p)  // NOLINT(google-explicit-constructor)
      : num_(p), den_(Poly<F>::one(p.field())) {}

  /// Normalizes num/den: cancels the gcd and makes the denominator monic.
  RatFunc(Poly<F> num, Poly<F> den) : num_(std::move(num)), den_(std::move(den)) {
    num_.check_same(den_);
    if (den_.is_zero()) throw DomainError("rational function with zero denominator");
    if (num_.is_zero()) {
      den_ = Poly<F>::one(num_.field());
      return;
    }
    Poly<F> g = gcd(num_, den_);
    if (!g.is_one()) {
      num_ = exact_div(num_, g);
      den_ = exact_div(den_, g);
    }
    normalize_lc();
  }

  static RatFunc constant(const F& field, const value_type& c) {
    return RatFunc(Poly<F>::constant(field, c));
  }
  static RatFunc variable(const F& field) { return RatFunc(Poly<F>::variable(field)); }

  const F& field() const noexcept { return num_.field(); }
  const Poly<F>& num() const noexcept { return num_; }
  const Poly<F>& den() const noexcept { return den_; }

  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_polynomial() const { return den_.is_one(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }

  /// max(deg num, deg den): the degree of the induced map to P^1.
  long height() const {
    if (is_zero()) return 0;
    return std::max(num_.degree(), den_.degree());
  }

  std::string to_string() const {
    if (den_.is_one()) return num_.to_string();
    auto wrap = [](const Poly<F>& p) {
      std::string s = p.to_string();
      bool atom = p.coefficients().size() <= 1 ||
                  s.find_first_of("+-") == std::string::npos;
      return atom ? s : "(" + s + ")";
    };
    return wrap(num_) + "/" + wrap(den_);
  }

  RatFunc operator-() const { return from_reduced(-num_, den_); }

  // Henrici-style operations keep the gcd computations on small operands.
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    a.num_.check_same(b.num_);
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
    Poly<F> g = gcd(a.den_, b.den_);
    if (g.is_one()) return from_reduced(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    Poly<F> ad = exact_div(a.den_, g);
    Poly<F> bd = exact_div(b.den_, g);
    Poly<F> n = a.num_ * bd + b.num_ * ad;
    if (n.is_zero()) return RatFunc(a.field());
    Poly<F> g2 = gcd(n, g);
    if (g2.is_one()) return from_reduced(n, ad * b.den_);
    return from_reduced(exact_div(n, g2), ad * exact_div(b.den_, g2));
  }

  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    a.num_.check_same(b.num_);
    if (a.is_zero() || b.is_zero()) return RatFunc(a.field());
    Poly<F> g1 = gcd(a.num_, b.den_);
    Poly<F> g2 = gcd(b.num_, a.den_);
    Poly<F> n1 = g1.is_one() ? a.num_ : exact_div(a.num_, g1);
    Poly<F> d2 = g1.is_one() ? b.den_ : exact_div(b.den_, g1);
    Poly<F> n2 = g2.is_one() ? b.num_ : exact_div(b.num_, g2);
    Poly<F> d1 = g2.is_one() ? a.den_ : exact_div(a.den_, g2);
    return from_reduced(n1 * n2, d1 * d2);
  }

  RatFunc inverse() const {
    if (is_zero()) throw DomainError("inverse of the zero rational function");
    return from_reduced(den_, num_);
  }

  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }

  RatFunc scaled(const value_type& s) const { return from_reduced(num_.scaled(s), den_); }

  RatFunc pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    // num and den stay coprime under powers.
    return from_reduced(num_.pow(static_cast<std::uint64_t>(e)),
                        den_.pow(static_cast<std::uint64_t>(e)));
  }

  /// f(t^k); coprimality is preserved under t -> t^k.
  RatFunc inflate(std::size_t k) const { return from_reduced(num_.inflate(k), den_.inflate(k)); }

  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }

  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  /// Builds from a pair already known to be coprime; only rescales.
  static RatFunc from_reduced(Poly<F> num, Poly<F> den) {
    RatFunc r(num.field());
    if (den.is_zero()) throw DomainError("rational function with zero denominator");
    if (num.is_zero()) return r;
    r.num_ = std::move(num);
    r.den_ = std::move(den);
    r.normalize_lc();
    return r;
  }

 private:
  void normalize_lc() {
    if (!den_.is_monic()) {
      auto li = field().inv(den_.leading());
      num_ = num_.scaled(li);
      den_ = den_.scaled(li);
    }
  }

  Poly<F> num_;
  Poly<F> den_;
};

/// A closed point of P^1: a monic squarefree nonconstant polynomial, or the
/// point at infinity.
template <class F>
class Place {
 public:
  static Place infinity() { return Place(); }

  static Place finite(const Poly<F>& poly) {
    if (poly.degree() < 1) throw DomainError("place polynomial must be nonconstant");
    if (!poly.is_monic()) throw DomainError("place polynomial must be monic");
    Place pl;
    pl.poly_ = poly;
    return pl;
  }

  bool is_infinity() const noexcept { return !poly_.has_value(); }
  const Poly<F>& poly() const {
    if (!poly_) throw DomainError("the place at infinity has no polynomial");
    return *poly_;
  }
  long degree() const { return poly_ ? poly_->degree() : 1; }
  std::string to_string() const { return poly_ ? poly_->to_string() : "inf"; }

  friend bool operator==(const Place& a, const Place& b) { return a.poly_ == b.poly_; }
  friend bool operator<(const Place& a, const Place& b) {
    if (a.is_infinity() != b.is_infinity()) return !a.is_infinity();
    if (a.is_infinity()) return false;
    return *a.poly_ < *b.poly_;
  }

 private:
  Place() = default;
  std::optional<Poly<F>> poly_;
};

/// Multiplicity of the squarefree polynomial pi in f != 0. Throws
/// AmbiguousPlace when pi and the cofactor still share a factor.
template <class F>
long multiplicity(const Poly<F>& pi, Poly<F> f) {
  if (f.is_zero()) throw DomainError("multiplicity in the zero polynomial");
  long k = 0;
  while (f.degree() >= pi.degree()) {
    auto [q, r] = divrem(f, pi);
    if (!r.is_zero()) break;
    f = std::move(q);
    ++k;
  }
  if (!gcd(pi, f).is_one())
    throw AmbiguousPlace("place " + pi.to_string() + " splits against a factor of multiplicity " +
                         std::to_string(k) + "; refine the gcd-free basis");
  return k;
}

/// Valuation at a place; std::nullopt encodes +infinity (f = 0).
template <class F>
std::optional<long> valuation(const Place<F>& v, const RatFunc<F>& f) {
  if (f.is_zero()) return std::nullopt;
  if (v.is_infinity()) return f.den().degree() - f.num().degree();
  return multiplicity(v.poly(), f.num()) - multiplicity(v.poly(), f.den());
}

template <class F>
std::optional<long> valuation(const Place<F>& v, const Poly<F>& f) {
  return valuation(v, RatFunc<F>(f));
}

/// Support of an effective divisor: radical of the finite part plus a flag
/// for the place at infinity.
template <class F>
struct SupportSet {
  Poly<F> finite_part;
  bool at_infinity = false;

  explicit SupportSet(const F& field) : finite_part(Poly<F>::one(field)) {}
  SupportSet(Poly<F> radical, bool inf) : finite_part(std::move(radical)), at_infinity(inf) {}

  bool empty() const { return finite_part.is_one() && !at_infinity; }

  /// Number of points counted with degree (over the closure).
  long degree() const { return finite_part.degree() + (at_infinity ? 1 : 0); }

  SupportSet unite(const SupportSet& o) const {
    return SupportSet(lcm(finite_part, o.finite_part), at_infinity || o.at_infinity);
  }

  friend bool operator==(const SupportSet& a, const SupportSet& b) {
    return a.finite_part == b.finite_part && a.at_infinity == b.at_infinity;
  }
};

/// The part of `current` whose closure points lie outside `accumulated`.
template <class F>
SupportSet<F> new_support_part(const SupportSet<F>& current, const SupportSet<F>& accumulated) {
  current.finite_part.check_same(accumulated.finite_part);
  Poly<F> rest = current.finite_part;
  for (;;) {
    Poly<F> g = gcd(rest, accumulated.finite_part);
    if (g.is_one()) break;
    rest = exact_div(rest, g);
  }
  return SupportSet<F>(rest.monic(), current.at_infinity && !accumulated.at_infinity);
}

/// Exact evaluation f(a); throws at a pole.
template <class F>
typename F::value_type specialize(const RatFunc<F>& f, const typename F::value_type& a) {
  const F& k = f.field();
  auto d = f.den().eval(a);
  if (k.is_zero(d)) throw DomainError("evaluation at a pole of " + f.to_string());
  return k.div(f.num().eval(a), d);
}

}  // namespace zsigff
