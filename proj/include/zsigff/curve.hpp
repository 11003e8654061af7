#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zsigff/factor.hpp"
#include "zsigff/ratfunc.hpp"

namespace zsigff {

/// A point of E(K): the identity O or an affine point (x, y).
template <class F>
class Point {
 public:
  static Point zero() { return Point(); }
  static Point affine(RatFunc<F> x, RatFunc<F> y) {
    Point p;
    p.xy_.emplace(std::move(x), std::move(y));
    return p;
  }

  bool is_zero() const noexcept { return !xy_.has_value(); }
  const RatFunc<F>& x() const { return coords().first; }
  const RatFunc<F>& y() const { return coords().second; }

  std::string to_string() const {
    if (is_zero()) return "O";
    return "(" + x().to_string() + ", " + y().to_string() + ")";
  }

  friend bool operator==(const Point& a, const Point& b) { return a.xy_ == b.xy_; }

 private:
  const std::pair<RatFunc<F>, RatFunc<F>>& coords() const {
    if (!xy_) throw DomainError("the identity has no affine coordinates");
    return *xy_;
  }
  std::optional<std::pair<RatFunc<F>, RatFunc<F>>> xy_;
};

namespace detail {

inline long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace detail

/// y^2 = x^3 + A x + B over F_p(t) or Q(t).
template <class F>
class Curve {
 public:
  Curve(RatFunc<F> A, RatFunc<F> B, std::uint64_t seed = kDefaultSeed)
      : A_(std::move(A)), B_(std::move(B)), seed_(seed) {
    A_.num().check_same(B_.num());
    if (discriminant().is_zero()) throw DomainError("singular curve: 4A^3 + 27B^2 = 0");
    compute_bad_places();
  }

  const RatFunc<F>& A() const noexcept { return A_; }
  const RatFunc<F>& B() const noexcept { return B_; }
  const F& field() const noexcept { return A_.field(); }
  std::uint64_t characteristic() const noexcept { return field().characteristic(); }
  std::uint64_t seed() const noexcept { return seed_; }

  /// -16 (4A^3 + 27B^2).
  RatFunc<F> discriminant() const {
    const F& k = field();
    RatFunc<F> inner = A_.pow(3).scaled(k.from_int(4)) + B_.pow(2).scaled(k.from_int(27));
    return inner.scaled(k.from_int(-16));
  }

  /// Minimality defect m_v = min(floor(v(A)/4), floor(v(B)/6)).
  long defect(const Place<F>& v) const {
    auto va = valuation(v, A_);
    auto vb = valuation(v, B_);
    if (!va && !vb) throw DomainError("A = B = 0 is not an elliptic curve");
    long m = std::numeric_limits<long>::max();
    if (va) m = std::min(m, detail::floor_div(*va, 4));
    if (vb) m = std::min(m, detail::floor_div(*vb, 6));
    return m;
  }

  /// Finite places with nonzero defect. Over F_p these are irreducible; over Q
  /// they form a gcd-free family on which A and B have uniform valuations.
  const std::vector<std::pair<Poly<F>, long>>& nonminimal_places() const noexcept {
    return bad_;
  }
  long defect_at_infinity() const noexcept { return defect_inf_; }

  /// Finite place polynomials that may carry bad reduction: poles of A, B,
  /// zeros of the discriminant. Irreducible over F_p, gcd-free over Q.
  const std::vector<Poly<F>>& discriminant_places() const noexcept { return disc_places_; }

  std::vector<std::string> warnings() const {
    std::vector<std::string> w;
    if (has_constant_j())
      w.push_back("j-invariant is constant; the curve may be isotrivial");
    return w;
  }

  bool has_constant_j() const;

 private:
  void compute_bad_places();

  RatFunc<F> A_;
  RatFunc<F> B_;
  std::uint64_t seed_;
  std::vector<std::pair<Poly<F>, long>> bad_;
  std::vector<Poly<F>> disc_places_;
  long defect_inf_ = 0;
};

/// Splits a family of polynomials into places: irreducible factors over F_p,
/// a gcd-free basis over Q.
template <class F>
std::vector<Poly<F>> split_into_places(const std::vector<Poly<F>>& polys, std::uint64_t seed) {
  std::vector<Poly<F>> basis = gcd_free_basis(polys);
  if constexpr (!F::is_finite) {
    return basis;
  } else {
    std::vector<Poly<F>> out;
    for (const auto& b : basis)
      for (auto& [g, e] : factor_irreducible(b, seed)) out.push_back(g);
    std::sort(out.begin(), out.end());
    return out;
  }
}

template <class F>
void Curve<F>::compute_bad_places() {
  std::vector<Poly<F>> cand{A_.num(), A_.den(), B_.num(), B_.den()};
  for (const auto& pl : split_into_places(cand, seed_)) {
    long m = defect(Place<F>::finite(pl));
    if (m != 0) bad_.emplace_back(pl, m);
  }
  defect_inf_ = defect(Place<F>::infinity());
  RatFunc<F> d = discriminant();
  disc_places_ = split_into_places(std::vector<Poly<F>>{d.num(), d.den(), A_.num(), A_.den(),
                                                        B_.num(), B_.den()},
                                   seed_);
}

template <class F>
RatFunc<F> j_invariant(const Curve<F>& E) {
  const F& k = E.field();
  RatFunc<F> a3 = E.A().pow(3).scaled(k.from_int(4));
  RatFunc<F> denom = a3 + E.B().pow(2).scaled(k.from_int(27));
  return (a3 / denom).scaled(k.from_int(1728));
}

template <class F>
bool is_isotrivial_j(const Curve<F>& E) {
  return j_invariant(E).is_constant();
}

template <class F>
bool Curve<F>::has_constant_j() const {
  return is_isotrivial_j(*this);
}

template <class F>
bool on_curve(const Curve<F>& E, const Point<F>& R) {
  if (R.is_zero()) return true;
  const RatFunc<F>& x = R.x();
  return R.y().pow(2) == x.pow(3) + E.A() * x + E.B();
}

template <class F>
Point<F> negate(const Point<F>& R) {
  if (R.is_zero()) return R;
  return Point<F>::affine(R.x(), -R.y());
}

namespace detail {

template <class F>
Point<F> add_unchecked(const Curve<F>& E, const Point<F>& R, const Point<F>& S) {
  if (R.is_zero()) return S;
  if (S.is_zero()) return R;
  const F& k = E.field();
  const RatFunc<F>& x1 = R.x();
  const RatFunc<F>& y1 = R.y();
  const RatFunc<F>& x2 = S.x();
  const RatFunc<F>& y2 = S.y();
  RatFunc<F> lambda(k);
  if (x1 == x2) {
    if (y1 == -y2) return Point<F>::zero();
    lambda = (x1.pow(2).scaled(k.from_int(3)) + E.A()) / y1.scaled(k.from_int(2));
  } else {
    lambda = (y2 - y1) / (x2 - x1);
  }
  RatFunc<F> x3 = lambda.pow(2) - x1 - x2;
  RatFunc<F> y3 = lambda * (x1 - x3) - y1;
  return Point<F>::affine(std::move(x3), std::move(y3));
}

template <class F>
Point<F> mul_unchecked(const Curve<F>& E, long long n, Point<F> R) {
  if (n < 0) {
    R = negate(R);
    n = -n;
  }
  Point<F> acc = Point<F>::zero();
  while (n) {
    if (n & 1) acc = add_unchecked(E, acc, R);
    n >>= 1;
    if (n) R = add_unchecked(E, R, R);
  }
  return acc;
}

}  // namespace detail

template <class F>
void require_on_curve(const Curve<F>& E, const Point<F>& R) {
  if (!on_curve(E, R)) throw DomainError("point " + R.to_string() + " is not on the curve");
}

/// Chord-tangent sum.
template <class F>
Point<F> add(const Curve<F>& E, const Point<F>& R, const Point<F>& S) {
  require_on_curve(E, R);
  require_on_curve(E, S);
  return detail::add_unchecked(E, R, S);
}

/// Double-and-add; negative n multiplies the negated point.
template <class F>
Point<F> scalar_mul(const Curve<F>& E, long long n, const Point<F>& R) {
  require_on_curve(E, R);
  return detail::mul_unchecked(E, n, R);
}

/// Naive height: 0 for O, deg x(R) otherwise.
template <class F>
long naive_height(const Point<F>& R) {
  return R.is_zero() ? 0 : R.x().height();
}

// ---------------------------------------------------------------------------
// Local minimal models, Hasse invariant

template <class F>
struct LocalModel {
  Place<F> place;
  long defect;
  RatFunc<F> A_min;
  RatFunc<F> B_min;
};

/// Uniformizer power u^k at a place: pi^k, or t^{-k} at infinity.
template <class F>
RatFunc<F> uniformizer_power(const Place<F>& v, long k, const F& field) {
  RatFunc<F> u = v.is_infinity() ? RatFunc<F>::variable(field).inverse() : RatFunc<F>(v.poly());
  return u.pow(k);
}

template <class F>
LocalModel<F> local_model(const Curve<F>& E, const Place<F>& v) {
  long m = E.defect(v);
  RatFunc<F> u = uniformizer_power(v, m, E.field());
  return LocalModel<F>{v, m, E.A() / u.pow(4), E.B() / u.pow(6)};
}

namespace detail {

/// Coefficient of x^{p-1} in (x^3 + a x + b)^{(p-1)/2} for elements of a ring R
/// given by +, * and an F_p scalar action.
template <class F, class R>
R hasse_polynomial(const F& k, const R& a, const R& b, const R& zero) {
  const std::uint64_t p = k.characteristic();
  const std::uint64_t half = (p - 1) / 2;
  std::vector<std::uint64_t> fact(half + 1, 1);
  for (std::uint64_t i = 1; i <= half; ++i) fact[i] = k.mul(fact[i - 1], k.from_int(static_cast<long long>(i)));
  R acc = zero;
  // exponents (i, j, l) of (x^3, a x, b): i + j + l = half, 3i + j = p - 1.
  for (std::uint64_t l = 0; l <= half; ++l) {
    if ((half + l) % 2 != 0) continue;
    std::uint64_t i = (half + l) / 2;
    if (3 * l > half) break;
    std::uint64_t j = (half - 3 * l) / 2;
    if (i + j + l != half) continue;
    auto coef = k.div(fact[half], k.mul(fact[i], k.mul(fact[j], fact[l])));
    acc = acc + (a.pow(j) * b.pow(l)).scaled(coef);
  }
  return acc;
}

}  // namespace detail

/// H_E: coefficient of x^{p-1} in (x^3 + Ax + B)^{(p-1)/2}. Computed on the
/// polynomial model (w^4 A, w^6 B), w = lcm of the denominators, and
/// transformed back by w^{-(p-1)}.
template <class F>
RatFunc<F> hasse_invariant(const Curve<F>& E) {
  const F& k = E.field();
  if constexpr (!F::is_finite) {
    throw DomainError("the Hasse invariant is defined in positive characteristic only");
  } else {
    Poly<F> w = lcm(E.A().den(), E.B().den());
    Poly<F> a = (E.A() * RatFunc<F>(w.pow(4))).num();
    Poly<F> b = (E.B() * RatFunc<F>(w.pow(6))).num();
    Poly<F> h = detail::hasse_polynomial(k, a, b, Poly<F>(k));
    return RatFunc<F>(h) / RatFunc<F>(w.pow(k.characteristic() - 1));
  }
}

template <class F>
bool is_ordinary(const Curve<F>& E) {
  if constexpr (!F::is_finite) {
    return true;
  } else {
    return !hasse_invariant(E).is_zero();
  }
}

/// h_{E,v}: valuation at v of the Hasse invariant of the v-minimal model.
template <class F>
long h_E_gamma(const Curve<F>& E, const Place<F>& v) {
  if constexpr (!F::is_finite) {
    throw DomainError("h_E_gamma needs positive characteristic");
  } else {
    RatFunc<F> H = hasse_invariant(E);
    if (H.is_zero()) throw DomainError("supersingular curve: the Hasse invariant vanishes");
    const long p = static_cast<long>(E.characteristic());
    long h = *valuation(v, H) - (p - 1) * E.defect(v);
    if (h < 0) throw ConsistencyError("negative local Hasse order at " + v.to_string());
    return h;
  }
}

template <class F>
struct HasseData {
  RatFunc<F> H;
  /// Places with h_{E,v} > 0.
  std::vector<std::pair<Place<F>, long>> local_orders;

  long order_at(const Place<F>& v) const {
    for (const auto& [pl, h] : local_orders)
      if (pl == v) return h;
    return 0;
  }
};

template <class F>
HasseData<F> hasse_data(const Curve<F>& E) {
  HasseData<F> out{hasse_invariant(E), {}};
  if (out.H.is_zero()) throw DomainError("supersingular curve: the Hasse invariant vanishes");
  std::vector<Poly<F>> cand{out.H.num(), out.H.den()};
  for (const auto& [pl, m] : E.nonminimal_places()) cand.push_back(pl);
  for (const auto& pl : split_into_places(cand, E.seed())) {
    auto place = Place<F>::finite(pl);
    long h = h_E_gamma(E, place);
    if (h > 0) out.local_orders.emplace_back(place, h);
  }
  long hinf = h_E_gamma(E, Place<F>::infinity());
  if (hinf > 0) out.local_orders.emplace_back(Place<F>::infinity(), hinf);
  return out;
}

// ---------------------------------------------------------------------------
// Torsion by reduction

enum class TorsionStatus { torsion, non_torsion, inconclusive };

struct TorsionResult {
  TorsionStatus status = TorsionStatus::inconclusive;
  std::optional<long> order;
  std::string note;

  bool is_torsion() const { return status == TorsionStatus::torsion; }
  bool is_non_torsion() const { return status == TorsionStatus::non_torsion; }
};

inline constexpr int kTorsionBudget = 20;
/// Largest residue field searched naively for point orders.
inline constexpr double kMaxResidueField = 2.0e6;

namespace detail {

/// Arithmetic in F_p[t]/(pi) for irreducible pi.
template <class F>
struct ResidueRing {
  Poly<F> modulus;

  using elem = Poly<F>;
  elem zero() const { return Poly<F>(modulus.field()); }
  elem reduce(const Poly<F>& a) const { return a % modulus; }
  elem add(const elem& a, const elem& b) const { return a + b; }
  elem sub(const elem& a, const elem& b) const { return a - b; }
  elem mul(const elem& a, const elem& b) const { return (a * b) % modulus; }
  elem from_int(long long v) const {
    return Poly<F>::constant(modulus.field(), modulus.field().from_int(v));
  }
  bool is_zero(const elem& a) const { return a.is_zero(); }
  elem inv(const elem& a) const {
    auto [g, s, u] = ext_gcd(a, modulus);
    if (!g.is_one()) throw DomainError("non-invertible residue");
    return s % modulus;
  }
  /// Image of a rational function; nullopt at a pole.
  std::optional<elem> image(const RatFunc<F>& f) const {
    elem d = reduce(f.den());
    if (d.is_zero()) return std::nullopt;
    return mul(reduce(f.num()), inv(d));
  }
};

/// Arithmetic in the constant field (Q for specialization t -> a).
template <class F>
struct ScalarRing {
  F field;
  typename F::value_type at;

  using elem = typename F::value_type;
  elem zero() const { return field.zero(); }
  elem add(const elem& a, const elem& b) const { return field.add(a, b); }
  elem sub(const elem& a, const elem& b) const { return field.sub(a, b); }
  elem mul(const elem& a, const elem& b) const { return field.mul(a, b); }
  elem from_int(long long v) const { return field.from_int(v); }
  bool is_zero(const elem& a) const { return field.is_zero(a); }
  elem inv(const elem& a) const { return field.inv(a); }
  std::optional<elem> image(const RatFunc<F>& f) const {
    elem d = f.den().eval(at);
    if (field.is_zero(d)) return std::nullopt;
    return field.div(f.num().eval(at), d);
  }
};

/// Order of (x, y) on y^2 = x^3 + a x + b over a field, searching up to
/// max_order; nullopt when not found.
template <class Ring>
std::optional<long> reduced_point_order(const Ring& k, const typename Ring::elem& a,
                                        const typename Ring::elem& x0,
                                        const typename Ring::elem& y0, long max_order) {
  using E = typename Ring::elem;
  std::optional<std::pair<E, E>> cur = std::make_pair(x0, y0);
  for (long n = 1; n <= max_order; ++n) {
    if (!cur) return n;
    // cur <- cur + (x0, y0)
    const auto& [x1, y1] = *cur;
    E lambda = k.zero();
    if (k.is_zero(k.sub(x1, x0))) {
      if (k.is_zero(k.add(y1, y0))) {
        cur.reset();
        continue;
      }
      lambda = k.mul(k.add(k.mul(k.from_int(3), k.mul(x1, x1)), a), k.inv(k.mul(k.from_int(2), y1)));
    } else {
      lambda = k.mul(k.sub(y0, y1), k.inv(k.sub(x0, x1)));
    }
    E x3 = k.sub(k.sub(k.mul(lambda, lambda), x1), x0);
    E y3 = k.sub(k.mul(lambda, k.sub(x1, x3)), y1);
    cur = std::make_pair(std::move(x3), std::move(y3));
  }
  return std::nullopt;
}

/// Monic polynomials of degree d over F_p in lexicographic order.
template <class F>
class MonicEnumerator {
 public:
  MonicEnumerator(const F& k, unsigned d) : k_(k), digits_(d, 0), done_(false) {}
  std::optional<Poly<F>> next() {
    if (done_) return std::nullopt;
    std::vector<std::uint64_t> c(digits_.begin(), digits_.end());
    c.push_back(1);
    Poly<F> out(k_, std::move(c));
    std::size_t i = 0;
    for (; i < digits_.size(); ++i) {
      if (++digits_[i] < k_.characteristic()) break;
      digits_[i] = 0;
    }
    if (i == digits_.size()) done_ = true;
    return out;
  }

 private:
  F k_;
  std::vector<std::uint64_t> digits_;
  bool done_;
};

}  // namespace detail

/// Decides whether R is torsion by reduction at a place of good reduction.
/// The kernel of reduction is torsion-free, so a torsion point of order r
/// reduces to a point of order exactly r: the order m of the reduction is the
/// only candidate, confirmed by computing m*R.
template <class F>
TorsionResult is_torsion(const Curve<F>& E, const Point<F>& R, int budget = kTorsionBudget) {
  require_on_curve(E, R);
  TorsionResult res;
  if (R.is_zero()) {
    res.status = TorsionStatus::torsion;
    res.order = 1;
    return res;
  }
  auto confirm = [&](long m, const std::string& where) {
    Point<F> mR = detail::mul_unchecked(E, m, R);
    if (mR.is_zero()) {
      long r = m;
      for (long d = 1; d < m; ++d)
        if (m % d == 0 && detail::mul_unchecked(E, d, R).is_zero()) {
          r = d;
          break;
        }
      res.status = TorsionStatus::torsion;
      res.order = r;
    } else {
      res.status = TorsionStatus::non_torsion;
    }
    res.note = where + ", reduced order " + std::to_string(m);
    return res;
  };

  const F& k = E.field();
  RatFunc<F> disc = E.discriminant();
  int attempts = 0;
  // Reduced orders at distinct good places must agree for a torsion point.
  std::optional<long> first_order;
  std::string first_where;
  int agreeing = 0;
  auto consider = [&](long m, const std::string& where) -> bool {
    if (!first_order) {
      first_order = m;
      first_where = where;
    } else if (*first_order != m) {
      res.status = TorsionStatus::non_torsion;
      res.note = "reduced orders differ: " + std::to_string(*first_order) + " at " + first_where +
                 ", " + std::to_string(m) + " at " + where;
      return true;
    }
    return ++agreeing >= 3;
  };
  if constexpr (F::is_finite) {
    const std::uint64_t p = k.characteristic();
    for (unsigned d = 1; d <= 3 && attempts < budget; ++d) {
      const double q = std::pow(static_cast<double>(p), static_cast<double>(d));
      if (q > kMaxResidueField) break;
      detail::MonicEnumerator<F> en(k, d);
      while (attempts < budget) {
        auto cand = en.next();
        if (!cand) break;
        if (d > 1 && !is_irreducible(*cand)) continue;
        ++attempts;
        detail::ResidueRing<F> ring{*cand};
        auto a = ring.image(E.A());
        auto b = ring.image(E.B());
        auto dd = ring.image(disc);
        auto x = ring.image(R.x());
        auto y = ring.image(R.y());
        if (!a || !b || !dd || dd->is_zero() || !x || !y) continue;
        const long bound = static_cast<long>(q + 1 + 2 * std::sqrt(q)) + 1;
        auto m = detail::reduced_point_order(ring, *a, *x, *y, bound);
        if (!m) throw ConsistencyError("reduced point order exceeds the Hasse bound");
        if (consider(*m, "reduction at " + cand->to_string())) break;
      }
      if (res.is_non_torsion() || agreeing >= 3) break;
    }
    if (res.is_non_torsion()) return res;
    if (first_order) return confirm(*first_order, first_where);
  } else {
    for (long i = 0; i <= 20 && attempts < budget; ++i) {
      long a_int = (i % 2 == 0) ? i / 2 : -(i + 1) / 2;
      ++attempts;
      detail::ScalarRing<F> ring{k, k.from_int(a_int)};
      auto a = ring.image(E.A());
      auto b = ring.image(E.B());
      auto dd = ring.image(disc);
      auto x = ring.image(R.x());
      auto y = ring.image(R.y());
      if (!a || !b || !dd || k.is_zero(*dd) || !x || !y) continue;
      // Rational torsion has order at most 12.
      auto m = detail::reduced_point_order(ring, *a, *x, *y, 12);
      if (!m) {
        res.status = TorsionStatus::non_torsion;
        res.note = "specialization t = " + std::to_string(a_int) + " has infinite order";
        return res;
      }
      return confirm(*m, "specialization t = " + std::to_string(a_int));
    }
  }
  res.status = TorsionStatus::inconclusive;
  res.note = "no place of good reduction within " + std::to_string(budget) + " attempts";
  return res;
}

}  // namespace zsigff
