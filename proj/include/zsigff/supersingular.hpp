#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zsigff/divisor.hpp"

namespace zsigff {

using FpPoly = Poly<PrimeField>;
using FpRat = RatFunc<PrimeField>;
using FpCurve = Curve<PrimeField>;
using FpPoint = Point<PrimeField>;

/// y^2 = x^3 + alpha s^2 x + beta s^3 with s = t^3 + alpha t + beta, where
/// y^2 = x^3 + alpha x + beta is supersingular over F_p.
struct SupersingularDemo {
  PrimeField field;
  std::uint64_t alpha;
  std::uint64_t beta;
  FpPoly s;
  FpCurve E;
  FpPoint P;
  FpPoint Q;
};

namespace detail {

inline bool constant_curve_supersingular(const PrimeField& k, std::uint64_t a, std::uint64_t b) {
  FpPoly A = FpPoly::constant(k, a), B = FpPoly::constant(k, b);
  return hasse_polynomial(k, A, B, FpPoly(k)).is_zero();
}

inline bool constant_curve_smooth(const PrimeField& k, std::uint64_t a, std::uint64_t b) {
  auto d = k.add(k.mul(k.from_int(4), k.pow(a, 3)), k.mul(k.from_int(27), k.mul(b, b)));
  return !k.is_zero(d);
}

}  // namespace detail

/// (alpha, beta) with y^2 = x^3 + alpha x + beta supersingular; (1, 0) for
/// p = 3, otherwise the first hit in lexicographic order.
inline std::pair<std::uint64_t, std::uint64_t> find_supersingular(std::uint64_t p) {
  PrimeField k(p);
  if (p == 3) return {1, 0};
  for (std::uint64_t a = 0; a < p; ++a)
    for (std::uint64_t b = 0; b < p; ++b)
      if (detail::constant_curve_smooth(k, a, b) && detail::constant_curve_supersingular(k, a, b))
        return {a, b};
  throw ConsistencyError("no supersingular short Weierstrass curve over F_" + std::to_string(p));
}

/// A 2-torsion point (lambda s, 0) with lambda a root of X^3 + alpha X + beta
/// in F_p.
inline FpPoint build_torsion_Q(const PrimeField& k, std::uint64_t alpha, std::uint64_t beta,
                               const FpPoly& s) {
  for (std::uint64_t l = 0; l < k.characteristic(); ++l) {
    auto v = k.add(k.add(k.pow(l, 3), k.mul(alpha, l)), beta);
    if (k.is_zero(v)) return FpPoint::affine(FpRat(s.scaled(l)), FpRat(k));
  }
  throw DomainError(
      "X^3 + alpha s^2 X + beta s^3 has no root in F_p(t); the 2-torsion point lives in an "
      "extension, which is not supported");
}

inline SupersingularDemo make_demo(std::uint64_t p) {
  if (p < 3 || p % 2 == 0) throw DomainError("the demo needs an odd prime p");
  PrimeField k(p);
  auto [a, b] = find_supersingular(p);
  FpPoly t = FpPoly::variable(k);
  FpPoly s = t.pow(3) + t.scaled(a) + FpPoly::constant(k, b);
  FpCurve E(FpRat(s.pow(2).scaled(a)), FpRat(s.pow(3).scaled(b)));
  FpPoint P = FpPoint::affine(FpRat(t * s), FpRat(s.pow(2)));
  FpPoint Q = build_torsion_Q(k, a, b, s);
  return SupersingularDemo{k, a, b, s, std::move(E), std::move(P), std::move(Q)};
}

/// s (x/s)^{p^{2k}}; the power is a Frobenius twist, so it is t -> t^{p^{2k}}.
inline FpRat frobenius_x(const SupersingularDemo& d, const FpRat& x, long k) {
  std::size_t q = 1;
  for (long i = 0; i < 2 * k; ++i) q *= d.field.characteristic();
  return FpRat(d.s) * (x / FpRat(d.s)).inflate(q);
}

/// x([p^k] R) = s (x(R)/s)^{p^{2k}}, with the left side by the group law.
inline bool frobenius_identity_check(const SupersingularDemo& d, long k, const FpPoint& R) {
  require_on_curve(d.E, R);
  if (R.is_zero()) throw DomainError("R must be nonzero");
  long n = 1;
  for (long i = 0; i < k; ++i) n *= static_cast<long>(d.field.characteristic());
  FpPoint lhs = scalar_mul(d.E, n, R);
  if (lhs.is_zero()) return false;
  return lhs.x() == frobenius_x(d, R.x(), k);
}

inline DivisorMode demo_mode(const SupersingularDemo& d) {
  return d.field.characteristic() == 3 ? DivisorMode::support_only : DivisorMode::exact;
}

/// D_{p^l P + Q} from x = s g^q with g = x(P+Q)/s, q = p^{2l}, using
/// v(x) = v(s) + q v(g) so the degree-q function is never formed.
inline EffDivisor<PrimeField> frobenius_divisor(const SupersingularDemo& d, const FpRat& xPQ,
                                                long l) {
  long q = 1;
  for (long i = 0; i < 2 * l; ++i) q *= static_cast<long>(d.field.characteristic());
  FpRat g = xPQ / FpRat(d.s);
  std::vector<std::pair<Place<PrimeField>, std::optional<long>>> vals;
  auto val = [&](const Place<PrimeField>& v) -> std::optional<long> {
    auto vg = valuation(v, g);
    if (!vg) return std::nullopt;
    return *valuation(v, d.s) + q * *vg;
  };
  for (auto& v : divisor_candidate_places(d.E, g.den())) vals.emplace_back(v, val(v));
  auto inf = Place<PrimeField>::infinity();
  vals.emplace_back(inf, val(inf));
  return divisor_from_valuations(d.E, vals, demo_mode(d));
}

struct DemoLevel {
  long l = 0;
  long index = 0;
  std::vector<std::string> support;
  bool contained = false;
  /// Primitivity within the restricted scan over indices 1, p, p^2, ...
  bool has_primitive = false;
  /// "direct", "frobenius" or "both"
  std::string route;
  bool routes_agree = true;
};

struct DemoReport {
  std::uint64_t p = 0;
  std::uint64_t alpha = 0;
  std::uint64_t beta = 0;
  std::string s;
  std::string P;
  std::string Q;
  std::string x_PQ;
  std::vector<std::string> fixed_set;
  bool constant_ordinary = true;
  std::vector<std::string> warnings;
  std::string P_torsion_note;
  bool P_non_torsion = false;
  std::vector<std::pair<std::string, bool>> frobenius_checks;
  std::vector<DemoLevel> levels;

  bool ok() const {
    if (!P_non_torsion || constant_ordinary) return false;
    for (const auto& [name, pass] : frobenius_checks)
      if (!pass) return false;
    for (const auto& lv : levels) {
      if (!lv.contained || !lv.routes_agree) return false;
      if (lv.l >= 2 && lv.has_primitive) return false;
    }
    return true;
  }
};

/// Largest x-degree for which D_{p^l P + Q} is also computed by the group law.
inline constexpr long kDirectDegreeBudget = 4096;

/// Computes supp D_{p^l P + Q} for l = 1..l_max and checks containment in
/// F = poles of x(P+Q), zeros of s, and infinity.
inline DemoReport failure_demonstration(const SupersingularDemo& d, long l_max) {
  const PrimeField& k = d.field;
  const std::uint64_t p = k.characteristic();
  DemoReport rep;
  rep.p = p;
  rep.alpha = d.alpha;
  rep.beta = d.beta;
  rep.s = d.s.to_string();
  rep.P = d.P.to_string();
  rep.Q = d.Q.to_string();
  rep.warnings = d.E.warnings();
  rep.constant_ordinary = !detail::constant_curve_supersingular(k, d.alpha, d.beta);

  auto tp = is_torsion(d.E, d.P);
  rep.P_non_torsion = tp.is_non_torsion();
  rep.P_torsion_note = tp.note;

  FpPoint PQ = add(d.E, d.P, d.Q);
  rep.x_PQ = PQ.x().to_string();
  rep.frobenius_checks.emplace_back("P", frobenius_identity_check(d, 1, d.P));
  rep.frobenius_checks.emplace_back("P+Q", frobenius_identity_check(d, 1, PQ));
  rep.frobenius_checks.emplace_back("Q", frobenius_identity_check(d, 1, d.Q));
  rep.frobenius_checks.emplace_back("2P", frobenius_identity_check(d, 1, scalar_mul(d.E, 2, d.P)));

  SupportSet<PrimeField> F(squarefree_part(PQ.x().den() * d.s), true);
  for (auto& [g, e] : factor_irreducible(F.finite_part, d.E.seed())) rep.fixed_set.push_back(g.to_string());
  rep.fixed_set.push_back("inf");

  const DivisorMode mode = demo_mode(d);
  SupportSet<PrimeField> acc = divisor_of_point(d.E, PQ, mode).support(k);
  long index = 1;
  for (long l = 1; l <= l_max; ++l) {
    index *= static_cast<long>(p);
    DemoLevel lv;
    lv.l = l;
    lv.index = index;
    EffDivisor<PrimeField> D = frobenius_divisor(d, PQ.x(), l);
    lv.route = "frobenius";
    if (static_cast<double>(index) * static_cast<double>(index) <= kDirectDegreeBudget) {
      FpPoint R = detail::add_unchecked(d.E, detail::mul_unchecked(d.E, index, d.P), d.Q);
      EffDivisor<PrimeField> direct = divisor_of_point(d.E, R, mode);
      lv.route = "both";
      lv.routes_agree = direct == D;
    }
    SupportSet<PrimeField> sup = D.support(k);
    lv.support = D.place_strings();
    lv.contained = new_support_part(sup, F).empty();
    lv.has_primitive = !new_support_part(sup, acc).empty();
    acc = acc.unite(sup);
    rep.levels.push_back(std::move(lv));
  }
  return rep;
}

}  // namespace zsigff
