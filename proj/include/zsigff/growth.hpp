#pragma once

#include <algorithm>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zsigff/divisor.hpp"

namespace zsigff {

/// ord_v D_R computed from v(x(R)) and the defect at v alone, without
/// factoring the denominator of x(R).
template <class F>
long divisor_order_at(const Curve<F>& E, const Point<F>& R, const Place<F>& v) {
  if (R.is_zero()) throw DomainError("D_R is undefined for R = O");
  check_mode(E, DivisorMode::exact);
  auto vx = valuation(v, R.x());
  if (!vx) return 0;
  long twice = 2 * E.defect(v) - *vx;
  if (twice <= 0) return 0;
  if (twice % 2 != 0)
    throw ConsistencyError("odd pole order of x on the minimal model at " + v.to_string());
  return twice / 2;
}

inline long ord_p(long n, long p) {
  long e = 0;
  if (p <= 1) return 0;
  while (n % p == 0) {
    n /= p;
    ++e;
  }
  return e;
}

inline long ipow(long b, long e) {
  long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// ---------------------------------------------------------------------------
// Heights

struct HeightReport {
  long n;
  long naive;
  long twice_degree;
  long gap;
};

/// h(nP+Q) against 2 deg D_{nP+Q} for n = 1..n_max.
template <class F>
std::vector<HeightReport> height_gap_profile(const Curve<F>& E, const Point<F>& P, long n_max,
                                             const Point<F>& Q = Point<F>::zero(),
                                             unsigned jobs = 1) {
  auto pts = multiples(E, P, n_max, Q);
  std::vector<HeightReport> out(pts.size());
  parallel_for(pts.size(), jobs, [&](std::size_t i) {
    long n = static_cast<long>(i + 1);
    long h = naive_height(pts[i]);
    long d2 = pts[i].is_zero() ? 0 : 2 * divisor_of_point(E, pts[i]).degree();
    out[i] = HeightReport{n, h, d2, h - d2};
  });
  return out;
}

/// Index where max |gap| is first attained.
inline long gap_argmax(const std::vector<HeightReport>& rows) {
  long best = -1, arg = 0;
  for (const auto& r : rows)
    if (std::labs(r.gap) > best) {
      best = std::labs(r.gap);
      arg = r.n;
    }
  return arg;
}

template <class F>
struct HeightEstimate {
  mpq_class estimate;
  std::vector<std::pair<long, mpq_class>> trace;
  /// C fitted as max n |trace(n) - trace(2n)| over the fit range.
  mpq_class C;
  long fit_limit = 0;
  long validate_limit = 0;
  /// Indices in the validation range where the bound fails.
  std::vector<long> violations;
  bool validated() const { return violations.empty(); }
};

/// deg D_{nR}/n^2 for n <= n_max, estimate deg D_{n_max R}/n_max^2, and the
/// C/n stability bound fitted on n <= n_max/4 and validated up to n_max/2.
template <class F>
HeightEstimate<F> canonical_height_estimate(const Curve<F>& E, const Point<F>& R, long n_max,
                                            unsigned jobs = 1) {
  auto tr = is_torsion(E, R);
  if (tr.is_torsion()) throw DomainError("canonical height of a torsion point is 0");
  if (n_max < 4) throw DomainError("n_max must be at least 4");
  auto seq = divisor_sequence(E, R, n_max, Point<F>::zero(), DivisorMode::exact, jobs);
  HeightEstimate<F> out;
  for (long n = 1; n <= n_max; ++n) {
    mpq_class v(seq[static_cast<std::size_t>(n - 1)]->degree(), n * n);
    v.canonicalize();
    out.trace.emplace_back(n, v);
  }
  out.estimate = out.trace.back().second;
  out.fit_limit = n_max / 4;
  out.validate_limit = n_max / 2;
  auto at = [&](long n) { return out.trace[static_cast<std::size_t>(n - 1)].second; };
  out.C = 0;
  for (long n = 1; n <= out.fit_limit; ++n) {
    mpq_class d = abs(at(n) - at(2 * n)) * n;
    if (d > out.C) out.C = d;
  }
  for (long n = out.fit_limit + 1; n <= out.validate_limit; ++n)
    if (abs(at(n) - at(2 * n)) * n > out.C) out.violations.push_back(n);
  return out;
}

/// max over the sample of h(R+S) - 2h(R) - 2h(S).
template <class F>
long quasi_parallelogram_check(const Curve<F>& E,
                               const std::vector<std::pair<Point<F>, Point<F>>>& sample) {
  long best = std::numeric_limits<long>::min();
  for (const auto& [R, S] : sample) {
    long ex = naive_height(add(E, R, S)) - 2 * naive_height(R) - 2 * naive_height(S);
    best = std::max(best, ex);
  }
  return best;
}

/// <R, S> ~ h^(R+S) - h^(R) - h^(S), each estimated at index n.
template <class F>
mpq_class pairing_estimate(const Curve<F>& E, const Point<F>& R, const Point<F>& S, long n) {
  auto est = [&](const Point<F>& X) -> mpq_class {
    Point<F> nX = scalar_mul(E, n, X);
    if (nX.is_zero()) return 0;
    mpq_class v(divisor_of_point(E, nX).degree(), n * n);
    v.canonicalize();
    return v;
  };
  return est(add(E, R, S)) - est(R) - est(S);
}

// ---------------------------------------------------------------------------
// Valuation growth law

struct GrowthRow {
  long n;
  std::string branch;
  std::optional<long> expected;
  long actual;
  bool match;
};

template <class F>
struct DeltaProfile {
  Place<F> place;
  long base_index;
  /// e -> delta(e) = ord D_{p^e R'} - p^e ord D_{R'}.
  std::map<long, long> observed;
  long j_observed = 0;
};

template <class F>
struct GrowthReport {
  Place<F> place;
  long m = 0;
  std::optional<long> h;
  long p = 0;
  std::vector<GrowthRow> rows;
  std::vector<long> skipped;
  std::optional<DeltaProfile<F>> delta;

  long mismatches() const {
    long c = 0;
    for (const auto& r : rows) c += r.match ? 0 : 1;
    return c;
  }
};

struct GrowthOptions {
  long n_max = 24;
  /// Explicit indices to check; empty means 1..n_max.
  std::vector<long> indices;
  /// Indices whose estimated naive height exceeds this are skipped.
  long height_budget = 20000;
};

/// Smallest e-independent saturation index for a profile: the least j such
/// that every observed e > j satisfies the saturated formula.
inline long saturation_index(const std::map<long, long>& obs, long p, long h) {
  if (obs.empty()) return 0;
  long e_max = obs.rbegin()->first;
  for (long j = 0; j <= e_max; ++j) {
    auto dj = obs.find(j);
    if (dj == obs.end()) continue;
    bool ok = true;
    for (const auto& [e, d] : obs) {
      if (e <= j) continue;
      long q = ipow(p, e - j);
      if (d != (q - 1) / (p - 1) * h + q * dj->second) {
        ok = false;
        break;
      }
    }
    if (ok) return j;
  }
  return e_max;
}

/// delta profile of the point base = kR at v over e = 0..e_max.
template <class F>
DeltaProfile<F> delta_profile(const Curve<F>& E, const Point<F>& base, long base_index,
                              const Place<F>& v, long e_max, long h) {
  const long p = static_cast<long>(E.characteristic());
  DeltaProfile<F> prof{v, base_index, {}, 0};
  long o0 = divisor_order_at(E, base, v);
  Point<F> cur = base;
  for (long e = 0; e <= e_max; ++e) {
    if (e > 0) cur = detail::mul_unchecked(E, p, cur);
    prof.observed[e] = divisor_order_at(E, cur, v) - ipow(p, e) * o0;
  }
  prof.j_observed = saturation_index(prof.observed, p, h);
  return prof;
}

/// Verifies the valuation-of-multiples law at v: ord 0 off multiples of
/// m(v); constancy on multiples for p = 0; the closed form for tame places;
/// delta observations for wild places (h >= p).
template <class F>
GrowthReport<F> growth_law_verify(const Curve<F>& E, const Point<F>& R, const Place<F>& v,
                                  const GrowthOptions& opt) {
  check_mode(E, DivisorMode::exact);
  require_on_curve(E, R);
  GrowthReport<F> rep{v, 0, std::nullopt, static_cast<long>(E.characteristic()), {}, {}, {}};
  const long p = rep.p;

  std::map<long, long> ord;
  std::map<long, long> height;
  Point<F> nR = Point<F>::zero();
  long search = opt.n_max;
  for (long n = 1; n <= search; ++n) {
    nR = detail::add_unchecked(E, nR, R);
    if (nR.is_zero()) throw DomainError("R is torsion");
    ord[n] = divisor_order_at(E, nR, v);
    height[n] = naive_height(nR);
    if (rep.m == 0 && ord[n] > 0) rep.m = n;
  }
  if (rep.m == 0)
    throw Inconclusive("no apparition index for " + v.to_string() + " up to " +
                       std::to_string(opt.n_max));
  const long m = rep.m;
  if constexpr (F::is_finite) rep.h = h_E_gamma(E, v);

  // Naive height grows like c n^2; c from the largest computed index.
  const double c = static_cast<double>(height[search]) / static_cast<double>(search * search);

  std::vector<long> idx = opt.indices;
  if (idx.empty())
    for (long n = 1; n <= opt.n_max; ++n) idx.push_back(n);
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());

  auto order_of = [&](long n) -> std::optional<long> {
    auto it = ord.find(n);
    if (it != ord.end()) return it->second;
    if (c * static_cast<double>(n) * static_cast<double>(n) > static_cast<double>(opt.height_budget))
      return std::nullopt;
    long o = divisor_order_at(E, detail::mul_unchecked(E, n, R), v);
    ord[n] = o;
    return o;
  };

  const long om = ord[m];
  const bool wild = p > 0 && *rep.h >= p;
  std::map<long, long> delta_seen;
  for (long n : idx) {
    if (n < 1) throw DomainError("indices must be positive");
    auto a = order_of(n);
    if (!a) {
      rep.skipped.push_back(n);
      continue;
    }
    GrowthRow row{n, "", std::nullopt, *a, true};
    if (n % m != 0) {
      row.branch = "i";
      row.expected = 0;
    } else if (p == 0) {
      row.branch = "ii";
      row.expected = om;
    } else if (!wild) {
      long e = ord_p(n / m, p);
      long q = ipow(p, e);
      row.branch = "iii_a";
      row.expected = q * om + (q - 1) / (p - 1) * *rep.h;
    } else {
      long e = ord_p(n / m, p);
      row.branch = "iii_b";
      long d = *a - ipow(p, e) * om;
      auto [it, fresh] = delta_seen.emplace(e, d);
      // delta depends on e only.
      if (!fresh) row.expected = it->second + ipow(p, e) * om;
    }
    if (row.expected) row.match = *row.expected == row.actual;
    rep.rows.push_back(row);
  }
  if (wild) {
    DeltaProfile<F> prof{v, m, {}, 0};
    prof.observed = delta_seen;
    prof.observed[0] = 0;
    prof.j_observed = saturation_index(prof.observed, p, *rep.h);
    rep.delta = prof;
  }
  return rep;
}

/// Checks the delta identity relating the profile of nR (A) to that of
/// m(v)R (B), with e = ord_p(n/m(v)), for s <= j present in both.
template <class F>
bool delta_identity_check(const DeltaProfile<F>& A, const DeltaProfile<F>& B, long p, long e,
                          long j, long h) {
  if (!(A.place == B.place)) throw DomainError("profiles belong to different places");
  auto b = [&](long k) -> std::optional<long> {
    auto it = B.observed.find(k);
    if (it == B.observed.end()) return std::nullopt;
    return it->second;
  };
  auto be = b(e);
  if (!be) throw DomainError("profile of m(v)R lacks e = " + std::to_string(e));
  bool any = false;
  for (const auto& [s, lhs] : A.observed) {
    if (s > j) continue;
    std::optional<long> tail;
    if (e + s <= j) {
      tail = b(e + s);
    } else if (auto bj = b(j)) {
      long q = ipow(p, e + s - j);
      tail = (q - 1) / (p - 1) * h + q * *bj;
    }
    if (!tail) continue;
    any = true;
    if (lhs != -ipow(p, s) * *be + *tail) return false;
  }
  return any;
}

struct LinearBound {
  mpq_class max_ratio;
  long argmax = 0;
};

/// max over n <= n_max of ord_v D_{nR} / n.
template <class F>
LinearBound linear_bound_check(const Curve<F>& E, const Point<F>& R, const Place<F>& v,
                               long n_max) {
  LinearBound out{0, 0};
  Point<F> nR = Point<F>::zero();
  for (long n = 1; n <= n_max; ++n) {
    nR = detail::add_unchecked(E, nR, R);
    if (nR.is_zero()) throw DomainError("R is torsion");
    mpq_class r(divisor_order_at(E, nR, v), n);
    r.canonicalize();
    if (r > out.max_ratio) {
      out.max_ratio = r;
      out.argmax = n;
    }
  }
  return out;
}

}  // namespace zsigff
