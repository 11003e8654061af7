#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "zsigff/curve.hpp"

namespace zsigff {

enum class DivisorMode { exact, support_only };

/// Effective divisor: finite places with positive multiplicities plus the
/// multiplicity at infinity. Finite places are pairwise coprime and sorted.
template <class F>
struct EffDivisor {
  std::vector<std::pair<Place<F>, long>> finite;
  long infinity_mult = 0;
  /// Set when multiplicities are only reliable up to support (p = 3).
  bool support_only = false;

  bool empty() const { return finite.empty() && infinity_mult == 0; }

  long degree() const {
    long d = infinity_mult;
    for (const auto& [pl, m] : finite) d += m * pl.degree();
    return d;
  }

  SupportSet<F> support(const F& k) const {
    Poly<F> rad = Poly<F>::one(k);
    for (const auto& [pl, m] : finite) rad = rad * pl.poly();
    return SupportSet<F>(std::move(rad), infinity_mult > 0);
  }

  /// Multiplicity at v. Over Q, v must divide one of the stored places or be
  /// coprime to all of them.
  long order_at(const Place<F>& v) const {
    if (v.is_infinity()) return infinity_mult;
    for (const auto& [pl, m] : finite) {
      if (gcd(pl.poly(), v.poly()).is_one()) continue;
      if (divides(v.poly(), pl.poly())) return m;
      throw AmbiguousPlace("place " + v.to_string() + " is not contained in " + pl.to_string());
    }
    return 0;
  }

  std::vector<std::string> place_strings() const {
    std::vector<std::string> out;
    for (const auto& [pl, m] : finite) out.push_back(pl.to_string());
    if (infinity_mult > 0) out.push_back("inf");
    return out;
  }

  std::string to_string() const {
    if (empty()) return "0";
    std::string s;
    auto term = [&](const std::string& pl, long m) {
      if (!s.empty()) s += " + ";
      s += (m == 1 ? "" : std::to_string(m) + "*") + "[" + pl + "]";
    };
    for (const auto& [pl, m] : finite) term(pl.to_string(), m);
    if (infinity_mult > 0) term("inf", infinity_mult);
    return s;
  }

  friend bool operator==(const EffDivisor& a, const EffDivisor& b) {
    return a.finite == b.finite && a.infinity_mult == b.infinity_mult;
  }
};

template <class F>
long divisor_degree(const EffDivisor<F>& D) {
  return D.degree();
}

/// Finite places where x may contribute: the denominator of x together with
/// the places of nonzero defect. Irreducible over F_p; over Q a gcd-free
/// family compatible with A and B.
template <class F>
std::vector<Place<F>> divisor_candidate_places(const Curve<F>& E, const Poly<F>& x_den) {
  std::vector<Poly<F>> polys;
  if constexpr (F::is_finite) {
    if (x_den.degree() >= 1)
      for (auto& [g, e] : factor_irreducible(x_den, E.seed())) polys.push_back(g);
    for (const auto& [pl, m] : E.nonminimal_places()) polys.push_back(pl);
    std::sort(polys.begin(), polys.end());
    polys.erase(std::unique(polys.begin(), polys.end()), polys.end());
  } else {
    std::vector<Poly<F>> inputs{x_den, E.A().num(), E.A().den(), E.B().num(), E.B().den()};
    for (auto& b : gcd_free_basis(inputs)) {
      bool keep = !gcd(b, x_den).is_one();
      for (const auto& [pl, m] : E.nonminimal_places())
        if (!keep && !gcd(b, pl).is_one()) keep = true;
      if (keep) polys.push_back(std::move(b));
    }
  }
  std::vector<Place<F>> out;
  for (auto& g : polys) out.push_back(Place<F>::finite(g));
  return out;
}

/// Assembles D from the valuations of x at candidate places:
/// multiplicity max(0, m_v - v(x)/2). std::nullopt stands for v(x) = +inf.
template <class F>
EffDivisor<F> divisor_from_valuations(const Curve<F>& E,
                                      const std::vector<std::pair<Place<F>, std::optional<long>>>& vals,
                                      DivisorMode mode) {
  EffDivisor<F> D;
  D.support_only = mode == DivisorMode::support_only;
  for (const auto& [v, vx] : vals) {
    if (!vx) continue;
    long twice = 2 * E.defect(v) - *vx;
    if (twice <= 0) continue;
    if (twice % 2 != 0) {
      if (mode == DivisorMode::exact)
        throw ConsistencyError("odd pole order of x on the minimal model at " + v.to_string());
      ++twice;
    }
    if (v.is_infinity())
      D.infinity_mult = twice / 2;
    else
      D.finite.emplace_back(v, twice / 2);
  }
  std::sort(D.finite.begin(), D.finite.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return D;
}

template <class F>
void check_mode(const Curve<F>& E, DivisorMode mode) {
  if (mode == DivisorMode::exact && E.characteristic() == 3)
    throw DomainError(
        "exact divisor multiplicities are unavailable in characteristic 3; the short-form "
        "model need not be minimal (use support-only mode)");
}

/// D_R for R != O.
template <class F>
EffDivisor<F> divisor_of_point(const Curve<F>& E, const Point<F>& R,
                               DivisorMode mode = DivisorMode::exact) {
  if (R.is_zero()) throw DomainError("D_R is undefined for R = O");
  check_mode(E, mode);
  const RatFunc<F>& x = R.x();
  std::vector<std::pair<Place<F>, std::optional<long>>> vals;
  for (auto& v : divisor_candidate_places(E, x.den())) vals.emplace_back(v, valuation(v, x));
  auto inf = Place<F>::infinity();
  vals.emplace_back(inf, valuation(inf, x));
  return divisor_from_valuations(E, vals, mode);
}

/// nR + S for n = 1..n_max, by repeated addition of R.
template <class F>
std::vector<Point<F>> multiples(const Curve<F>& E, const Point<F>& R, long n_max,
                                const Point<F>& S = Point<F>::zero()) {
  require_on_curve(E, R);
  require_on_curve(E, S);
  std::vector<Point<F>> out;
  out.reserve(static_cast<std::size_t>(std::max(0L, n_max)));
  Point<F> nR = Point<F>::zero();
  for (long n = 1; n <= n_max; ++n) {
    nR = detail::add_unchecked(E, nR, R);
    out.push_back(S.is_zero() ? nR : detail::add_unchecked(E, nR, S));
  }
  return out;
}

/// Runs f(i) for i in [0, count) on `jobs` threads.
inline void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& f) {
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(count)));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < count; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  std::vector<std::thread> pool;
  for (unsigned j = 0; j < jobs; ++j) {
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          f(i);
        } catch (...) {
          std::lock_guard<std::mutex> lk(err_mu);
          if (!err) err = std::current_exception();
          next = count;
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

/// D_{nR+S} for n = 1..n_max; std::nullopt where nR + S = O.
template <class F>
std::vector<std::optional<EffDivisor<F>>> divisor_sequence(const Curve<F>& E, const Point<F>& R,
                                                           long n_max,
                                                           const Point<F>& S = Point<F>::zero(),
                                                           DivisorMode mode = DivisorMode::exact,
                                                           unsigned jobs = 1) {
  check_mode(E, mode);
  auto pts = multiples(E, R, n_max, S);
  std::vector<std::optional<EffDivisor<F>>> out(pts.size());
  parallel_for(pts.size(), jobs, [&](std::size_t i) {
    if (!pts[i].is_zero()) out[i] = divisor_of_point(E, pts[i], mode);
  });
  return out;
}

template <class F>
struct ApparitionIndex {
  Place<F> place;
  long m;
};

/// Smallest n <= n_max with v in supp D_{nR}.
template <class F>
std::optional<ApparitionIndex<F>> apparition_index(const Curve<F>& E, const Point<F>& R,
                                                   const Place<F>& v, long n_max) {
  require_on_curve(E, R);
  Point<F> nR = Point<F>::zero();
  for (long n = 1; n <= n_max; ++n) {
    nR = detail::add_unchecked(E, nR, R);
    if (nR.is_zero()) continue;
    if (divisor_of_point(E, nR).order_at(v) > 0) return ApparitionIndex<F>{v, n};
  }
  return std::nullopt;
}

/// Rewrites D over a gcd-free basis refining all of its places.
template <class F>
std::vector<long> refine_orders(const EffDivisor<F>& D, const std::vector<Poly<F>>& basis) {
  std::vector<long> out(basis.size(), 0);
  for (std::size_t i = 0; i < basis.size(); ++i)
    out[i] = D.order_at(Place<F>::finite(basis[i]));
  return out;
}

template <class F>
std::vector<Poly<F>> common_basis(const std::vector<const EffDivisor<F>*>& divs) {
  std::vector<Poly<F>> polys;
  for (const auto* D : divs)
    for (const auto& [pl, m] : D->finite) polys.push_back(pl.poly());
  return gcd_free_basis(polys);
}

struct DivisibilityViolation {
  long m;
  long n;
  std::string place;
  long ord_m;
  long ord_n;
};

/// Pairs m | n <= n_max where D_{mR} <= D_{nR} fails at some place.
template <class F>
std::vector<DivisibilityViolation> divisibility_check(const Curve<F>& E, const Point<F>& R,
                                                      long n_max, unsigned jobs = 1) {
  if (E.characteristic() == 3) throw DomainError("divisibility check needs p = 0 or p >= 5");
  auto seq = divisor_sequence(E, R, n_max, Point<F>::zero(), DivisorMode::exact, jobs);
  std::vector<const EffDivisor<F>*> divs;
  for (const auto& d : seq) {
    if (!d) throw DomainError("R is torsion: " + std::to_string(divs.size() + 1) + "R = O");
    divs.push_back(&*d);
  }
  auto basis = common_basis(divs);
  std::vector<std::vector<long>> orders(divs.size());
  for (std::size_t i = 0; i < divs.size(); ++i) orders[i] = refine_orders(*divs[i], basis);

  std::vector<DivisibilityViolation> out;
  for (long n = 1; n <= n_max; ++n) {
    for (long m = 1; m <= n; ++m) {
      if (n % m != 0) continue;
      const auto& om = orders[static_cast<std::size_t>(m - 1)];
      const auto& on = orders[static_cast<std::size_t>(n - 1)];
      for (std::size_t i = 0; i < basis.size(); ++i)
        if (om[i] > on[i]) out.push_back({m, n, basis[i].to_string(), om[i], on[i]});
      long im = divs[static_cast<std::size_t>(m - 1)]->infinity_mult;
      long in = divs[static_cast<std::size_t>(n - 1)]->infinity_mult;
      if (im > in) out.push_back({m, n, "inf", im, in});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Zsigmondy scan

template <class F>
struct ScanRecord {
  long n = 0;
  bool point_is_zero = false;
  long degree = 0;
  SupportSet<F> support;
  SupportSet<F> new_support;
  bool has_primitive = false;
  /// Places of D_{nP+Q}, and the pieces of them that are new.
  std::vector<std::string> support_places;
  std::vector<std::string> new_places;
  std::optional<EffDivisor<F>> divisor;
};

template <class F>
struct ScanResult {
  std::vector<ScanRecord<F>> records;
  /// Largest n without a primitive divisor: the empirical Zsigmondy bound candidate.
  std::optional<long> last_nonprimitive;
  long q_order = 1;
  DivisorMode mode = DivisorMode::exact;
  std::vector<std::string> warnings;
};

struct ScanOptions {
  long n_max = 20;
  unsigned jobs = 1;
  bool check_torsion = true;
  std::function<void(const std::string&)> progress;
};

/// Orders of P and Q: P must be non-torsion, Q torsion (or O). Returns the
/// order r of Q.
template <class F>
long check_scan_points(const Curve<F>& E, const Point<F>& P, const Point<F>& Q,
                       std::vector<std::string>& warnings) {
  auto tp = is_torsion(E, P);
  if (tp.is_torsion()) throw DomainError("P is torsion of order " + std::to_string(*tp.order));
  if (!tp.is_non_torsion()) warnings.push_back("torsion test for P inconclusive: " + tp.note);
  if (Q.is_zero()) return 1;
  auto tq = is_torsion(E, Q);
  if (tq.is_non_torsion()) throw DomainError("Q is not a torsion point");
  if (!tq.is_torsion()) throw Inconclusive("could not determine the order of Q: " + tq.note);
  return *tq.order;
}

template <class F>
std::vector<std::string> new_piece_strings(const EffDivisor<F>& D, const SupportSet<F>& fresh) {
  std::vector<std::string> out;
  for (const auto& [pl, m] : D.finite) {
    Poly<F> g = gcd(pl.poly(), fresh.finite_part);
    if (g.degree() >= 1) out.push_back(g.to_string());
  }
  if (fresh.at_infinity) out.push_back("inf");
  return out;
}

/// Scans D_{nP+Q}, n = 1..n_max, for primitive divisors. Divisors are
/// computed in parallel; the support union is folded in index order.
template <class F>
ScanResult<F> zsigmondy_scan(const Curve<F>& E, const Point<F>& P, const Point<F>& Q,
                             const ScanOptions& opt) {
  ScanResult<F> res;
  require_on_curve(E, P);
  require_on_curve(E, Q);
  res.warnings = E.warnings();
  if (opt.check_torsion) res.q_order = check_scan_points(E, P, Q, res.warnings);
  res.mode = E.characteristic() == 3 ? DivisorMode::support_only : DivisorMode::exact;
  if (res.mode == DivisorMode::support_only)
    res.warnings.push_back("characteristic 3: support-level results only");

  if (opt.progress) opt.progress("computing multiples");
  auto pts = multiples(E, P, opt.n_max, Q);
  std::vector<std::optional<EffDivisor<F>>> divs(pts.size());
  std::atomic<long> done{0};
  parallel_for(pts.size(), opt.jobs, [&](std::size_t i) {
    if (!pts[i].is_zero()) divs[i] = divisor_of_point(E, pts[i], res.mode);
    long d = ++done;
    if (opt.progress && opt.jobs <= 1) opt.progress("divisor " + std::to_string(d));
  });

  const F& k = E.field();
  SupportSet<F> acc(k);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    ScanRecord<F> rec{static_cast<long>(i + 1), pts[i].is_zero(), 0, SupportSet<F>(k),
                      SupportSet<F>(k), false, {}, {}, divs[i]};
    if (rec.point_is_zero) {
      res.warnings.push_back(std::to_string(rec.n) + "P + Q = O; index skipped");
    } else {
      const auto& D = *divs[i];
      rec.degree = D.degree();
      rec.support = D.support(k);
      rec.new_support = new_support_part(rec.support, acc);
      rec.has_primitive = !rec.new_support.empty();
      rec.support_places = D.place_strings();
      rec.new_places = new_piece_strings(D, rec.new_support);
      acc = acc.unite(rec.support);
    }
    if (!rec.has_primitive) res.last_nonprimitive = rec.n;
    res.records.push_back(std::move(rec));
  }
  return res;
}

struct CoverageEntry {
  long n;
  /// Closure degree of supp D_{nP+Q} \ S.
  long outside_s;
  /// Closure degree of the part not found in any D_{(rn/d)P}.
  long uncovered;
  std::vector<long> admissible_d;
  bool ok() const { return uncovered == 0; }
};

/// For every scanned n <= n_limit without a primitive divisor, checks that
/// each point of supp D_{nP+Q} outside S lies in supp D_{(rn/d)P} for some
/// d | n with d > r and gcd(d, r) = 1.
template <class F>
std::vector<CoverageEntry> nonprimitive_coverage(const Curve<F>& E, const Point<F>& P,
                                            const Point<F>& Q, long r,
                                            const ScanResult<F>& scan, long n_limit = 30) {
  const F& k = E.field();
  const DivisorMode mode = scan.mode;
  SupportSet<F> S(k);
  for (long b = 1; b < r; ++b) {
    if (r % b != 0) continue;
    Point<F> bQ = detail::mul_unchecked(E, b, Q);
    if (!bQ.is_zero()) S = S.unite(divisor_of_point(E, bQ, mode).support(k));
  }
  long need = 0;
  for (const auto& rec : scan.records)
    if (rec.n <= n_limit && !rec.has_primitive) need = std::max(need, rec.n);
  std::vector<SupportSet<F>> supp_kP;
  if (need > 0) {
    auto seq = divisor_sequence(E, P, need, Point<F>::zero(), mode);
    for (auto& d : seq) supp_kP.push_back(d ? d->support(k) : SupportSet<F>(k));
  }
  std::vector<CoverageEntry> out;
  for (const auto& rec : scan.records) {
    if (rec.n > n_limit || rec.has_primitive || rec.point_is_zero) continue;
    CoverageEntry e{rec.n, 0, 0, {}};
    SupportSet<F> rest = new_support_part(rec.support, S);
    e.outside_s = rest.degree();
    SupportSet<F> cover(k);
    for (long d = r + 1; d <= rec.n; ++d) {
      if (rec.n % d != 0 || std::gcd(d, r) != 1) continue;
      e.admissible_d.push_back(d);
      long idx = r * rec.n / d;
      cover = cover.unite(supp_kP[static_cast<std::size_t>(idx - 1)]);
    }
    e.uncovered = new_support_part(rest, cover).degree();
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace zsigff
