#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "zsigff/poly.hpp"

namespace zsigff {

inline constexpr std::uint64_t kDefaultSeed = 0x5eed2024ULL;

template <class F>
using FactorList = std::vector<std::pair<Poly<F>, unsigned>>;

namespace detail {

template <class F>
void sort_factors(FactorList<F>& v) {
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
    if (a.first == b.first) return a.second < b.second;
    return a.first < b.first;
  });
}

/// Merges entries with equal multiplicity and drops constants.
template <class F>
FactorList<F> merge_by_multiplicity(const FactorList<F>& raw) {
  std::map<unsigned, Poly<F>> by_mult;
  for (const auto& [g, e] : raw) {
    if (g.degree() < 1) continue;
    auto it = by_mult.find(e);
    if (it == by_mult.end())
      by_mult.emplace(e, g.monic());
    else
      it->second = (it->second * g).monic();
  }
  FactorList<F> out;
  for (auto& [e, g] : by_mult) out.emplace_back(std::move(g), e);
  return out;
}

template <class F>
FactorList<F> squarefree_raw(const Poly<F>& f) {
  const F& k = f.field();
  FactorList<F> out;
  if (f.degree() < 1) return out;
  if constexpr (F::is_finite) {
    const std::uint64_t p = k.characteristic();
    Poly<F> d = f.derivative();
    if (d.is_zero()) {
      // f is a p-th power: f = g(t^p) = g(t)^p over F_p.
      Poly<F> root = *f.deflate(p);
      for (auto& [g, e] : squarefree_raw(root)) out.emplace_back(g, e * static_cast<unsigned>(p));
      return out;
    }
    Poly<F> c = gcd(f, d);
    Poly<F> w = exact_div(f, c);
    unsigned i = 1;
    while (!w.is_one()) {
      Poly<F> y = gcd(w, c);
      Poly<F> fac = exact_div(w, y);
      if (fac.degree() >= 1) out.emplace_back(fac.monic(), i);
      w = std::move(y);
      c = exact_div(c, w);
      ++i;
    }
    if (c.degree() >= 1) {
      Poly<F> root = *c.monic().deflate(p);
      for (auto& [g, e] : squarefree_raw(root)) out.emplace_back(g, e * static_cast<unsigned>(p));
    }
    return out;
  } else {
    // Yun's algorithm.
    Poly<F> d = f.derivative();
    Poly<F> a = gcd(f, d);
    Poly<F> b = exact_div(f, a);
    Poly<F> c = exact_div(d, a);
    Poly<F> dd = c - b.derivative();
    unsigned i = 1;
    while (b.degree() >= 1) {
      Poly<F> g = gcd(b, dd);
      if (g.degree() >= 1) out.emplace_back(g.monic(), i);
      b = exact_div(b, g);
      c = exact_div(dd, g);
      dd = c - b.derivative();
      ++i;
    }
    return out;
  }
}

}  // namespace detail

/// Pairwise-coprime monic squarefree g_i with f = lc(f) * prod g_i^{e_i},
/// sorted canonically.
template <class F>
FactorList<F> squarefree_decompose(const Poly<F>& f) {
  if (f.is_zero()) throw DomainError("squarefree decomposition of the zero polynomial");
  FactorList<F> out = detail::merge_by_multiplicity(detail::squarefree_raw(f.monic()));
  detail::sort_factors(out);
  return out;
}

/// Radical: product of the distinct monic irreducible factors.
template <class F>
Poly<F> squarefree_part(const Poly<F>& f) {
  Poly<F> r = Poly<F>::one(f.field());
  for (const auto& [g, e] : squarefree_decompose(f)) r = r * g;
  return r;
}

namespace detail {

/// Distinct-degree factorization of a monic squarefree f over F_p.
template <class F>
std::vector<std::pair<Poly<F>, unsigned>> distinct_degree(Poly<F> f) {
  static_assert(F::is_finite);
  const F& k = f.field();
  const mpz_class p(static_cast<unsigned long>(k.characteristic()));
  std::vector<std::pair<Poly<F>, unsigned>> out;
  const Poly<F> t = Poly<F>::variable(k);
  Poly<F> h = t % f;
  unsigned d = 0;
  while (f.degree() >= 2 * static_cast<long>(d + 1)) {
    ++d;
    h = powmod(h, p, f);
    Poly<F> g = gcd(h - t, f);
    if (!g.is_one()) {
      out.emplace_back(g, d);
      f = exact_div(f, g);
      h = h % f;
    }
  }
  if (f.degree() >= 1) out.emplace_back(f.monic(), static_cast<unsigned>(f.degree()));
  return out;
}

template <class F>
void linear_roots(const Poly<F>& f, std::vector<Poly<F>>& out) {
  const F& k = f.field();
  const std::uint64_t p = k.characteristic();
  for (std::uint64_t a = 0; a < p && static_cast<long>(out.size()) < f.degree(); ++a) {
    if (k.is_zero(f.eval(a))) out.push_back(Poly<F>(k, {k.neg(a), k.one()}));
  }
}

/// Splits f (monic squarefree, every irreducible factor of degree d) into its
/// irreducible factors.
template <class F, class Rng>
void equal_degree(const Poly<F>& f, unsigned d, Rng& rng, std::vector<Poly<F>>& out) {
  const long n = f.degree();
  if (n == static_cast<long>(d)) {
    out.push_back(f);
    return;
  }
  const F& k = f.field();
  const std::uint64_t p = k.characteristic();
  if (d == 1 && n <= 3 && p <= (std::uint64_t{1} << 20)) {
    std::vector<Poly<F>> roots;
    linear_roots(f, roots);
    if (static_cast<long>(roots.size()) != n)
      throw ConsistencyError("root search found " + std::to_string(roots.size()) + " of " +
                             std::to_string(n) + " roots");
    out.insert(out.end(), roots.begin(), roots.end());
    return;
  }
  mpz_class q;
  mpz_ui_pow_ui(q.get_mpz_t(), static_cast<unsigned long>(p), d);
  const mpz_class e = (q - 1) / 2;
  std::uniform_int_distribution<std::uint64_t> coin(0, p - 1);
  for (;;) {
    std::vector<std::uint64_t> a(static_cast<std::size_t>(n));
    for (auto& x : a) x = coin(rng);
    Poly<F> ap(k, std::move(a));
    if (ap.degree() < 1) continue;
    Poly<F> g = gcd(ap, f);
    if (g.is_one()) g = gcd(powmod(ap, e, f) - Poly<F>::one(k), f);
    if (g.degree() >= 1 && g.degree() < n) {
      equal_degree(g, d, rng, out);
      equal_degree(exact_div(f, g), d, rng, out);
      return;
    }
  }
}

}  // namespace detail

/// Complete factorization over F_p into monic irreducibles with
/// multiplicities, sorted canonically. Randomized splitting is seeded.
template <class F>
FactorList<F> factor_irreducible(const Poly<F>& f, std::uint64_t seed = kDefaultSeed) {
  if constexpr (!F::is_finite) {
    throw DomainError("irreducible factorization over Q is not supported; use "
                      "squarefree_decompose and gcd-free bases");
  } else {
    if (f.is_zero()) throw DomainError("factorization of the zero polynomial");
    std::mt19937_64 rng(seed);
    FactorList<F> out;
    for (const auto& [g, e] : squarefree_decompose(f)) {
      for (const auto& [h, d] : detail::distinct_degree(g)) {
        std::vector<Poly<F>> parts;
        detail::equal_degree(h, d, rng, parts);
        for (auto& q : parts) out.emplace_back(std::move(q), e);
      }
    }
    detail::sort_factors(out);
    return out;
  }
}

/// Rabin-style irreducibility test over F_p.
template <class F>
bool is_irreducible(const Poly<F>& f) {
  static_assert(F::is_finite);
  if (f.degree() < 1) return false;
  Poly<F> m = f.monic();
  const auto dd = detail::distinct_degree(squarefree_part(m));
  return squarefree_part(m) == m && dd.size() == 1 &&
         static_cast<long>(dd.front().second) == m.degree();
}

/// Refines a family of polynomials to pairwise-coprime monic squarefree
/// elements such that every squarefree factor of every input is a product of
/// basis elements. Works without irreducible factorization.
template <class F>
std::vector<Poly<F>> gcd_free_basis(const std::vector<Poly<F>>& inputs) {
  std::vector<Poly<F>> pending;
  for (const auto& f : inputs) {
    if (f.degree() < 1) continue;
    for (auto& [g, e] : squarefree_decompose(f)) pending.push_back(g);
  }
  std::vector<Poly<F>> basis;
  while (!pending.empty()) {
    Poly<F> a = pending.back().monic();
    pending.pop_back();
    if (a.degree() < 1) continue;
    bool split = false;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      Poly<F> g = gcd(a, basis[i]);
      if (g.degree() < 1) continue;
      Poly<F> b = basis[i];
      basis.erase(basis.begin() + static_cast<long>(i));
      pending.push_back(g);
      pending.push_back(exact_div(a, g));
      pending.push_back(exact_div(b, g));
      split = true;
      break;
    }
    if (!split) basis.push_back(a);
  }
  std::sort(basis.begin(), basis.end());
  return basis;
}

}  // namespace zsigff
