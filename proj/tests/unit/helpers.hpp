#pragma once

#include <random>
#include <string>

#include "zsigff/parse.hpp"
#include "zsigff/supersingular.hpp"

namespace th {

using namespace zsigff;

inline const PrimeField F3(3), F5(5), F7(7);
inline const RationalField QQ;

template <class F>
Poly<F> P(const F& k, const std::string& s) {
  return parse_poly(s, k);
}

template <class F>
RatFunc<F> R(const F& k, const std::string& s) {
  return parse_ratfunc(s, k);
}

template <class F>
Curve<F> curve(const F& k, const std::string& A, const std::string& B) {
  return Curve<F>(R(k, A), R(k, B));
}

template <class F>
Point<F> pt(const F& k, const std::string& x, const std::string& y) {
  return Point<F>::affine(R(k, x), R(k, y));
}

template <class F>
Place<F> place(const F& k, const std::string& s) {
  return s == "inf" ? Place<F>::infinity() : Place<F>::finite(P(k, s));
}

inline Poly<PrimeField> random_poly(const PrimeField& k, std::mt19937_64& rng, int max_deg) {
  std::uniform_int_distribution<int> deg(0, max_deg);
  std::uniform_int_distribution<std::uint64_t> c(0, k.characteristic() - 1);
  std::vector<std::uint64_t> v(static_cast<std::size_t>(deg(rng)) + 1);
  for (auto& x : v) x = c(rng);
  return Poly<PrimeField>(k, v);
}

// y^2 = x^3 - t^2 x + t^2 over F_5(t), P = (t, t)
inline const Curve<PrimeField>& sample() {
  static const Curve<PrimeField> E = curve(F5, "-t^2", "t^2");
  return E;
}
inline Point<PrimeField> sampleP() { return pt(F5, "t", "t"); }

}  // namespace th
