#pragma once

#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "zsigff/ratfunc.hpp"

namespace zsigff {

namespace detail {

// expr    := term (('+' | '-') term)*
// term    := unary (('*' | '/') unary)*
// unary   := ('+' | '-') unary | power
// power   := primary ('^' digits)?
// primary := digits | 't' | '(' expr ')'
template <class F>
class ExprParser {
 public:
  ExprParser(std::string_view text, const F& field) : s_(text), field_(field) {}

  RatFunc<F> parse_all() {
    RatFunc<F> r = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
    return r;
  }

  /// `O` for the identity, otherwise `(x, y)`.
  std::optional<std::pair<RatFunc<F>, RatFunc<F>>> parse_point() {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == 'O') {
      ++pos_;
      skip_ws();
      if (pos_ != s_.size()) fail("trailing input after O");
      return std::nullopt;
    }
    expect('(');
    RatFunc<F> x = expr();
    expect(',');
    RatFunc<F> y = expr();
    expect(')');
    skip_ws();
    if (pos_ != s_.size()) fail("trailing input after point");
    return std::make_pair(std::move(x), std::move(y));
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= s_.size() || s_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  RatFunc<F> expr() {
    RatFunc<F> acc = term();
    for (;;) {
      skip_ws();
      if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) {
        char op = s_[pos_++];
        RatFunc<F> rhs = term();
        acc = op == '+' ? acc + rhs : acc - rhs;
      } else {
        return acc;
      }
    }
  }

  RatFunc<F> term() {
    RatFunc<F> acc = unary();
    for (;;) {
      skip_ws();
      if (pos_ < s_.size() && (s_[pos_] == '*' || s_[pos_] == '/')) {
        const std::size_t at = pos_;
        char op = s_[pos_++];
        RatFunc<F> rhs = unary();
        if (op == '*') {
          acc = acc * rhs;
        } else {
          if (rhs.is_zero()) throw ParseError("division by zero", at);
          acc = acc / rhs;
        }
      } else {
        return acc;
      }
    }
  }

  RatFunc<F> unary() {
    skip_ws();
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
      char op = s_[pos_++];
      RatFunc<F> v = unary();
      return op == '-' ? -v : v;
    }
    return power();
  }

  RatFunc<F> power() {
    RatFunc<F> base = primary();
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == '^') {
      ++pos_;
      skip_ws();
      if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
        fail("expected a nonnegative integer exponent");
      mpz_class e = digits();
      if (e > 1000000) fail("exponent too large");
      return base.pow(e.get_si());
    }
    return base;
  }

  RatFunc<F> primary() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpz_class v = digits();
      return RatFunc<F>::constant(field_, field_.from_mpz(v));
    }
    if (c == 't') {
      ++pos_;
      return RatFunc<F>::variable(field_);
    }
    if (c == '(') {
      ++pos_;
      RatFunc<F> v = expr();
      expect(')');
      return v;
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  mpz_class digits() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return mpz_class(std::string(s_.substr(start, pos_ - start)));
  }

  std::string_view s_;
  const F& field_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses a rational function in t. Integer literals are reduced mod p over F_p.
template <class F>
RatFunc<F> parse_ratfunc(std::string_view text, const F& field) {
  return detail::ExprParser<F>(text, field).parse_all();
}

/// Parses a polynomial; rejects expressions with a nontrivial denominator.
template <class F>
Poly<F> parse_poly(std::string_view text, const F& field) {
  RatFunc<F> r = parse_ratfunc(text, field);
  if (!r.is_polynomial()) throw ParseError("expected a polynomial, got " + r.to_string(), 0);
  return r.num();
}

/// Parses `(x, y)` or `O`; std::nullopt means the identity.
template <class F>
std::optional<std::pair<RatFunc<F>, RatFunc<F>>> parse_point_coords(std::string_view text,
                                                                    const F& field) {
  return detail::ExprParser<F>(text, field).parse_point();
}

}  // namespace zsigff
