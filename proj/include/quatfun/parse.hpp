#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "conj_rational.hpp"
#include "errors.hpp"
#include "qfunction.hpp"

namespace quatfun {

/// Exact rational from a decimal literal such as "-1.25" or "3e-2".
inline Rational parse_decimal(std::string_view s) {
  std::size_t i = 0;
  bool neg = false;
  if (i < s.size() && (s[i] == '-' || s[i] == '+'))
    neg = s[i++] == '-';
  std::string digits;
  long scale = 0;
  bool any = false, dot = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits += c;
      any = true;
      if (dot)
        --scale;
    } else if (c == '.' && !dot) {
      dot = true;
    } else {
      break;
    }
  }
  if (!any)
    throw ParseError(0, "number", s.empty() ? "end of input" : "'" + std::string(s) + "'");
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    std::size_t start = i;
    if (i < s.size() && (s[i] == '-' || s[i] == '+'))
      ++i;
    std::size_t dstart = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
      ++i;
    if (i == dstart)
      throw ParseError(i, "exponent digits", "'" + std::string(s.substr(start)) + "'");
    scale += std::stol(std::string(s.substr(start, i - start)));
  }
  if (i != s.size())
    throw ParseError(i, "end of number", "'" + std::string(s.substr(i)) + "'");
  mpz_class num(digits, 10), den(1);
  mpz_class ten(10);
  mpz_class p;
  mpz_pow_ui(p.get_mpz_t(), ten.get_mpz_t(), static_cast<unsigned long>(scale < 0 ? -scale : scale));
  Rational r = scale < 0 ? Rational(num, p) : Rational(num * p, den);
  r.canonicalize();
  return neg ? Rational(-r) : r;
}

/// Recursive-descent parser for rational functions in z1, z2, c1, c2
/// (c_k = conj(z_k)). Grammar:
///
///   function := expr [';' expr]
///   expr     := term {('+' | '-') term}
///   term     := unary {('*' | '/') unary}
///   unary    := ('+' | '-') unary | power
///   power    := primary ['^' integer]
///   primary  := number ['i'] | 'i' | variable | '(' expr ')'
///
/// Division is accepted only by real-valued rationals or by constants.
class Parser {
public:
  explicit Parser(std::string_view text) : s_(text) {}

  ConjRational parse_rational() {
    ConjRational r = expr();
    expect_end();
    return r;
  }

  QFunction parse_function() {
    ConjRational f1 = expr();
    skip_ws();
    ConjRational f2;
    if (peek() == ';') {
      ++pos_;
      f2 = expr();
    }
    expect_end();
    return {std::move(f1), std::move(f2)};
  }

private:
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }
  std::string found() {
    skip_ws();
    if (pos_ >= s_.size())
      return "end of input";
    return "'" + std::string(1, s_[pos_]) + "'";
  }
  void expect_end() {
    if (peek() != '\0')
      throw ParseError(pos_, "operator or end of input", found());
  }

  ConjRational expr() {
    ConjRational r = term();
    for (;;) {
      char c = peek();
      if (c == '+') {
        ++pos_;
        r += term();
      } else if (c == '-') {
        ++pos_;
        r -= term();
      } else {
        return r;
      }
    }
  }

  ConjRational term() {
    ConjRational r = unary();
    for (;;) {
      char c = peek();
      if (c == '*') {
        ++pos_;
        r *= unary();
      } else if (c == '/') {
        std::size_t at = pos_++;
        ConjRational d = unary();
        if (d.is_zero())
          throw ParseError(at, "nonzero divisor", "division by zero");
        if (d.is_constant())
          r = r.scaled(ExactComplex(1) / d.num().constant_term());
        else if (d.is_real())
          r = r.divided_by_real(d);
        else
          throw ParseError(at, "real-valued divisor", "complex-valued expression");
      } else {
        return r;
      }
    }
  }

  ConjRational unary() {
    char c = peek();
    if (c == '-') {
      ++pos_;
      return -unary();
    }
    if (c == '+') {
      ++pos_;
      return unary();
    }
    return power();
  }

  ConjRational power() {
    ConjRational base = primary();
    if (peek() != '^')
      return base;
    ++pos_;
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
    if (start == pos_)
      throw ParseError(pos_, "non-negative integer exponent", found());
    unsigned long n = std::stoul(std::string(s_.substr(start, pos_ - start)));
    if (n > 64)
      throw ParseError(start, "exponent at most 64", std::to_string(n));
    ConjRational r(1L);
    for (unsigned long k = 0; k < n; ++k)
      r *= base;
    return r;
  }

  ConjRational primary() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      ConjRational r = expr();
      if (peek() != ')')
        throw ParseError(pos_, "')'", found());
      ++pos_;
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.'))
        ++pos_;
      Rational v;
      try {
        v = parse_decimal(s_.substr(start, pos_ - start));
      } catch (const ParseError &) {
        throw ParseError(start, "number", "'" + std::string(s_.substr(start, pos_ - start)) + "'");
      }
      if (pos_ < s_.size() && s_[pos_] == 'i') {
        ++pos_;
        return ConjRational(ExactComplex(0, v));
      }
      return ConjRational(ExactComplex(v));
    }
    if (c == 'i') {
      ++pos_;
      return ConjRational(ExactComplex(0, 1));
    }
    if ((c == 'z' || c == 'c') && pos_ + 1 < s_.size() && (s_[pos_ + 1] == '1' || s_[pos_ + 1] == '2')) {
      Var v = c == 'z' ? (s_[pos_ + 1] == '1' ? Var::z1 : Var::z2)
                       : (s_[pos_ + 1] == '1' ? Var::z1bar : Var::z2bar);
      pos_ += 2;
      return ConjRational(ConjPoly::variable(v));
    }
    throw ParseError(pos_, "number, variable (z1, z2, c1, c2), 'i' or '('", found());
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

inline ConjRational parse_rational(std::string_view text) { return Parser(text).parse_rational(); }
inline QFunction parse_function(std::string_view text) { return Parser(text).parse_function(); }

} // namespace quatfun
