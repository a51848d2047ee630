#pragma once
// Recursive-descent parser for the expression grammar:
//   variables l[i,s], t1, t2, hbar; integer literals; + - * / ^ and
//   parentheses; ^ takes a nonnegative integer exponent; whitespace is
//   insignificant.  Rationals like 3/2 are ordinary division of literals.
// Errors carry the byte offset of the offending token.

#include <cctype>
#include <optional>
#include <stdexcept>
#include <string>

#include "rational_fn.hpp"

namespace coha {

struct ParseError : std::runtime_error {
  std::size_t position;
  ParseError(const std::string& what, std::size_t pos)
      : std::runtime_error(what + " (at offset " + std::to_string(pos) + ")"),
        position(pos) {}
};

namespace detail {

class ExprParser {
 public:
  explicit ExprParser(const std::string& text) : text_(text) {}

  RationalFn parse() {
    RationalFn e = expression();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  RationalFn expression() {
    RationalFn acc = term();
    for (;;) {
      skip_ws();
      if (consume('+'))
        acc += term();
      else if (consume('-'))
        acc -= term();
      else
        return acc;
    }
  }

  RationalFn term() {
    RationalFn acc = factor();
    for (;;) {
      skip_ws();
      if (consume('*')) {
        acc *= factor();
      } else if (consume('/')) {
        RationalFn d = factor();
        if (d.is_zero()) fail("division by zero");
        acc /= d;
      } else {
        return acc;
      }
    }
  }

  RationalFn factor() {
    skip_ws();
    if (consume('-')) return -factor();
    if (consume('+')) return factor();
    RationalFn base = primary();
    skip_ws();
    while (consume('^')) {
      skip_ws();
      base = base.pow(static_cast<int>(natural("exponent")));
      skip_ws();
    }
    return base;
  }

  RationalFn primary() {
    skip_ws();
    if (consume('(')) {
      RationalFn e = expression();
      skip_ws();
      if (!consume(')')) fail("expected ')'");
      return e;
    }
    if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
        ++pos_;
      return RationalFn(Rational(mpz_class(text_.substr(start, pos_ - start))));
    }
    if (pos_ < text_.size() &&
        (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      return variable();
    fail("expected a number, variable, or '('");
  }

  RationalFn variable() {
    std::size_t start = pos_;
    std::string id = identifier();
    if (id == "t1") return RationalFn::var(VariableId::t1());
    if (id == "t2") return RationalFn::var(VariableId::t2());
    if (id == "hbar") return RationalFn::var(VariableId::hbar());
    if (id == "l") {
      skip_ws();
      if (!consume('[')) fail("expected '[' after 'l'");
      skip_ws();
      std::string vertex = vertex_id();
      skip_ws();
      if (!consume(',')) fail("expected ',' in l[vertex,slot]");
      skip_ws();
      long slot = natural("slot");
      if (slot < 1) fail("lambda slot must be >= 1", start);
      skip_ws();
      if (!consume(']')) fail("expected ']'");
      return RationalFn::var(VariableId::lam(vertex, static_cast<int>(slot)));
    }
    fail("unknown variable name '" + id + "'", start);
  }

  std::string identifier() {
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    if (pos_ == start) fail("expected an identifier");
    return text_.substr(start, pos_ - start);
  }

  std::string vertex_id() {
    if (pos_ < text_.size() &&
        (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      return identifier();
    fail("expected a vertex id");
  }

  long natural(const char* what) {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    if (pos_ == start) fail(std::string("expected ") + what);
    const std::string digits = text_.substr(start, pos_ - start);
    if (digits.size() > 9) fail("integer literal too large", start);
    return std::stol(digits);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool consume(char c) {
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }
  [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
    throw ParseError(msg, at);
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline RationalFn parse_expression(const std::string& text) {
  return detail::ExprParser(text).parse();
}

}  // namespace coha
