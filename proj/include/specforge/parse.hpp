#pragma once

#include <cctype>
#include <string>

#include "specforge/bipoly.hpp"

namespace specforge {

// Recursive-descent parser for P(T, Y): integer literals, T, Y, + - * ^ and
// parentheses. Implicit multiplication is rejected on purpose ("2T" is a
// syntax error, not 2*T). Errors carry the byte offset of the offending
// character; running off the end points at the last character.
class PolyParser {
public:
  explicit PolyParser(std::string src) : src_(std::move(src)) {}

  BiPoly parse() {
    BiPoly r = parse_expr();
    skip_ws();
    if (pos_ < src_.size()) error("unexpected trailing input", pos_);
    return r;
  }

private:
  [[noreturn]] void error(const std::string& msg, std::size_t at) {
    throw SyntaxError(at, msg);
  }
  [[noreturn]] void error_eof(const std::string& msg) {
    error(msg, src_.empty() ? 0 : src_.size() - 1);
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ >= src_.size();
  }
  char peek() { return src_[pos_]; }

  BiPoly parse_expr() {
    skip_ws();
    bool negate = false;
    if (!at_end() && peek() == '-') {
      negate = true;
      ++pos_;
    }
    BiPoly acc = parse_term();
    if (negate) acc = acc * constant(-1);
    while (!at_end()) {
      char c = peek();
      if (c != '+' && c != '-') break;
      ++pos_;
      BiPoly term = parse_term();
      acc = c == '+' ? acc + term : acc + term * constant(-1);
    }
    return acc;
  }

  BiPoly parse_term() {
    BiPoly acc = parse_factor();
    while (!at_end() && peek() == '*') {
      ++pos_;
      acc = acc * parse_factor();
    }
    return acc;
  }

  BiPoly parse_factor() {
    BiPoly base = parse_base();
    skip_ws();
    if (pos_ < src_.size() && peek() == '^') {
      ++pos_;
      skip_ws();
      if (pos_ >= src_.size()) error_eof("expected exponent");
      std::size_t at = pos_;
      if (!std::isdigit(static_cast<unsigned char>(peek())))
        error("expected a nonnegative integer exponent", at);
      long e = 0;
      while (pos_ < src_.size() &&
             std::isdigit(static_cast<unsigned char>(peek()))) {
        e = e * 10 + (peek() - '0');
        if (e > 64) error("exponent too large", at);
        ++pos_;
      }
      BiPoly acc = constant(1);
      for (long i = 0; i < e; ++i) acc = acc * base;
      return acc;
    }
    return base;
  }

  BiPoly parse_base() {
    skip_ws();
    if (pos_ >= src_.size()) error_eof("expected a value");
    char c = peek();
    std::size_t at = pos_;
    if (c == '(') {
      ++pos_;
      BiPoly inner = parse_expr();
      skip_ws();
      if (pos_ >= src_.size()) error_eof("expected ')'");
      if (peek() != ')') error("expected ')'", pos_);
      ++pos_;
      return inner;
    }
    if (c == 'T' || c == 'Y') {
      ++pos_;
      BiPoly v;
      v.add_term(c == 'T' ? 1 : 0, c == 'Y' ? 1 : 0, 1);
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Int value = 0;
      while (pos_ < src_.size() &&
             std::isdigit(static_cast<unsigned char>(peek()))) {
        value = value * 10 + (peek() - '0');
        ++pos_;
      }
      return constant(value);
    }
    error("expected an integer, T, Y, or '('", at);
  }

  static BiPoly constant(Int v) {
    BiPoly r;
    r.add_term(0, 0, std::move(v));
    return r;
  }

  std::string src_;
  std::size_t pos_ = 0;
};

struct PolyExpr {
  std::string source;
  BiPoly poly;
};

inline BiPoly parse_poly(const std::string& text) {
  return PolyParser(text).parse();
}

inline PolyExpr parse_poly_expr(const std::string& text) {
  return {text, parse_poly(text)};
}

}  // namespace specforge
