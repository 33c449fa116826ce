#pragma once

#include <cctype>
#include <stdexcept>
#include <string>

#include "surfinv/mpoly.hpp"

namespace surfinv {

/// Recursive-descent parser for polynomial expressions in the style of the
/// appendix listings: integers, fractions p/q, named variables, the field
/// generator, '+', '-', '*', '^', parentheses. Whitespace and newlines ignored.
class PolyParser {
 public:
  PolyParser(FieldPtr ctx, VarsPtr vars) : ctx_(std::move(ctx)), vars_(std::move(vars)) {}

  MPoly parse(const std::string& text) const {
    Cursor cur{text, 0};
    MPoly p = parse_expr(cur);
    skip_ws(cur);
    if (cur.pos != cur.s.size())
      throw std::invalid_argument("poly parse: trailing input at offset " +
                                  std::to_string(cur.pos));
    return p;
  }

 private:
  struct Cursor {
    const std::string& s;
    size_t pos;
  };

  static void skip_ws(Cursor& c) {
    while (c.pos < c.s.size() && std::isspace(static_cast<unsigned char>(c.s[c.pos]))) ++c.pos;
  }
  static bool eat(Cursor& c, char ch) {
    skip_ws(c);
    if (c.pos < c.s.size() && c.s[c.pos] == ch) {
      ++c.pos;
      return true;
    }
    return false;
  }
  static char peek(Cursor& c) {
    skip_ws(c);
    return c.pos < c.s.size() ? c.s[c.pos] : '\0';
  }

  MPoly parse_expr(Cursor& c) const {
    MPoly acc = zero();
    bool neg = false;
    if (eat(c, '-')) neg = true;
    else eat(c, '+');
    acc = acc + maybe_negate(parse_term(c), neg);
    while (true) {
      if (eat(c, '+')) acc = acc + parse_term(c);
      else if (eat(c, '-')) acc = acc - parse_term(c);
      else break;
    }
    return acc;
  }

  MPoly parse_term(Cursor& c) const {
    MPoly acc = parse_factor(c);
    while (true) {
      char ch = peek(c);
      if (ch == '*') {
        ++c.pos;
        acc = acc * parse_factor(c);
      } else if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '(') {
        acc = acc * parse_factor(c);  // implicit multiplication
      } else {
        break;
      }
    }
    return acc;
  }

  MPoly parse_factor(Cursor& c) const {
    bool neg = eat(c, '-');
    MPoly base = parse_atom(c);
    if (eat(c, '^')) {
      skip_ws(c);
      size_t start = c.pos;
      while (c.pos < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.pos]))) ++c.pos;
      if (c.pos == start) throw std::invalid_argument("poly parse: exponent expected");
      base = MPoly::pow(base, std::stoi(c.s.substr(start, c.pos - start)));
    }
    return maybe_negate(base, neg);
  }

  MPoly parse_atom(Cursor& c) const {
    skip_ws(c);
    if (c.pos >= c.s.size()) throw std::invalid_argument("poly parse: unexpected end");
    char ch = c.s[c.pos];
    if (ch == '(') {
      ++c.pos;
      MPoly inner = parse_expr(c);
      if (!eat(c, ')')) throw std::invalid_argument("poly parse: expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      size_t start = c.pos;
      while (c.pos < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.pos]))) ++c.pos;
      std::string num = c.s.substr(start, c.pos - start);
      if (c.pos < c.s.size() && c.s[c.pos] == '/') {
        ++c.pos;
        size_t dstart = c.pos;
        while (c.pos < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.pos]))) ++c.pos;
        if (c.pos == dstart) throw std::invalid_argument("poly parse: denominator expected");
        num += "/" + c.s.substr(dstart, c.pos - dstart);
      }
      return MPoly::constant(ctx_, vars_, NFElem(Rational::parse(num)));
    }
    if (std::isalpha(static_cast<unsigned char>(ch))) {
      size_t start = c.pos;
      while (c.pos < c.s.size() &&
             (std::isalnum(static_cast<unsigned char>(c.s[c.pos])) || c.s[c.pos] == '_' ||
              c.s[c.pos] == '\''))
        ++c.pos;
      std::string name = c.s.substr(start, c.pos - start);
      if (ctx_ && ctx_->degree() > 1 && name == ctx_->generator())
        return MPoly::constant(ctx_, vars_, NFElem::generator(ctx_));
      return MPoly::variable(ctx_, vars_, name);
    }
    throw std::invalid_argument(std::string("poly parse: unexpected character '") + ch + "'");
  }

  MPoly zero() const { return MPoly::zero(ctx_, vars_); }
  static MPoly maybe_negate(MPoly p, bool neg) { return neg ? -p : p; }

  FieldPtr ctx_;
  VarsPtr vars_;
};

inline MPoly parse_poly(const std::string& text, const FieldPtr& ctx, const VarsPtr& vars) {
  return PolyParser(ctx, vars).parse(text);
}

}  // namespace surfinv
