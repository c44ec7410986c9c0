#ifndef DETSING_PARSE_HPP
#define DETSING_PARSE_HPP

#include <cctype>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

#include "detsing/polynomial.hpp"

namespace detsing {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : std::runtime_error(format(what, line, column)), line_(line), column_(column), message_(what) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& message() const { return message_; }

  /// Same error relocated to a position inside a larger document.
  ParseError at(std::size_t line, std::size_t column_offset) const {
    return ParseError(message_, line, column_ + column_offset);
  }

 private:
  static std::string format(const std::string& what, std::size_t line, std::size_t column) {
    return std::to_string(line) + ":" + std::to_string(column) + ": " + what;
  }
  std::size_t line_, column_;
  std::string message_;
};

/// Integer-valued names usable as exponents, e.g. k in `y^k`.
using ParamMap = std::map<std::string, long>;

namespace detail {

// Recursive-descent parser for
//   poly   := ['+'|'-'] term (('+'|'-') term)*
//   term   := coeff ('*' factor)* | factor ('*' factor)*
//   factor := var ('^' exp)? | '(' poly ')' ('^' exp)?
//   coeff  := int ('/' int)?
//   exp    := int | param
class PolyParser {
 public:
  PolyParser(std::string_view text, RingPtr ring, const ParamMap& params, std::size_t line)
      : text_(text), ring_(std::move(ring)), params_(params), line_(line) {}

  Polynomial parse() {
    skip_ws();
    if (at_end()) fail("empty polynomial");
    Polynomial p = poly();
    skip_ws();
    if (!at_end()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return p;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, pos_ + 1); }

  Polynomial poly() {
    skip_ws();
    bool negate = false;
    if (peek() == '+' || peek() == '-') {
      negate = peek() == '-';
      ++pos_;
    }
    Polynomial acc = term();
    if (negate) acc = -acc;
    for (;;) {
      skip_ws();
      char c = peek();
      if (c != '+' && c != '-') break;
      ++pos_;
      Polynomial t = term();
      acc = c == '+' ? acc + t : acc - t;
    }
    return acc;
  }

  Polynomial term() {
    skip_ws();
    Polynomial acc(ring_, Rational(1));
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      acc = Polynomial(ring_, coeff());
    } else {
      acc = factor();
    }
    for (;;) {
      skip_ws();
      if (peek() != '*') break;
      ++pos_;
      acc *= factor();
    }
    skip_ws();
    if (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '(' || peek() == '_'))
      fail("implicit multiplication is not allowed; use '*'");
    return acc;
  }

  Rational coeff() {
    Integer num = integer();
    skip_ws();
    if (peek() == '/') {
      ++pos_;
      skip_ws();
      Integer den = integer();
      if (den == 0) fail("zero denominator");
      Rational q(num, den);
      q.canonicalize();
      return q;
    }
    return Rational(num);
  }

  Integer integer() {
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return Integer(std::string(text_.substr(start, pos_ - start)));
  }

  std::string identifier() {
    std::size_t start = pos_;
    if (!at_end() && (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_')) {
      ++pos_;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  unsigned exponent() {
    skip_ws();
    std::size_t start = pos_;
    long e;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      Integer v = integer();
      if (!v.fits_slong_p()) fail("exponent too large");
      e = v.get_si();
    } else {
      std::string name = identifier();
      if (name.empty()) fail("expected an exponent");
      auto it = params_.find(name);
      if (it == params_.end()) {
        pos_ = start;
        fail("unknown parameter '" + name + "' in exponent");
      }
      e = it->second;
    }
    if (e < 0 || e > 4096) {
      pos_ = start;
      fail("exponent out of range");
    }
    return static_cast<unsigned>(e);
  }

  Polynomial factor() {
    skip_ws();
    Polynomial base(ring_);
    if (peek() == '(') {
      ++pos_;
      base = poly();
      skip_ws();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
    } else {
      std::size_t start = pos_;
      std::string name = identifier();
      if (name.empty()) {
        if (at_end()) fail("unexpected end of input");
        fail(std::string("unexpected '") + peek() + "'");
      }
      auto idx = ring_->index_of(name);
      if (!idx) {
        pos_ = start;
        fail("unknown variable '" + name + "'");
      }
      base = Polynomial::variable(ring_, *idx);
    }
    skip_ws();
    if (peek() == '^') {
      ++pos_;
      base = base.pow(exponent());
    }
    return base;
  }

  std::string_view text_;
  RingPtr ring_;
  const ParamMap& params_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses a polynomial string. Errors carry 1-based line/column (line is the
/// caller's context; standalone strings use line 1).
inline Polynomial parse_polynomial(std::string_view text, const RingPtr& ring, const ParamMap& params = {},
                                   std::size_t line = 1) {
  return detail::PolyParser(text, ring, params, line).parse();
}

}  // namespace detsing

#endif  // DETSING_PARSE_HPP
