#include <germinv/parser.hpp>

#include <germinv/errors.hpp>

#include <algorithm>
#include <cctype>
#include <sstream>

namespace germinv {

namespace {

constexpr long kMaxExponent = 4096;

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  BivarPoly parse() {
    skip_ws();
    if (at_end()) fail(ErrorKind::SyntaxError, "empty input");
    BivarPoly p = expr();
    skip_ws();
    if (!at_end()) fail(ErrorKind::SyntaxError, std::string("unexpected '") + peek() + "'");
    return p;
  }

 private:
  BivarPoly expr() {
    skip_ws();
    bool negate = false;
    if (peek() == '-') {
      negate = true;
      ++pos_;
    }
    BivarPoly acc = term();
    if (negate) acc = -acc;
    while (true) {
      skip_ws();
      const char c = peek();
      if (c != '+' && c != '-') break;
      ++pos_;
      BivarPoly t = term();
      if (c == '+') {
        acc += t;
      } else {
        acc -= t;
      }
    }
    return acc;
  }

  BivarPoly term() {
    BivarPoly acc = factor();
    while (true) {
      skip_ws();
      const char c = peek();
      if (c == '*') {
        ++pos_;
        acc = acc * factor();
        continue;
      }
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '(') {
        fail(ErrorKind::SyntaxError, "implicit multiplication is not allowed; use '*'");
      }
      break;
    }
    return acc;
  }

  BivarPoly factor() {
    BivarPoly b = base();
    skip_ws();
    if (peek() != '^') return b;
    ++pos_;
    skip_ws();
    if (peek() == '-') fail(ErrorKind::NegativeExponent, "negative exponent");
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail(ErrorKind::SyntaxError, "expected exponent");
    const std::size_t start = pos_;
    long k = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      k = k * 10 + (peek() - '0');
      ++pos_;
      if (k > kMaxExponent) {
        pos_ = start;
        fail(ErrorKind::SyntaxError, "exponent too large");
      }
    }
    return b.pow(static_cast<int>(k));
  }

  BivarPoly base() {
    skip_ws();
    const char c = peek();
    if (c == 'x') {
      ++pos_;
      return BivarPoly::x();
    }
    if (c == 'y') {
      ++pos_;
      return BivarPoly::y();
    }
    if (c == '(') {
      ++pos_;
      BivarPoly inner = expr();
      skip_ws();
      if (peek() != ')') fail(ErrorKind::SyntaxError, "expected ')'");
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return BivarPoly::constant(rational());
    if (std::isalpha(static_cast<unsigned char>(c))) {
      fail(ErrorKind::UnknownVariable, std::string("unknown variable '") + c + "'");
    }
    if (at_end()) fail(ErrorKind::SyntaxError, "unexpected end of input");
    fail(ErrorKind::SyntaxError, std::string("unexpected '") + c + "'");
  }

  Rational rational() {
    Integer num = digits();
    skip_ws();
    if (peek() != '/') return Rational(num);
    ++pos_;
    skip_ws();
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail(ErrorKind::SyntaxError, "expected denominator");
    const std::size_t start = pos_;
    Integer den = digits();
    if (den == 0) {
      pos_ = start;
      fail(ErrorKind::SyntaxError, "zero denominator");
    }
    return make_rational(num, den);
  }

  Integer digits() {
    const std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    return Integer(std::string(text_.substr(start, pos_ - start)));
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  [[noreturn]] void fail(ErrorKind kind, const std::string& msg) const {
    if (!at_end() && static_cast<unsigned char>(text_[pos_]) > 127) {
      throw ParseError(ErrorKind::SyntaxError, pos_, "non-ASCII input");
    }
    throw ParseError(kind, pos_, msg);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

BivarPoly parse_poly(std::string_view text) { return Parser(text).parse(); }

std::string to_string(const BivarPoly& p) {
  if (p.is_zero()) return "0";
  std::vector<std::pair<Exponent, Rational>> terms(p.terms().begin(), p.terms().end());
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    if (a.first.total() != b.first.total()) return a.first.total() < b.first.total();
    return a.first.i > b.first.i;
  });
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms) {
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    const Rational mag = abs(c);
    bool need_star = false;
    if (mag != 1 || e.total() == 0) {
      os << mag.get_str();
      need_star = true;
    }
    auto var = [&](char v, int k) {
      if (k == 0) return;
      if (need_star) os << "*";
      os << v;
      if (k > 1) os << "^" << k;
      need_star = true;
    };
    var('x', e.i);
    var('y', e.j);
  }
  return os.str();
}

}  // namespace germinv
