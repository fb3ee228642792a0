#include "relcheck/parse.hpp"

#include <cctype>

#include "relcheck/errors.hpp"

namespace relcheck {

namespace {

class Parser {
public:
  Parser(const std::string& text, const Chart& chart) : text_(text), chart_(chart) {}

  Expr run() {
    Expr e = expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char ch) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char ch) {
    if (!accept(ch)) fail(std::string("expected '") + ch + "'");
  }

  Expr expr() {
    Expr e = term();
    while (true) {
      if (accept('+'))
        e += term();
      else if (accept('-'))
        e -= term();
      else
        return e;
    }
  }

  Expr term() {
    Expr e = unary();
    while (true) {
      if (accept('*')) {
        e *= unary();
      } else if (accept('/')) {
        std::size_t at = pos_;
        Expr d = unary();
        if (d.is_zero()) throw ParseError("division by zero", at);
        try {
          e /= d;
        } catch (const DivisionByZero&) {
          throw ParseError("division by zero", at);
        }
      } else {
        return e;
      }
    }
  }

  Expr unary() {
    if (accept('-')) return -unary();
    return power();
  }

  Expr power() {
    Expr base = atom();
    if (!accept('^')) return base;
    skip();
    if (accept('(')) {
      Rational q = signed_rational();
      expect(')');
      if (q.get_den() == 1) return integer_power(base, q.get_num());
      try {
        return rational_power(base, q);
      } catch (const DivisionByZero&) {
        fail("division by zero");
      }
    }
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) fail("expected exponent");
    return integer_power(base, Integer(digits()));
  }

  Expr integer_power(const Expr& base, const Integer& k) {
    if (!k.fits_sint_p() || abs(k) > 1000) fail("exponent out of range");
    if (k < 0 && base.is_zero()) fail("division by zero");
    return base.pow(static_cast<int>(k.get_si()));
  }

  std::string digits() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return text_.substr(start, pos_ - start);
  }

  Rational signed_rational() {
    skip();
    bool negative = accept('-');
    skip();
    std::string n = digits();
    if (n.empty()) fail("expected rational exponent");
    Rational q{Integer(n)};
    if (accept('/')) {
      skip();
      std::string d = digits();
      if (d.empty()) fail("expected denominator");
      Integer den(d);
      if (den == 0) fail("zero denominator");
      q = Rational(Integer(n), den);
      q.canonicalize();
    }
    return negative ? Rational(-q) : q;
  }

  Expr atom() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char ch = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(ch))) return Expr(Rational(Integer(digits())));
    if (ch == '(') {
      ++pos_;
      Expr e = expr();
      expect(')');
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(ch))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string name = text_.substr(start, pos_ - start);
      unsigned order = 0;
      while (pos_ < text_.size() && text_[pos_] == '\'') {
        ++order;
        ++pos_;
      }
      skip();
      bool call = pos_ < text_.size() && text_[pos_] == '(';
      if (name == "sqrt" && order == 0 && call) {
        ++pos_;
        Expr arg = expr();
        expect(')');
        try {
          return sqrt(arg);
        } catch (const DomainError& e) {
          throw ParseError(e.what(), start);
        }
      }
      if (chart_.is_function(name)) {
        if (!call) throw ParseError("function " + name + " needs an argument", pos_);
        ++pos_;
        Expr arg = expr();
        expect(')');
        return apply_function(name, order, arg);
      }
      if (order > 0) throw ParseError("unknown function " + name, start);
      if (auto v = chart_.lookup(name)) return Expr::symbol(*v);
      throw ParseError("unknown identifier " + name, start);
    }
    fail("unexpected '" + std::string(1, ch) + "'");
  }

  const std::string& text_;
  const Chart& chart_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse(const std::string& text, const Chart& chart) { return Parser(text, chart).run(); }

Expr normalize(const Expr& e, const Chart& chart) {
  for (Var v : e.atoms()) {
    if (kind_of(v) != SymbolKind::Plain) continue;
    if (!chart.lookup(symbols().info(v).name)) throw DomainError("symbol " + symbols().display_name(v) + " is not on chart " + chart.name());
  }
  return e;
}

}  // namespace relcheck
