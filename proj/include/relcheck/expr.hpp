#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "relcheck/poly.hpp"
#include "relcheck/rational.hpp"
#include "relcheck/symbols.hpp"

namespace relcheck {

/// Exact symbolic scalar in canonical form: numerator / denominator with
///  - numerator reduced so every extension symbol has degree < 2,
///  - denominator free of extension symbols, monic, coprime to the numerator.
/// The denominator is also kept as a list of monic factors to make cancellation cheap.
/// Values are immutable; all operations return new canonical values.
class Expr {
public:
  struct Factor {
    Poly poly;
    unsigned exponent;
  };

  Expr() = default;
  Expr(long c) : Expr(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  Expr(int c) : Expr(Rational(c)) {}   // NOLINT(google-explicit-constructor)
  Expr(const Rational& c);             // NOLINT(google-explicit-constructor)
  static Expr symbol(Var v);
  static Expr from_poly(const Poly& p);
  /// Canonicalizes num / den.
  static Expr fraction(const Poly& num, const Poly& den);

  const Poly& numerator() const noexcept { return num_; }
  const Poly& denominator() const noexcept { return den_; }
  const std::vector<Factor>& denominator_factors() const noexcept { return factors_; }

  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_constant() const noexcept { return num_.is_constant() && den_.is_constant(); }
  std::optional<Rational> constant_value() const;
  bool is_polynomial() const noexcept { return factors_.empty(); }
  /// Every symbol or atom occurring in the canonical form.
  std::vector<Var> atoms() const;

  Expr operator-() const;
  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  /// Throws DivisionByZero if b is zero (or a zero divisor of the extension ring).
  friend Expr operator/(const Expr& a, const Expr& b);
  Expr& operator+=(const Expr& b) { return *this = *this + b; }
  Expr& operator-=(const Expr& b) { return *this = *this - b; }
  Expr& operator*=(const Expr& b) { return *this = *this * b; }
  Expr& operator/=(const Expr& b) { return *this = *this / b; }
  Expr pow(int k) const;

  friend bool operator==(const Expr& a, const Expr& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }
  friend bool operator<(const Expr& a, const Expr& b) {
    if (a.num_ != b.num_) return a.num_ < b.num_;
    return a.den_ < b.den_;
  }

  /// Canonical text; reparses to the same value.
  std::string str() const;

private:
  static Expr canonical(Poly num, std::vector<Factor> factors);
  Poly num_;
  std::vector<Factor> factors_;
  Poly den_ = Poly(1);
};

std::string to_string(const Poly& p);
std::string to_string(const Expr& e);

/// Reduce extension symbols to degree < 2 using s^2 = radicand.
Poly reduce_extensions(const Poly& p);

/// Positive square root. Exact rational roots of constants are taken directly;
/// otherwise the extension symbol with that radicand is introduced or reused.
Expr sqrt(const Expr& radicand);
/// base^exponent for rational exponents; half-integers go through sqrt, other
/// fractional parts through a power atom.
Expr rational_power(const Expr& base, const Rational& exponent);
/// head^(order)(argument) as an opaque atom.
Expr apply_function(const std::string& head, unsigned order, const Expr& argument);

/// Partial derivative with respect to a plain symbol, with the chain rule through
/// extension symbols, opaque functions and power atoms.
Expr diff(const Expr& e, Var symbol);

/// Unary template used to bind an opaque function head: head(u) := body[formal := u].
struct FunctionTemplate {
  Var formal;
  Expr body;
};

struct Bindings {
  std::map<Var, Expr> symbols;  ///< plain symbols (extension symbols may be bound too)
  std::map<std::string, FunctionTemplate> functions;
};

/// Simultaneous substitution followed by canonicalization.
Expr substitute(const Expr& e, const Bindings& bindings);
Expr substitute(const Expr& e, Var symbol, const Expr& value);

/// Rational point: values for plain symbols, optionally explicit values for
/// extension symbols (checked against their radicand).
struct Point {
  std::map<Var, Rational> values;
  std::map<Var, Rational> extensions;
};

/// Exact value at a point. Throws EvaluationError on a pole, an unbound symbol,
/// an opaque atom or an irrational extension branch that was not supplied.
Rational eval_rational(const Expr& e, const Point& point);

/// is_zero on the canonical form; the sole equality oracle.
inline bool is_zero(const Expr& e) { return e.is_zero(); }

}  // namespace relcheck
