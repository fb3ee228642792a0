#pragma once

#include <boost/container/small_vector.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "relcheck/rational.hpp"

namespace relcheck {

/// Index of a symbol in the global symbol table. Smaller ids are more significant
/// in the lexicographic tie-break of the monomial order.
using Var = std::uint32_t;

/// Power product of variables, stored sparsely as (var, exponent) sorted by var.
class Monomial {
public:
  using Factor = std::pair<Var, std::uint32_t>;
  using Storage = boost::container::small_vector<Factor, 4>;

  Monomial() = default;
  static Monomial variable(Var v, std::uint32_t exponent = 1);

  const Storage& factors() const noexcept { return factors_; }
  std::uint32_t degree() const noexcept { return degree_; }
  std::uint32_t degree(Var v) const noexcept;
  bool is_one() const noexcept { return factors_.empty(); }

  Monomial operator*(const Monomial& other) const;
  /// Quotient if `divisor` divides this monomial.
  std::optional<Monomial> divide(const Monomial& divisor) const;
  Monomial without(Var v) const;
  Monomial with_exponent(Var v, std::uint32_t exponent) const;

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.degree_ == b.degree_ && a.factors_ == b.factors_;
  }
  /// Graded lexicographic comparison: negative if a < b.
  friend int compare(const Monomial& a, const Monomial& b);

  static Monomial gcd(const Monomial& a, const Monomial& b);

private:
  Storage factors_;
  std::uint32_t degree_ = 0;
};

struct Term {
  Monomial monomial;
  Rational coeff;
};

/// Sparse multivariate polynomial over Q. Terms are kept sorted by decreasing
/// graded-lex order with nonzero coefficients, so equal polynomials compare equal.
class Poly {
public:
  Poly() = default;
  Poly(const Rational& c);  // NOLINT(google-explicit-constructor)
  Poly(long c) : Poly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  static Poly variable(Var v);
  static Poly monomial(Monomial m, Rational c);
  /// Build from unsorted, possibly repeated terms.
  static Poly from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.is_one());
  }
  Rational constant_value() const;
  const Term& leading() const { return terms_.front(); }
  const Rational& leading_coeff() const { return terms_.front().coeff; }
  std::uint32_t total_degree() const;
  std::uint32_t degree(Var v) const;
  std::vector<Var> variables() const;
  bool contains(Var v) const;
  std::size_t size() const noexcept { return terms_.size(); }

  Poly operator-() const;
  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly scaled(const Rational& c) const;
  Poly times(const Monomial& m, const Rational& c) const;
  Poly pow(unsigned k) const;

  Poly derivative(Var v) const;
  /// Coefficients with respect to `v`, indexed by the power of `v`.
  std::vector<Poly> coefficients_in(Var v) const;
  static Poly from_coefficients(const std::vector<Poly>& coeffs, Var v);
  /// Replace variables by rational values; unmentioned variables stay symbolic.
  Poly evaluate(const std::map<Var, Rational>& values) const;

  /// Smallest monomial dividing every term.
  Monomial monomial_content() const;
  /// Positive rational c with this/c having coprime integer coefficients and
  /// positive leading coefficient (negative c when the leading coefficient is negative).
  Rational content() const;
  Poly primitive() const;
  Poly monic() const;

  friend bool operator==(const Poly& a, const Poly& b);
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }
  /// Total order for use as a map key.
  friend bool operator<(const Poly& a, const Poly& b);

private:
  std::vector<Term> terms_;
};

/// Quotient when `divisor` divides `dividend` exactly over Q.
std::optional<Poly> divide_exact(const Poly& dividend, const Poly& divisor);

/// Greatest common divisor over Q[vars], returned primitive with positive leading
/// coefficient. gcd(0, 0) = 0.
Poly gcd(const Poly& a, const Poly& b);

}  // namespace relcheck
