#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "relcheck/chart.hpp"
#include "relcheck/errors.hpp"
#include "relcheck/expr.hpp"

namespace relcheck {

/// Strictly increasing tuple of coordinate positions.
using Index = std::vector<std::size_t>;

class VectorField {
public:
  explicit VectorField(ChartPtr chart);
  VectorField(ChartPtr chart, std::vector<Expr> components);
  /// The coordinate field d/d(coord i).
  static VectorField coordinate(ChartPtr chart, std::size_t i);
  static VectorField coordinate(ChartPtr chart, const std::string& name);

  const ChartPtr& chart() const noexcept { return chart_; }
  std::size_t dim() const noexcept { return components_.size(); }
  const std::vector<Expr>& components() const noexcept { return components_; }
  const Expr& operator[](std::size_t i) const { return components_.at(i); }
  Expr& operator[](std::size_t i) { return components_.at(i); }
  bool is_zero() const;

  /// X(f) = X^i df/dx^i.
  Expr apply(const Expr& f) const;

  VectorField operator-() const;
  friend VectorField operator+(const VectorField& a, const VectorField& b);
  friend VectorField operator-(const VectorField& a, const VectorField& b);
  friend VectorField operator*(const Expr& f, const VectorField& X);
  VectorField& operator+=(const VectorField& b) { return *this = *this + b; }
  VectorField& operator-=(const VectorField& b) { return *this = *this - b; }
  friend bool operator==(const VectorField& a, const VectorField& b);
  friend bool operator!=(const VectorField& a, const VectorField& b) { return !(a == b); }

  /// "comp*@coord + ..." text.
  std::string str() const;

private:
  ChartPtr chart_;
  std::vector<Expr> components_;
};

/// Totally antisymmetric tensor stored on increasing index tuples. The tag keeps
/// forms and multivector fields apart at compile time.
template <class Tag>
class Alternating {
public:
  Alternating(ChartPtr chart, std::size_t degree) : chart_(std::move(chart)), degree_(degree) {
    if (degree_ > chart_->dim()) throw DomainError("degree exceeds chart dimension");
  }
  static Alternating scalar(ChartPtr chart, const Expr& value) {
    Alternating a(std::move(chart), 0);
    a.add({}, value);
    return a;
  }
  /// Basis element for the given (not necessarily sorted) directions.
  static Alternating basis(ChartPtr chart, const Index& directions) {
    Alternating a(std::move(chart), directions.size());
    a.add(directions, Expr(1));
    return a;
  }

  const ChartPtr& chart() const noexcept { return chart_; }
  std::size_t degree() const noexcept { return degree_; }
  const std::map<Index, Expr>& coeffs() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }

  Expr get(const Index& idx) const {
    auto [sorted, sign] = canonical_order(idx);
    if (sign == 0) return Expr();
    auto it = coeffs_.find(sorted);
    if (it == coeffs_.end()) return Expr();
    return sign > 0 ? it->second : -it->second;
  }

  /// Adds value * e_{idx}, reordering idx with the permutation sign.
  void add(const Index& idx, const Expr& value) {
    if (idx.size() != degree_) throw DomainError("index length does not match degree");
    if (value.is_zero()) return;
    auto [sorted, sign] = canonical_order(idx);
    if (sign == 0) return;
    for (auto i : sorted)
      if (i >= chart_->dim()) throw DomainError("index out of range");
    auto it = coeffs_.find(sorted);
    Expr v = sign > 0 ? value : -value;
    if (it == coeffs_.end()) {
      coeffs_.emplace(std::move(sorted), v);
    } else {
      it->second += v;
      if (it->second.is_zero()) coeffs_.erase(it);
    }
  }

  /// Value of the form at a scalar (degree 0) or throws.
  Expr scalar_value() const {
    if (degree_ != 0) throw DomainError("not a scalar");
    return get({});
  }

  Alternating map(const std::function<Expr(const Expr&)>& f) const {
    Alternating out(chart_, degree_);
    for (const auto& [idx, c] : coeffs_) out.add(idx, f(c));
    return out;
  }

  Alternating operator-() const {
    Alternating out(chart_, degree_);
    for (const auto& [idx, c] : coeffs_) out.coeffs_.emplace(idx, -c);
    return out;
  }
  friend Alternating operator+(const Alternating& a, const Alternating& b) {
    check(a, b);
    Alternating out = a;
    for (const auto& [idx, c] : b.coeffs_) out.add(idx, c);
    return out;
  }
  friend Alternating operator-(const Alternating& a, const Alternating& b) { return a + (-b); }
  friend Alternating operator*(const Expr& f, const Alternating& a) {
    Alternating out(a.chart_, a.degree_);
    if (f.is_zero()) return out;
    for (const auto& [idx, c] : a.coeffs_) out.coeffs_.emplace(idx, f * c);
    return out;
  }
  friend bool operator==(const Alternating& a, const Alternating& b) {
    return a.degree_ == b.degree_ && (a - b).is_zero();
  }
  friend bool operator!=(const Alternating& a, const Alternating& b) { return !(a == b); }

  /// Sorted copy of idx and the sign of the sorting permutation (0 on repeats).
  static std::pair<Index, int> canonical_order(Index idx) {
    int sign = 1;
    for (std::size_t i = 1; i < idx.size(); ++i)
      for (std::size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
        if (idx[j - 1] == idx[j]) return {{}, 0};
        std::swap(idx[j - 1], idx[j]);
        sign = -sign;
      }
    return {idx, sign};
  }

private:
  static void check(const Alternating& a, const Alternating& b) {
    require_same_chart(a.chart_, b.chart_);
    if (a.degree_ != b.degree_) throw DomainError("degree mismatch");
  }

  ChartPtr chart_;
  std::size_t degree_;
  std::map<Index, Expr> coeffs_;
};

struct FormTag {};
struct MultivectorTag {};
using DifferentialForm = Alternating<FormTag>;
using MultivectorField = Alternating<MultivectorTag>;

/// (1,1)-tensor: entry (row, col) is the row component of T(d/dx^col).
class Tensor11 {
public:
  explicit Tensor11(ChartPtr chart);
  static Tensor11 identity(ChartPtr chart);
  /// T(X) = alpha(X) V.
  static Tensor11 outer(const VectorField& V, const DifferentialForm& alpha);

  const ChartPtr& chart() const noexcept { return chart_; }
  std::size_t dim() const noexcept { return chart_->dim(); }
  const Expr& operator()(std::size_t row, std::size_t col) const { return m_.at(row * dim() + col); }
  Expr& operator()(std::size_t row, std::size_t col) { return m_.at(row * dim() + col); }
  bool is_zero() const;

  VectorField apply(const VectorField& X) const;
  friend Tensor11 operator+(const Tensor11& a, const Tensor11& b);
  friend Tensor11 operator-(const Tensor11& a, const Tensor11& b);
  /// Composition: (a*b)(X) = a(b(X)).
  friend Tensor11 operator*(const Tensor11& a, const Tensor11& b);
  friend bool operator==(const Tensor11& a, const Tensor11& b) { return (a - b).is_zero(); }

private:
  ChartPtr chart_;
  std::vector<Expr> m_;
};

MultivectorField to_multivector(const VectorField& X);
VectorField to_vector_field(const MultivectorField& A);
/// The one-form df.
DifferentialForm differential(const ChartPtr& chart, const Expr& f);
/// One-form with the given components along dx^i.
DifferentialForm one_form(const ChartPtr& chart, const std::vector<Expr>& components);

VectorField lie_bracket(const VectorField& X, const VectorField& Y);
Expr lie_derivative(const VectorField& X, const Expr& f);
/// Cartan formula i_X d + d i_X.
DifferentialForm lie_derivative(const VectorField& X, const DifferentialForm& alpha);
/// [X, A] through the Schouten bracket.
MultivectorField lie_derivative(const VectorField& X, const MultivectorField& A);

/// Throws DomainError on a top-degree input.
DifferentialForm exterior_derivative(const DifferentialForm& alpha);
DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b);
MultivectorField wedge(const MultivectorField& a, const MultivectorField& b);
MultivectorField wedge(const VectorField& a, const VectorField& b);
/// alpha^k.
DifferentialForm wedge_power(const DifferentialForm& alpha, unsigned k);

/// Interior product i_X alpha.
DifferentialForm contract(const VectorField& X, const DifferentialForm& alpha);
/// i_A alpha with i_{X1^...^Xk} = i_Xk o ... o i_X1, so a bivector contracted
/// with df^dg gives A(df, dg).
DifferentialForm contract(const MultivectorField& A, const DifferentialForm& alpha);
/// alpha(X) for a one-form.
Expr pairing(const DifferentialForm& alpha, const VectorField& X);
/// Lambda(alpha, beta) = sum_{a<b} Lambda^{ab}(alpha_a beta_b - alpha_b beta_a).
Expr bivector_pairing(const MultivectorField& Lambda, const DifferentialForm& alpha, const DifferentialForm& beta);
/// The vector field Lambda(alpha, .).
VectorField sharp(const MultivectorField& Lambda, const DifferentialForm& alpha);

/// Sign conventions for the Schouten bracket of a p-vector with a q-vector; both
/// reduce to the Lie bracket and the Lie derivative when p = 1.
/// Alternating: [X1^..^Xp, Y1^..^Yq] = sum (-1)^(i+j) [Xi,Yj] ^ (the rest, in order).
/// DegreeShifted: (-1)^(p+1) times Alternating. A Jacobi pair then satisfies
/// [Lambda,Lambda] = 2 Gamma ^ Lambda for the bracket Lambda(df,dg) + f Gamma(g) - g Gamma(f).
enum class SchoutenConvention { Alternating, DegreeShifted };

/// Schouten bracket for degrees <= 2; throws DomainError above.
MultivectorField schouten_bracket(const MultivectorField& A, const MultivectorField& B,
                                  SchoutenConvention convention = SchoutenConvention::Alternating);

struct TangentStructure {
  Tensor11 S;
  VectorField dilation;
  std::function<VectorField(const VectorField&)> vertical_lift;
};
/// Throws DomainError for charts without a tangent split.
TangentStructure tangent_structure(const ChartPtr& chart);
/// Vertical lift of a field with components along the base directions.
VectorField vertical_lift(const VectorField& X);
/// Complete (tangent) lift of a field depending on base coordinates only.
VectorField tangent_lift(const VectorField& X);

/// Embedding of the level set constraint = 0, solved by solve_for = branch.
class LevelSet {
public:
  /// sub must have the ambient coordinates minus solve_for, in order; branch is
  /// an expression on sub. Throws DomainError if the constraint is not quadratic
  /// in solve_for or does not vanish on the branch.
  LevelSet(ChartPtr ambient, ChartPtr sub, const Expr& constraint, const std::string& solve_for, const Expr& branch);

  const ChartPtr& ambient() const noexcept { return ambient_; }
  const ChartPtr& sub() const noexcept { return sub_; }
  const Expr& constraint() const noexcept { return constraint_; }

  Expr restrict(const Expr& f) const;
  DifferentialForm restrict(const DifferentialForm& alpha) const;
  /// Throws DomainError if X is not tangent to the level set.
  VectorField restrict(const VectorField& X) const;
  MultivectorField restrict(const MultivectorField& A) const;

private:
  ChartPtr ambient_;
  ChartPtr sub_;
  Expr constraint_;
  std::size_t solve_index_;
  Bindings phi_;
  std::vector<std::optional<std::size_t>> sub_index_;
  std::vector<DifferentialForm> pulled_;  ///< pullback of each ambient dx^i
};

/// Rank of the skew matrix of a two-form at a rational point.
std::size_t two_form_rank(const DifferentialForm& omega, const Point& point);
/// Rank of a rational matrix by exact elimination.
std::size_t rational_rank(std::vector<std::vector<Rational>> m);
/// Coefficients c with sum c_k span[k] = target over the function field, if any.
std::optional<std::vector<Expr>> solve_in_span(const std::vector<VectorField>& span, const VectorField& target);

/// Vector field text "c1*@x1 + c2*@x2" and form text "p0*dx0 - p1*dx1",
/// "x1*dx0*dx1" (a chain of d-factors is their wedge product in order).
VectorField parse_vector_field(const std::string& text, const ChartPtr& chart);
DifferentialForm parse_form(const std::string& text, const ChartPtr& chart);
std::string to_string(const DifferentialForm& alpha);
std::string to_string(const MultivectorField& A);

}  // namespace relcheck
