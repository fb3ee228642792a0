#include "relcheck/geometry.hpp"

#include <algorithm>

#include "relcheck/parse.hpp"

namespace relcheck {

// ---------------------------------------------------------------------------
// VectorField

VectorField::VectorField(ChartPtr chart) : chart_(std::move(chart)), components_(chart_->dim()) {}

VectorField::VectorField(ChartPtr chart, std::vector<Expr> components)
    : chart_(std::move(chart)), components_(std::move(components)) {
  if (components_.size() != chart_->dim()) throw DomainError("component count does not match chart dimension");
}

VectorField VectorField::coordinate(ChartPtr chart, std::size_t i) {
  VectorField X(std::move(chart));
  X[i] = Expr(1);
  return X;
}

VectorField VectorField::coordinate(ChartPtr chart, const std::string& name) {
  std::size_t i = chart->index(name);
  return coordinate(std::move(chart), i);
}

bool VectorField::is_zero() const {
  return std::all_of(components_.begin(), components_.end(), [](const Expr& e) { return e.is_zero(); });
}

Expr VectorField::apply(const Expr& f) const {
  Expr out;
  for (std::size_t i = 0; i < dim(); ++i)
    if (!components_[i].is_zero()) out += components_[i] * diff(f, chart_->coord(i));
  return out;
}

VectorField VectorField::operator-() const {
  VectorField out(chart_);
  for (std::size_t i = 0; i < dim(); ++i) out[i] = -components_[i];
  return out;
}

VectorField operator+(const VectorField& a, const VectorField& b) {
  require_same_chart(a.chart_, b.chart_);
  VectorField out(a.chart_);
  for (std::size_t i = 0; i < a.dim(); ++i) out[i] = a[i] + b[i];
  return out;
}

VectorField operator-(const VectorField& a, const VectorField& b) { return a + (-b); }

VectorField operator*(const Expr& f, const VectorField& X) {
  VectorField out(X.chart_);
  for (std::size_t i = 0; i < X.dim(); ++i) out[i] = f * X[i];
  return out;
}

bool operator==(const VectorField& a, const VectorField& b) { return (a - b).is_zero(); }

namespace {

std::string coefficient_text(const Expr& c, const std::string& unit, bool first) {
  std::string text = c.str();
  bool compound = c.numerator().size() > 1 || !c.is_polynomial();
  std::string sign;
  if (!compound && !text.empty() && text[0] == '-') {
    sign = "-";
    text = text.substr(1);
  }
  std::string body = text == "1" ? unit : (compound ? "(" + text + ")" : text) + "*" + unit;
  if (first) return sign + body;
  return (sign.empty() ? " + " : " - ") + body;
}

}  // namespace

std::string VectorField::str() const {
  std::string out;
  for (std::size_t i = 0; i < dim(); ++i) {
    if (components_[i].is_zero()) continue;
    out += coefficient_text(components_[i], "@" + symbols().info(chart_->coord(i)).name, out.empty());
  }
  return out.empty() ? "0" : out;
}

namespace {

template <class Tag>
std::string alternating_text(const Alternating<Tag>& a, bool form) {
  std::string out;
  for (const auto& [idx, c] : a.coeffs()) {
    std::string unit;
    for (auto i : idx) {
      if (!unit.empty()) unit += form ? "*" : "^";
      unit += (form ? "d" : "@") + symbols().info(a.chart()->coord(i)).name;
    }
    if (unit.empty()) {
      out += out.empty() ? c.str() : " + (" + c.str() + ")";
      continue;
    }
    out += coefficient_text(c, unit, out.empty());
  }
  return out.empty() ? "0" : out;
}

}  // namespace

std::string to_string(const DifferentialForm& alpha) { return alternating_text(alpha, true); }
std::string to_string(const MultivectorField& A) { return alternating_text(A, false); }

// ---------------------------------------------------------------------------
// Tensor11

Tensor11::Tensor11(ChartPtr chart) : chart_(std::move(chart)), m_(chart_->dim() * chart_->dim()) {}

Tensor11 Tensor11::identity(ChartPtr chart) {
  Tensor11 t(std::move(chart));
  for (std::size_t i = 0; i < t.dim(); ++i) t(i, i) = Expr(1);
  return t;
}

Tensor11 Tensor11::outer(const VectorField& V, const DifferentialForm& alpha) {
  require_same_chart(V.chart(), alpha.chart());
  if (alpha.degree() != 1) throw DomainError("outer product needs a one-form");
  Tensor11 t(V.chart());
  for (std::size_t r = 0; r < t.dim(); ++r) {
    if (V[r].is_zero()) continue;
    for (const auto& [idx, c] : alpha.coeffs()) t(r, idx[0]) = V[r] * c;
  }
  return t;
}

bool Tensor11::is_zero() const {
  return std::all_of(m_.begin(), m_.end(), [](const Expr& e) { return e.is_zero(); });
}

VectorField Tensor11::apply(const VectorField& X) const {
  require_same_chart(chart_, X.chart());
  VectorField out(chart_);
  for (std::size_t r = 0; r < dim(); ++r) {
    Expr s;
    for (std::size_t c = 0; c < dim(); ++c)
      if (!(*this)(r, c).is_zero() && !X[c].is_zero()) s += (*this)(r, c) * X[c];
    out[r] = s;
  }
  return out;
}

Tensor11 operator+(const Tensor11& a, const Tensor11& b) {
  require_same_chart(a.chart_, b.chart_);
  Tensor11 out(a.chart_);
  for (std::size_t i = 0; i < a.m_.size(); ++i) out.m_[i] = a.m_[i] + b.m_[i];
  return out;
}

Tensor11 operator-(const Tensor11& a, const Tensor11& b) {
  require_same_chart(a.chart_, b.chart_);
  Tensor11 out(a.chart_);
  for (std::size_t i = 0; i < a.m_.size(); ++i) out.m_[i] = a.m_[i] - b.m_[i];
  return out;
}

Tensor11 operator*(const Tensor11& a, const Tensor11& b) {
  require_same_chart(a.chart_, b.chart_);
  std::size_t n = a.dim();
  Tensor11 out(a.chart_);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      Expr s;
      for (std::size_t k = 0; k < n; ++k)
        if (!a(r, k).is_zero() && !b(k, c).is_zero()) s += a(r, k) * b(k, c);
      out(r, c) = s;
    }
  return out;
}

// ---------------------------------------------------------------------------
// Conversions and basic calculus

MultivectorField to_multivector(const VectorField& X) {
  MultivectorField A(X.chart(), 1);
  for (std::size_t i = 0; i < X.dim(); ++i) A.add({i}, X[i]);
  return A;
}

VectorField to_vector_field(const MultivectorField& A) {
  if (A.degree() != 1) throw DomainError("not a vector field");
  VectorField X(A.chart());
  for (const auto& [idx, c] : A.coeffs()) X[idx[0]] = c;
  return X;
}

DifferentialForm differential(const ChartPtr& chart, const Expr& f) {
  DifferentialForm df(chart, 1);
  for (std::size_t i = 0; i < chart->dim(); ++i) df.add({i}, diff(f, chart->coord(i)));
  return df;
}

DifferentialForm one_form(const ChartPtr& chart, const std::vector<Expr>& components) {
  if (components.size() != chart->dim()) throw DomainError("component count does not match chart dimension");
  DifferentialForm a(chart, 1);
  for (std::size_t i = 0; i < components.size(); ++i) a.add({i}, components[i]);
  return a;
}

VectorField lie_bracket(const VectorField& X, const VectorField& Y) {
  require_same_chart(X.chart(), Y.chart());
  VectorField out(X.chart());
  for (std::size_t i = 0; i < X.dim(); ++i) out[i] = X.apply(Y[i]) - Y.apply(X[i]);
  return out;
}

Expr lie_derivative(const VectorField& X, const Expr& f) { return X.apply(f); }

DifferentialForm exterior_derivative(const DifferentialForm& alpha) {
  const auto& chart = alpha.chart();
  if (alpha.degree() >= chart->dim()) throw DomainError("exterior derivative of a top-degree form");
  DifferentialForm out(chart, alpha.degree() + 1);
  for (const auto& [idx, c] : alpha.coeffs()) {
    for (std::size_t j = 0; j < chart->dim(); ++j) {
      if (std::binary_search(idx.begin(), idx.end(), j)) continue;
      Expr d = diff(c, chart->coord(j));
      if (d.is_zero()) continue;
      Index full{j};
      full.insert(full.end(), idx.begin(), idx.end());
      out.add(full, d);
    }
  }
  return out;
}

namespace {

template <class Tag>
Alternating<Tag> wedge_impl(const Alternating<Tag>& a, const Alternating<Tag>& b) {
  require_same_chart(a.chart(), b.chart());
  std::size_t degree = a.degree() + b.degree();
  if (degree > a.chart()->dim()) throw DomainError("wedge degree exceeds chart dimension");
  Alternating<Tag> out(a.chart(), degree);
  for (const auto& [i, ca] : a.coeffs())
    for (const auto& [j, cb] : b.coeffs()) {
      Index full = i;
      full.insert(full.end(), j.begin(), j.end());
      out.add(full, ca * cb);
    }
  return out;
}

/// i_{d/dx^j} alpha.
DifferentialForm interior_basis(std::size_t j, const DifferentialForm& alpha) {
  if (alpha.degree() == 0) throw DomainError("interior product with a function");
  DifferentialForm out(alpha.chart(), alpha.degree() - 1);
  for (const auto& [idx, c] : alpha.coeffs()) {
    auto it = std::find(idx.begin(), idx.end(), j);
    if (it == idx.end()) continue;
    auto m = static_cast<std::size_t>(it - idx.begin());
    Index rest = idx;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(m));
    out.add(rest, m % 2 == 0 ? c : -c);
  }
  return out;
}

}  // namespace

DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b) { return wedge_impl(a, b); }
MultivectorField wedge(const MultivectorField& a, const MultivectorField& b) { return wedge_impl(a, b); }
MultivectorField wedge(const VectorField& a, const VectorField& b) {
  return wedge_impl(to_multivector(a), to_multivector(b));
}

DifferentialForm wedge_power(const DifferentialForm& alpha, unsigned k) {
  DifferentialForm out = DifferentialForm::scalar(alpha.chart(), Expr(1));
  for (unsigned i = 0; i < k; ++i) out = wedge(out, alpha);
  return out;
}

DifferentialForm contract(const VectorField& X, const DifferentialForm& alpha) {
  require_same_chart(X.chart(), alpha.chart());
  if (alpha.degree() == 0) throw DomainError("interior product with a function");
  DifferentialForm out(alpha.chart(), alpha.degree() - 1);
  for (std::size_t j = 0; j < X.dim(); ++j)
    if (!X[j].is_zero()) out = out + X[j] * interior_basis(j, alpha);
  return out;
}

DifferentialForm contract(const MultivectorField& A, const DifferentialForm& alpha) {
  require_same_chart(A.chart(), alpha.chart());
  if (A.degree() > alpha.degree()) throw DomainError("multivector degree exceeds form degree");
  DifferentialForm out(alpha.chart(), alpha.degree() - A.degree());
  for (const auto& [idx, c] : A.coeffs()) {
    DifferentialForm term = alpha;
    for (auto j : idx) {
      term = interior_basis(j, term);
      if (term.is_zero()) break;
    }
    if (!term.is_zero()) out = out + c * term;
  }
  return out;
}

Expr pairing(const DifferentialForm& alpha, const VectorField& X) {
  if (alpha.degree() != 1) throw DomainError("pairing needs a one-form");
  return contract(X, alpha).scalar_value();
}

Expr bivector_pairing(const MultivectorField& Lambda, const DifferentialForm& alpha, const DifferentialForm& beta) {
  require_same_chart(Lambda.chart(), alpha.chart());
  require_same_chart(Lambda.chart(), beta.chart());
  if (Lambda.degree() != 2 || alpha.degree() != 1 || beta.degree() != 1)
    throw DomainError("bivector pairing needs a bivector and two one-forms");
  Expr out;
  for (const auto& [idx, c] : Lambda.coeffs()) {
    Expr t = alpha.get({idx[0]}) * beta.get({idx[1]}) - alpha.get({idx[1]}) * beta.get({idx[0]});
    if (!t.is_zero()) out += c * t;
  }
  return out;
}

VectorField sharp(const MultivectorField& Lambda, const DifferentialForm& alpha) {
  require_same_chart(Lambda.chart(), alpha.chart());
  if (Lambda.degree() != 2 || alpha.degree() != 1) throw DomainError("sharp needs a bivector and a one-form");
  VectorField out(Lambda.chart());
  for (const auto& [idx, c] : Lambda.coeffs()) {
    Expr a0 = alpha.get({idx[0]});
    Expr a1 = alpha.get({idx[1]});
    if (!a0.is_zero()) out[idx[1]] += c * a0;
    if (!a1.is_zero()) out[idx[0]] -= c * a1;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Schouten bracket through the odd-variable (superfunction) formula
//   [P, Q] = sum_i dP/dxi_i (right) * dQ/dx^i - (-1)^{(p-1)(q-1)} dQ/dxi_i (right) * dP/dx^i.

namespace {

MultivectorField right_odd_derivative(const MultivectorField& A, std::size_t i) {
  MultivectorField out(A.chart(), A.degree() - 1);
  for (const auto& [idx, c] : A.coeffs()) {
    auto it = std::find(idx.begin(), idx.end(), i);
    if (it == idx.end()) continue;
    auto m = static_cast<std::size_t>(it - idx.begin());
    Index rest = idx;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(m));
    out.add(rest, (idx.size() - 1 - m) % 2 == 0 ? c : -c);
  }
  return out;
}

MultivectorField coordinate_derivative(const MultivectorField& A, Var x) {
  return A.map([x](const Expr& c) { return diff(c, x); });
}

}  // namespace

MultivectorField schouten_bracket(const MultivectorField& A, const MultivectorField& B,
                                  SchoutenConvention convention) {
  require_same_chart(A.chart(), B.chart());
  std::size_t p = A.degree();
  std::size_t q = B.degree();
  if (p > 2 || q > 2) throw DomainError("Schouten bracket is implemented for degrees up to 2");
  if (p == 0 || q == 0) throw DomainError("Schouten bracket needs multivectors of degree at least 1");
  const auto& chart = A.chart();
  MultivectorField out(chart, p + q - 1);
  bool sign_flip = ((p - 1) * (q - 1)) % 2 == 1;
  for (std::size_t i = 0; i < chart->dim(); ++i) {
    Var x = chart->coord(i);
    MultivectorField dA = right_odd_derivative(A, i);
    if (!dA.is_zero()) out = out + wedge(dA, coordinate_derivative(B, x));
    MultivectorField dB = right_odd_derivative(B, i);
    if (!dB.is_zero()) {
      MultivectorField t = wedge(dB, coordinate_derivative(A, x));
      out = sign_flip ? out + t : out - t;
    }
  }
  if (convention == SchoutenConvention::DegreeShifted && p % 2 == 0) return -out;
  return out;
}

MultivectorField lie_derivative(const VectorField& X, const MultivectorField& A) {
  return schouten_bracket(to_multivector(X), A);
}

DifferentialForm lie_derivative(const VectorField& X, const DifferentialForm& alpha) {
  require_same_chart(X.chart(), alpha.chart());
  DifferentialForm out(alpha.chart(), alpha.degree());
  if (alpha.degree() < alpha.chart()->dim()) out = contract(X, exterior_derivative(alpha));
  if (alpha.degree() > 0) out = out + exterior_derivative(contract(X, alpha));
  return out;
}

// ---------------------------------------------------------------------------
// Tangent bundle structure

namespace {

const TangentSplit& split_of(const ChartPtr& chart) {
  if (!chart->tangent_split()) throw DomainError("chart " + chart->name() + " is not a tangent-bundle chart");
  return *chart->tangent_split();
}

}  // namespace

VectorField vertical_lift(const VectorField& X) {
  const auto& split = split_of(X.chart());
  VectorField out(X.chart());
  for (std::size_t k = 0; k < split.base.size(); ++k) out[split.fiber[k]] = X[split.base[k]];
  for (auto f : split.fiber)
    if (!X[f].is_zero()) throw DomainError("vertical lift of a field with fiber components");
  return out;
}

VectorField tangent_lift(const VectorField& X) {
  const auto& split = split_of(X.chart());
  VectorField out(X.chart());
  for (std::size_t k = 0; k < split.base.size(); ++k) {
    std::size_t b = split.base[k];
    out[b] = X[b];
    Expr s;
    for (std::size_t l = 0; l < split.base.size(); ++l) {
      Expr d = diff(X[b], X.chart()->coord(split.base[l]));
      if (!d.is_zero()) s += X.chart()->x(split.fiber[l]) * d;
    }
    out[split.fiber[k]] = s;
  }
  for (auto f : split.fiber)
    if (!X[f].is_zero()) throw DomainError("tangent lift of a field with fiber components");
  return out;
}

TangentStructure tangent_structure(const ChartPtr& chart) {
  const auto& split = split_of(chart);
  Tensor11 S(chart);
  VectorField delta(chart);
  for (std::size_t k = 0; k < split.base.size(); ++k) {
    S(split.fiber[k], split.base[k]) = Expr(1);
    delta[split.fiber[k]] = chart->x(split.fiber[k]);
  }
  return {S, delta, [](const VectorField& X) { return vertical_lift(X); }};
}

// ---------------------------------------------------------------------------
// Level sets

LevelSet::LevelSet(ChartPtr ambient, ChartPtr sub, const Expr& constraint, const std::string& solve_for,
                   const Expr& branch)
    : ambient_(std::move(ambient)), sub_(std::move(sub)), constraint_(constraint) {
  solve_index_ = ambient_->index(solve_for);
  Var s = ambient_->coord(solve_index_);
  if (sub_->dim() + 1 != ambient_->dim()) throw DomainError("sub-chart must drop exactly one coordinate");
  for (std::size_t i = 0, k = 0; i < ambient_->dim(); ++i) {
    if (i == solve_index_) {
      sub_index_.emplace_back();
      continue;
    }
    if (sub_->coord(k) != ambient_->coord(i)) throw DomainError("sub-chart coordinates do not match the ambient chart");
    sub_index_.emplace_back(k++);
  }
  if (!constraint.is_polynomial() || constraint.numerator().degree(s) != 2)
    throw DomainError("constraint is not quadratic in " + solve_for);
  phi_.symbols.emplace(s, branch);
  if (!substitute(constraint, phi_).is_zero()) throw DomainError("constraint is not solvable by the given branch");
  DifferentialForm dbranch = differential(sub_, branch);
  for (std::size_t i = 0; i < ambient_->dim(); ++i) {
    if (sub_index_[i])
      pulled_.push_back(DifferentialForm::basis(sub_, {*sub_index_[i]}));
    else
      pulled_.push_back(dbranch);
  }
}

Expr LevelSet::restrict(const Expr& f) const { return substitute(f, phi_); }

DifferentialForm LevelSet::restrict(const DifferentialForm& alpha) const {
  require_same_chart(alpha.chart(), ambient_);
  DifferentialForm out(sub_, alpha.degree());
  for (const auto& [idx, c] : alpha.coeffs()) {
    DifferentialForm term = DifferentialForm::scalar(sub_, restrict(c));
    for (auto i : idx) term = wedge(term, pulled_[i]);
    out = out + term;
  }
  return out;
}

VectorField LevelSet::restrict(const VectorField& X) const {
  require_same_chart(X.chart(), ambient_);
  if (!restrict(X.apply(constraint_)).is_zero()) throw DomainError("vector field is not tangent to the level set");
  VectorField out(sub_);
  for (std::size_t i = 0; i < ambient_->dim(); ++i)
    if (sub_index_[i]) out[*sub_index_[i]] = restrict(X[i]);
  return out;
}

MultivectorField LevelSet::restrict(const MultivectorField& A) const {
  require_same_chart(A.chart(), ambient_);
  if (A.degree() == 1) return to_multivector(restrict(to_vector_field(A)));
  if (A.degree() == 2) {
    VectorField t = sharp(A, differential(ambient_, constraint_));
    for (const auto& c : t.components())
      if (!restrict(c).is_zero()) throw DomainError("bivector field is not tangent to the level set");
  } else if (A.degree() > 2) {
    throw DomainError("restriction implemented for multivectors up to degree 2");
  }
  MultivectorField out(sub_, A.degree());
  for (const auto& [idx, c] : A.coeffs()) {
    Index mapped;
    bool keep = true;
    for (auto i : idx) {
      if (!sub_index_[i]) {
        keep = false;
        break;
      }
      mapped.push_back(*sub_index_[i]);
    }
    if (keep) out.add(mapped, restrict(c));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Linear algebra

std::size_t rational_rank(std::vector<std::vector<Rational>> m) {
  std::size_t rank = 0;
  std::size_t rows = m.size();
  std::size_t cols = rows ? m[0].size() : 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && m[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[pivot], m[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (m[r][c] == 0) continue;
      Rational f = m[r][c] / m[rank][c];
      for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

std::size_t two_form_rank(const DifferentialForm& omega, const Point& point) {
  if (omega.degree() != 2) throw DomainError("rank needs a two-form");
  std::size_t n = omega.chart()->dim();
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
  for (const auto& [idx, c] : omega.coeffs()) {
    Rational v = eval_rational(c, point);
    m[idx[0]][idx[1]] = v;
    m[idx[1]][idx[0]] = -v;
  }
  return rational_rank(std::move(m));
}

std::optional<std::vector<Expr>> solve_in_span(const std::vector<VectorField>& span, const VectorField& target) {
  std::size_t n = target.dim();
  std::size_t k = span.size();
  for (const auto& V : span) require_same_chart(V.chart(), target.chart());
  // Augmented rows: component i of (span..., target).
  std::vector<std::vector<Expr>> m(n, std::vector<Expr>(k + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) m[i][j] = span[j][i];
    m[i][k] = target[i];
  }
  std::vector<std::size_t> pivot_col;
  std::size_t row = 0;
  for (std::size_t c = 0; c < k && row < n; ++c) {
    std::size_t p = row;
    while (p < n && m[p][c].is_zero()) ++p;
    if (p == n) continue;
    std::swap(m[p], m[row]);
    Expr inv = Expr(1) / m[row][c];
    for (std::size_t j = c; j <= k; ++j) m[row][j] = m[row][j] * inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == row || m[r][c].is_zero()) continue;
      Expr f = m[r][c];
      for (std::size_t j = c; j <= k; ++j)
        if (!m[row][j].is_zero()) m[r][j] -= f * m[row][j];
    }
    pivot_col.push_back(c);
    ++row;
  }
  for (std::size_t r = row; r < n; ++r)
    if (!m[r][k].is_zero()) return std::nullopt;
  std::vector<Expr> coeffs(k);
  for (std::size_t r = 0; r < pivot_col.size(); ++r) coeffs[pivot_col[r]] = m[r][k];
  return coeffs;
}

// ---------------------------------------------------------------------------
// Text input

namespace {

std::vector<std::pair<bool, std::string>> split_terms(const std::string& text) {
  std::vector<std::pair<bool, std::string>> out;
  int depth = 0;
  bool negative = false;
  std::string current;
  char prev = 0;
  for (char ch : text) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    bool binary = prev != 0 && prev != '*' && prev != '/' && prev != '^' && prev != '(' && prev != '+' && prev != '-';
    if (depth == 0 && (ch == '+' || ch == '-') && (binary || current.find_first_not_of(' ') == std::string::npos)) {
      if (current.find_first_not_of(' ') != std::string::npos) {
        out.emplace_back(negative, current);
        current.clear();
        negative = false;
      }
      if (ch == '-') negative = !negative;
      prev = ch;
      continue;
    }
    current += ch;
    if (ch != ' ') prev = ch;
  }
  if (current.find_first_not_of(' ') != std::string::npos) out.emplace_back(negative, current);
  return out;
}

std::vector<std::string> split_factors(const std::string& term) {
  std::vector<std::string> out;
  int depth = 0;
  std::string current;
  for (char ch : term) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == '*' && depth == 0) {
      out.push_back(current);
      current.clear();
      continue;
    }
    current += ch;
  }
  out.push_back(current);
  for (auto& f : out) {
    auto b = f.find_first_not_of(' ');
    auto e = f.find_last_not_of(' ');
    f = b == std::string::npos ? std::string() : f.substr(b, e - b + 1);
  }
  return out;
}

/// Splits each term into a coefficient and the ordered list of direction indices
/// recognized by `direction`.
template <class Direction>
std::vector<std::pair<Expr, Index>> linear_terms(const std::string& text, const ChartPtr& chart, Direction direction) {
  std::vector<std::pair<Expr, Index>> out;
  for (const auto& [negative, term] : split_terms(text)) {
    Index dirs;
    std::string coeff;
    for (const auto& f : split_factors(term)) {
      if (f.empty()) throw ParseError("empty factor in '" + term + "'", 0);
      if (auto d = direction(f)) {
        dirs.push_back(*d);
      } else {
        if (!coeff.empty()) coeff += "*";
        coeff += "(" + f + ")";
      }
    }
    Expr c = coeff.empty() ? Expr(1) : parse(coeff, *chart);
    out.emplace_back(negative ? -c : c, dirs);
  }
  return out;
}

}  // namespace

VectorField parse_vector_field(const std::string& text, const ChartPtr& chart) {
  VectorField X(chart);
  auto direction = [&chart](const std::string& f) -> std::optional<std::size_t> {
    if (f.size() < 2 || f[0] != '@') return std::nullopt;
    auto v = chart->lookup(f.substr(1));
    if (!v || !chart->index_of(*v)) throw ParseError("unknown direction " + f, 0);
    return chart->index_of(*v);
  };
  for (const auto& [c, dirs] : linear_terms(text, chart, direction)) {
    if (dirs.size() != 1) throw ParseError("each vector field term needs exactly one @direction", 0);
    X[dirs[0]] += c;
  }
  return X;
}

DifferentialForm parse_form(const std::string& text, const ChartPtr& chart) {
  auto direction = [&chart](const std::string& f) -> std::optional<std::size_t> {
    if (f.size() < 2 || f[0] != 'd' || chart->lookup(f)) return std::nullopt;
    auto v = chart->lookup(f.substr(1));
    if (!v) return std::nullopt;
    return chart->index_of(*v);
  };
  auto terms = linear_terms(text, chart, direction);
  if (terms.empty()) return DifferentialForm(chart, 0);
  DifferentialForm out(chart, terms.front().second.size());
  for (const auto& [c, dirs] : terms) {
    if (dirs.size() != out.degree()) throw ParseError("terms of different degree in form", 0);
    out.add(dirs, c);
  }
  return out;
}

}  // namespace relcheck
