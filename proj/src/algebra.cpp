#include "relcheck/algebra.hpp"

#include <sstream>

#include "relcheck/errors.hpp"

namespace relcheck {

LieAlgebraSpec::LieAlgebraSpec(std::vector<std::string> basis, std::vector<Rational> constants)
    : basis_(std::move(basis)), constants_(std::move(constants)) {
  std::size_t n = basis_.size();
  if (constants_.size() != n * n * n) throw DomainError("structure constant table has the wrong size");
  if (antisymmetry_defects() != 0) throw DomainError("structure constants are not antisymmetric");
  if (jacobi_defects() != 0) throw DomainError("structure constants violate the Jacobi identity");
}

std::size_t LieAlgebraSpec::index(const std::string& name) const {
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if (basis_[i] == name) return i;
  throw DomainError("no basis element " + name);
}

std::vector<Rational> LieAlgebraSpec::bracket(std::size_t i, std::size_t j) const {
  std::vector<Rational> out(dim());
  for (std::size_t k = 0; k < dim(); ++k) out[k] = c(i, j, k);
  return out;
}

std::size_t LieAlgebraSpec::antisymmetry_defects() const {
  std::size_t n = dim();
  std::size_t defects = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (c(i, j, k) != -c(j, i, k)) ++defects;
  return defects;
}

std::size_t LieAlgebraSpec::jacobi_defects() const {
  std::size_t n = dim();
  std::size_t defects = 0;
  // [[e_i, e_j], e_k] + [[e_j, e_k], e_i] + [[e_k, e_i], e_j] = 0 componentwise.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t out = 0; out < n; ++out) {
          Rational s = 0;
          for (std::size_t m = 0; m < n; ++m) {
            s += c(i, j, m) * c(m, k, out);
            s += c(j, k, m) * c(m, i, out);
            s += c(k, i, m) * c(m, j, out);
          }
          if (s != 0) ++defects;
        }
  return defects;
}

namespace {

std::vector<std::vector<Rational>> inverse(std::vector<std::vector<Rational>> a) {
  std::size_t n = a.size();
  std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) throw DomainError("basis change is not invertible");
    std::swap(a[p], a[c]);
    std::swap(inv[p], inv[c]);
    Rational f = 1 / a[c][c];
    for (std::size_t k = 0; k < n; ++k) {
      a[c][k] *= f;
      inv[c][k] *= f;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      Rational g = a[r][c];
      for (std::size_t k = 0; k < n; ++k) {
        a[r][k] -= g * a[c][k];
        inv[r][k] -= g * inv[c][k];
      }
    }
  }
  return inv;
}

}  // namespace

LieAlgebraSpec LieAlgebraSpec::change_basis(std::vector<std::string> names,
                                            const std::vector<std::vector<Rational>>& change) const {
  std::size_t n = dim();
  if (names.size() != n || change.size() != n) throw DomainError("basis change has the wrong size");
  auto inv = inverse(change);
  std::vector<Rational> out(n * n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      // [e'_a, e'_b] in the old basis.
      std::vector<Rational> old(n);
      for (std::size_t i = 0; i < n; ++i) {
        if (change[a][i] == 0) continue;
        for (std::size_t j = 0; j < n; ++j) {
          if (change[b][j] == 0) continue;
          for (std::size_t k = 0; k < n; ++k) old[k] += change[a][i] * change[b][j] * c(i, j, k);
        }
      }
      for (std::size_t cc = 0; cc < n; ++cc) {
        Rational s = 0;
        for (std::size_t k = 0; k < n; ++k) s += old[k] * inv[k][cc];
        out[(a * n + b) * n + cc] = s;
      }
    }
  return LieAlgebraSpec(std::move(names), std::move(out));
}

LieAlgebraSpec LieAlgebraSpec::with_central(const std::string& name) const {
  std::size_t n = dim();
  std::size_t m = n + 1;
  std::vector<Rational> out(m * m * m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) out[(i * m + j) * m + k] = c(i, j, k);
  auto names = basis_;
  names.push_back(name);
  return LieAlgebraSpec(std::move(names), std::move(out));
}

std::string LieAlgebraSpec::serialize() const {
  std::ostringstream out;
  out << "basis:";
  for (const auto& b : basis_) out << " " << b;
  out << "\n";
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = i + 1; j < dim(); ++j) {
      std::string rhs;
      for (std::size_t k = 0; k < dim(); ++k)
        if (c(i, j, k) != 0) rhs += " " + c(i, j, k).get_str() + " " + basis_[k];
      if (!rhs.empty()) out << "[" << basis_[i] << "," << basis_[j] << "] =" << rhs << "\n";
    }
  return out.str();
}

LieAlgebraSpec LieAlgebraSpec::parse(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> names;
  std::vector<std::string> relations;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
    if (line.rfind("basis:", 0) == 0) {
      std::istringstream b(line.substr(6));
      for (std::string w; b >> w;) names.push_back(w);
    } else {
      relations.push_back(line);
    }
  }
  if (names.empty()) throw DomainError("spec text has no basis line");
  std::size_t n = names.size();
  auto find = [&names](const std::string& s) {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == s) return i;
    throw DomainError("unknown basis element " + s);
  };
  std::vector<Rational> constants(n * n * n);
  for (const auto& rel : relations) {
    auto open = rel.find('[');
    auto comma = rel.find(',');
    auto close = rel.find(']');
    auto eq = rel.find('=');
    if (open == std::string::npos || comma == std::string::npos || close == std::string::npos || eq == std::string::npos)
      throw DomainError("bad relation line: " + rel);
    std::size_t i = find(rel.substr(open + 1, comma - open - 1));
    std::size_t j = find(rel.substr(comma + 1, close - comma - 1));
    std::istringstream rhs(rel.substr(eq + 1));
    for (std::string coeff, name; rhs >> coeff >> name;) {
      std::size_t k = find(name);
      Rational q = parse_rational(coeff);
      constants[(i * n + j) * n + k] += q;
      constants[(j * n + i) * n + k] -= q;
    }
  }
  return LieAlgebraSpec(std::move(names), std::move(constants));
}

Convention convention_from_string(const std::string& label) {
  if (label == "half-epsilon") return Convention::HalfEpsilon;
  if (label == "flipped") return Convention::Flipped;
  throw DomainError("unknown convention " + label);
}

namespace {

/// Position of M_ab (a < b) in the covariant basis.
std::size_t m_index(std::size_t a, std::size_t b) {
  static const std::size_t table[4][4] = {{0, 4, 5, 6}, {4, 0, 7, 8}, {5, 7, 0, 9}, {6, 8, 9, 0}};
  return table[a][b];
}

/// Adds coeff * M_ab to v, using M_ba = -M_ab and M_aa = 0.
void add_m(std::vector<Rational>& v, std::size_t a, std::size_t b, const Rational& coeff) {
  if (a == b || coeff == 0) return;
  if (a < b)
    v[m_index(a, b)] += coeff;
  else
    v[m_index(b, a)] -= coeff;
}

}  // namespace

LieAlgebraSpec poincare_spec(const std::vector<int>& signature) {
  if (signature.size() != 4) throw DomainError("signature needs four entries");
  for (int s : signature)
    if (s != 1 && s != -1) throw DomainError("signature entries must be +1 or -1");
  auto g = [&signature](std::size_t a, std::size_t b) { return a == b ? Rational(signature[a]) : Rational(0); };
  const std::size_t n = 10;
  std::vector<std::string> names = {"P0", "P1", "P2", "P3", "M01", "M02", "M03", "M12", "M13", "M23"};
  std::vector<std::pair<std::size_t, std::size_t>> pairs = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  std::vector<Rational> constants(n * n * n);
  auto set = [&](std::size_t i, std::size_t j, const std::vector<Rational>& v) {
    for (std::size_t k = 0; k < n; ++k) {
      constants[(i * n + j) * n + k] = v[k];
      constants[(j * n + i) * n + k] = -v[k];
    }
  };
  for (std::size_t a = 0; a < pairs.size(); ++a) {
    auto [mu, nu] = pairs[a];
    for (std::size_t rho = 0; rho < 4; ++rho) {
      std::vector<Rational> v(n);
      v[mu] += g(nu, rho);
      v[nu] -= g(mu, rho);
      set(4 + a, rho, v);
    }
    for (std::size_t b = 0; b < pairs.size(); ++b) {
      auto [rho, sigma] = pairs[b];
      std::vector<Rational> v(n);
      add_m(v, mu, sigma, g(nu, rho));
      add_m(v, nu, sigma, -g(mu, rho));
      add_m(v, rho, mu, g(nu, sigma));
      add_m(v, rho, nu, -g(mu, sigma));
      if (a < b) set(4 + a, 4 + b, v);
    }
  }
  return LieAlgebraSpec(std::move(names), std::move(constants));
}

LieAlgebraSpec poincare_jk_spec(const std::vector<int>& signature, Convention convention) {
  LieAlgebraSpec base = poincare_spec(signature);
  Rational j_sign = convention == Convention::HalfEpsilon ? 1 : -1;
  std::vector<std::vector<Rational>> change(10, std::vector<Rational>(10));
  for (std::size_t mu = 0; mu < 4; ++mu) change[mu][mu] = 1;
  // J1 = M23, J2 = M31 = -M13, J3 = M12
  change[4][m_index(2, 3)] = j_sign;
  change[5][m_index(1, 3)] = -j_sign;
  change[6][m_index(1, 2)] = j_sign;
  // K_j = M_0j
  for (std::size_t j = 1; j <= 3; ++j) change[6 + j][m_index(0, j)] = 1;
  return base.change_basis({"P0", "P1", "P2", "P3", "J1", "J2", "J3", "K1", "K2", "K3"}, change);
}

std::vector<Rational> lie_poisson_bracket(const std::vector<Rational>& u, const std::vector<Rational>& v,
                                          const LieAlgebraSpec& spec) {
  std::size_t n = spec.dim();
  if (u.size() != n || v.size() != n) throw DomainError("coefficient vector has the wrong dimension");
  std::vector<Rational> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (u[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (v[j] == 0) continue;
      for (std::size_t k = 0; k < n; ++k)
        if (spec.c(i, j, k) != 0) out[k] += u[i] * v[j] * spec.c(i, j, k);
    }
  }
  return out;
}

void attach_witness(Check& c, const VectorField& X, Rng& rng) {
  const auto& chart = *X.chart();
  for (std::size_t i = 0; i < X.dim(); ++i) {
    if (X[i].is_zero()) continue;
    if (auto hit = find_nonzero_point(X[i], chart, rng)) {
      c.witness = witness_of(hit->point);
      c.description = "component @" + symbols().display_name(chart.coord(i)) + " = " + hit->value.get_str() + " at witness";
      return;
    }
  }
}

Report check_realization(const Realization& r, const std::string& ref, Rng* rng) {
  Report report("realization");
  std::size_t n = r.spec.dim();
  if (r.fields.size() != n) throw DomainError("realization needs one field per basis element");
  for (std::size_t i = 1; i < n; ++i) require_same_chart(r.fields[0].chart(), r.fields[i].chart());
  for (const auto& m : r.modulo) require_same_chart(r.fields[0].chart(), m.chart());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      CheckTimer timer;
      VectorField residual = lie_bracket(r.fields[i], r.fields[j]);
      for (std::size_t k = 0; k < n; ++k)
        if (r.spec.c(i, j, k) != 0) residual -= Expr(r.spec.c(i, j, k)) * r.fields[k];
      std::string id = "[" + r.spec.basis()[i] + "," + r.spec.basis()[j] + "]";
      if (residual.is_zero()) {
        report.expect(id, ref, true, "0").ms = timer.elapsed_ms();
        continue;
      }
      if (!r.modulo.empty()) {
        if (auto coeffs = solve_in_span(r.modulo, residual)) {
          std::string text;
          for (std::size_t k = 0; k < coeffs->size(); ++k) {
            if ((*coeffs)[k].is_zero()) continue;
            if (!text.empty()) text += " + ";
            text += "(" + (*coeffs)[k].str() + ")*span" + std::to_string(k);
          }
          Check& c = report.expect(id, ref, true, text, "closes modulo the distribution");
          c.ms = timer.elapsed_ms();
          continue;
        }
      }
      Check& c = report.expect(id, ref, false, residual.str());
      if (rng) attach_witness(c, residual, *rng);
      c.ms = timer.elapsed_ms();
    }
  return report;
}

Expr canonical_poisson_bracket(const Expr& f, const Expr& g, const std::vector<int>& signature) {
  auto chart = offshell_chart();
  Expr out;
  for (std::size_t a = 0; a < 4; ++a) {
    Var x = chart->coord(a);
    Var p = chart->coord(4 + a);
    Expr t = diff(f, p) * diff(g, x) - diff(f, x) * diff(g, p);
    if (!t.is_zero()) out += Expr(signature[a]) * t;
  }
  return out;
}

Report check_elementary_solution() {
  auto chart = offshell_chart();
  const std::vector<int> sig = chart->signature();
  LieAlgebraSpec spec = poincare_spec(sig);
  std::vector<Expr> x_low;
  std::vector<Expr> p_low;
  for (std::size_t a = 0; a < 4; ++a) {
    x_low.push_back(Expr(sig[a]) * chart->x(a));
    p_low.push_back(Expr(sig[a]) * chart->x(4 + a));
  }
  std::vector<Expr> gens(p_low.begin(), p_low.end());
  std::vector<std::pair<std::size_t, std::size_t>> pairs = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  for (auto [m, n] : pairs) gens.push_back(x_low[m] * p_low[n] - x_low[n] * p_low[m]);
  Report report("elementary-solution");
  for (std::size_t i = 0; i < 10; ++i)
    for (std::size_t j = i + 1; j < 10; ++j) {
      Expr residual = canonical_poisson_bracket(gens[i], gens[j], sig);
      for (std::size_t k = 0; k < 10; ++k)
        if (spec.c(i, j, k) != 0) residual -= Expr(spec.c(i, j, k)) * gens[k];
      report.expect_zero("{" + spec.basis()[i] + "," + spec.basis()[j] + "}", "elementary solution on T*R4", residual);
    }
  return report;
}

}  // namespace relcheck
