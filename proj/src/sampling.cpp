#include "relcheck/sampling.hpp"

#include <algorithm>

#include "relcheck/errors.hpp"

namespace relcheck {

Rational Rng::small_rational(long limit) {
  Rational q(uniform(-limit, limit), uniform(1, 3));
  q.canonicalize();
  return q;
}

Rational Rng::nonzero_rational(long limit) {
  while (true) {
    Rational q = small_rational(limit);
    if (q != 0) return q;
  }
}

namespace {

/// q = A + sign * y^2 with A free of y; returns sign or 0.
int square_form(const Poly& q, Var y) {
  auto coeffs = q.coefficients_in(y);
  if (coeffs.size() != 3 || !coeffs[1].is_zero() || !coeffs[2].is_constant()) return 0;
  Rational c = coeffs[2].constant_value();
  if (c == 1) return 1;
  if (c == -1) return -1;
  return 0;
}

bool is_coordinate(const Chart& chart, Var v) { return chart.index_of(v).has_value(); }

/// Chooses values so that sqrt(q) is rational; updates point.values and returns the root.
std::optional<Rational> solve_extension(const Poly& q, const Chart& chart, Rng& rng, Point& point,
                                        const std::map<Var, Rational>& fixed) {
  Rational current = q.evaluate(point.values).constant_value();
  if (current > 0)
    if (auto r = exact_root(current, 2)) return r;
  std::vector<Var> free;
  for (Var v : q.variables())
    if (is_coordinate(chart, v) && !fixed.count(v)) free.push_back(v);
  // Hyperbola s^2 - y^2 = a.
  std::vector<Var> plus;
  for (Var y : free)
    if (square_form(q, y) == 1) plus.push_back(y);
  if (!plus.empty()) {
    Var y = plus[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(plus.size()) - 1))];
    auto values = point.values;
    values.erase(y);
    Poly a_poly = q.coefficients_in(y)[0];
    Rational a = a_poly.evaluate(values).constant_value();
    Rational d = rng.nonzero_rational(5);
    Rational yv = (a / d - d) / 2;
    Rational s = (a / d + d) / 2;
    if (s < 0) s = -s;
    if (s == 0) return std::nullopt;
    point.values[y] = yv;
    return s;
  }
  // Sphere K - sum y_i^2 = s^2 with every variable of q of that shape.
  auto vars = q.variables();
  bool sphere = !vars.empty() && std::all_of(vars.begin(), vars.end(), [&](Var y) {
    return std::find(free.begin(), free.end(), y) != free.end() && square_form(q, y) == -1;
  });
  if (sphere) {
    Poly rest = q;
    for (Var y : vars) rest = rest.coefficients_in(y)[0];
    if (!rest.is_constant()) return std::nullopt;
    auto k = exact_root(rest.constant_value(), 2);
    if (!k || *k == 0) return std::nullopt;
    std::vector<Rational> t;
    Rational norm = 0;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      Rational ti(rng.uniform(-3, 3), rng.uniform(2, 7));
      ti.canonicalize();
      t.push_back(ti);
      norm += ti * ti;
    }
    if (norm >= 1) return std::nullopt;
    for (std::size_t i = 0; i < vars.size(); ++i) point.values[vars[i]] = *k * 2 * t[i] / (1 + norm);
    return *k * (1 - norm) / (1 + norm);
  }
  return std::nullopt;
}

}  // namespace

std::optional<Point> sample_point(const Chart& chart, Rng& rng, const std::map<Var, Rational>& fixed, int attempts) {
  for (int attempt = 0; attempt < attempts; ++attempt) {
    Point p;
    for (Var v : chart.coords()) p.values[v] = rng.small_rational();
    for (Var v : chart.parameters()) p.values[v] = rng.nonzero_rational();
    for (const auto& [v, q] : fixed) p.values[v] = q;
    bool ok = true;
    for (const auto& ext : chart.extensions()) {
      auto s = solve_extension(ext.radicand, chart, rng, p, fixed);
      if (!s || *s <= 0) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    // Later adjustments may have changed earlier radicands; recheck all of them.
    for (const auto& ext : chart.extensions()) {
      Rational q = ext.radicand.evaluate(p.values).constant_value();
      auto r = exact_root(q, 2);
      if (!r || *r <= 0) {
        ok = false;
        break;
      }
      p.extensions[ext.symbol] = *r;
    }
    if (ok) return p;
  }
  return std::nullopt;
}

Witness witness_of(const Point& point) {
  Witness w;
  for (const auto& [v, q] : point.values) w[symbols().display_name(v)] = q.get_str();
  for (const auto& [v, q] : point.extensions) w[symbols().display_name(v)] = q.get_str();
  return w;
}

std::optional<Evaluation> find_nonzero_point(const Expr& e, const Chart& chart, Rng& rng, int attempts) {
  if (e.is_zero()) return std::nullopt;
  for (int i = 0; i < attempts; ++i) {
    auto p = sample_point(chart, rng);
    if (!p) continue;
    try {
      Rational v = eval_rational(e, *p);
      if (v != 0) return Evaluation{std::move(*p), v};
    } catch (const EvaluationError&) {
    }
  }
  return std::nullopt;
}

Check& expect_zero_at(Report& report, const std::string& id, const std::string& ref, const Expr& residual,
                      const Chart& chart, Rng& rng, const std::string& description) {
  Check& c = report.expect_zero(id, ref, residual, description);
  if (c.status == Status::Fail)
    if (auto hit = find_nonzero_point(residual, chart, rng)) {
      c.witness = witness_of(hit->point);
      if (c.description.empty()) c.description = "value " + hit->value.get_str() + " at witness";
    }
  return c;
}

Expr random_polynomial(const std::vector<Var>& vars, Rng& rng, unsigned max_degree, unsigned terms) {
  std::vector<Term> out;
  for (unsigned t = 0; t < terms; ++t) {
    Monomial m;
    auto degree = static_cast<unsigned>(rng.uniform(0, max_degree));
    for (unsigned d = 0; d < degree; ++d) {
      Var v = vars[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(vars.size()) - 1))];
      m = m * Monomial::variable(v);
    }
    out.push_back({m, rng.nonzero_rational(3)});
  }
  return Expr::from_poly(Poly::from_terms(std::move(out)));
}

}  // namespace relcheck
