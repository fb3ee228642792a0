#include "relcheck/properties.hpp"

#include "relcheck/parse.hpp"

namespace relcheck {

namespace {

constexpr const char* kRef = "plumbing";

std::vector<Var> coordinate_vars(const Chart& chart) { return chart.coords(); }

Expr random_poly(const Chart& chart, Rng& rng, unsigned degree = 2, unsigned terms = 3) {
  return random_polynomial(coordinate_vars(chart), rng, degree, terms);
}

Expr nonzero_poly(const Chart& chart, Rng& rng) {
  for (;;) {
    Expr p = random_poly(chart, rng, 1, 2);
    if (!p.is_zero()) return p;
  }
}

/// Coordinate formula (L_X a)_i = X^j d_j a_i + a_j d_i X^j.
DifferentialForm coordinate_lie_derivative(const VectorField& X, const DifferentialForm& a) {
  const auto& chart = X.chart();
  std::size_t n = chart->dim();
  std::vector<Expr> out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Expr ai = a.get({i}), aj = a.get({j});
      out[i] += X[j] * diff(ai, chart->coord(j)) + aj * diff(X[j], chart->coord(i));
    }
  return one_form(chart, out);
}

MultivectorField wedge_all(const std::vector<VectorField>& fields, const ChartPtr& chart) {
  MultivectorField out = MultivectorField::scalar(chart, Expr(1));
  for (const auto& f : fields) out = wedge(out, to_multivector(f));
  return out;
}

void tally(Report& report, const std::string& id, int bad, int total, const std::string& first) {
  report.expect(id, kRef, bad == 0, bad == 0 ? "0" : first, std::to_string(total) + " seeded inputs");
}

}  // namespace

ChartPtr property_chart() {
  static const ChartPtr chart = load_chart(
      "name: property\n"
      "coordinates: x y z w\n"
      "parameters: c\n"
      "functions: f\n"
      "extension: s = 1 + x^2 + y^2 positive\n");
  return chart;
}

Expr random_expression(const Chart& chart, Rng& rng) {
  Expr p = random_poly(chart, rng);
  switch (rng.uniform(0, 4)) {
    case 0:
      return p;
    case 1:
      return p / nonzero_poly(chart, rng);
    case 2:
      if (!chart.extensions().empty()) return p + random_poly(chart, rng, 1, 2) * Expr::symbol(chart.extensions()[0].symbol);
      return p;
    case 3:
      if (!chart.functions().empty())
        return p * apply_function(*chart.functions().begin(), 0, random_poly(chart, rng, 2, 2)) + random_poly(chart, rng, 1, 1);
      return p;
    default:
      if (!chart.extensions().empty())
        return (p + Expr::symbol(chart.extensions()[0].symbol)) / nonzero_poly(chart, rng);
      return p / nonzero_poly(chart, rng);
  }
}

VectorField random_vector_field(const ChartPtr& chart, Rng& rng) {
  VectorField X(chart);
  for (std::size_t i = 0; i < chart->dim(); ++i) X[i] = random_poly(*chart, rng, 2, 2);
  return X;
}

DifferentialForm random_one_form(const ChartPtr& chart, Rng& rng) {
  std::vector<Expr> c(chart->dim());
  for (auto& e : c) e = random_poly(*chart, rng, 2, 2);
  return one_form(chart, c);
}

MultivectorField decomposable_schouten(const std::vector<VectorField>& xs, const std::vector<VectorField>& ys) {
  const auto& chart = xs.front().chart();
  MultivectorField out(chart, xs.size() + ys.size() - 1);
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = 0; j < ys.size(); ++j) {
      std::vector<VectorField> rest = {lie_bracket(xs[i], ys[j])};
      for (std::size_t k = 0; k < xs.size(); ++k)
        if (k != i) rest.push_back(xs[k]);
      for (std::size_t k = 0; k < ys.size(); ++k)
        if (k != j) rest.push_back(ys[k]);
      MultivectorField term = wedge_all(rest, chart);
      out = out + ((i + j) % 2 == 0 ? term : -term);
    }
  return out;
}

Report engine_properties(Rng& rng, int inputs, int expressions) {
  Report report("engine");
  ChartPtr chart = property_chart();

  int bad = 0;
  std::string first;
  for (int t = 0; t < inputs; ++t) {
    Expr f = random_expression(*chart, rng);
    DifferentialForm a = random_one_form(chart, rng);
    DifferentialForm dd0 = exterior_derivative(exterior_derivative(differential(chart, f)));
    DifferentialForm dd1 = exterior_derivative(exterior_derivative(a));
    if (!dd0.is_zero() || !dd1.is_zero()) {
      ++bad;
      if (first.empty()) first = to_string(dd0.is_zero() ? dd1 : dd0);
    }
  }
  tally(report, "d^2 = 0", bad, inputs, first);

  bad = 0;
  first.clear();
  for (int t = 0; t < inputs; ++t) {
    VectorField X = random_vector_field(chart, rng);
    DifferentialForm a = random_one_form(chart, rng);
    DifferentialForm diffs = lie_derivative(X, a) - coordinate_lie_derivative(X, a);
    if (!diffs.is_zero()) {
      ++bad;
      if (first.empty()) first = to_string(diffs);
    }
  }
  tally(report, "Cartan formula", bad, inputs, first);

  bad = 0;
  first.clear();
  for (int t = 0; t < inputs; ++t) {
    VectorField X = random_vector_field(chart, rng), Y = random_vector_field(chart, rng),
                Z = random_vector_field(chart, rng);
    VectorField j = lie_bracket(X, lie_bracket(Y, Z)) + lie_bracket(Y, lie_bracket(Z, X)) +
                    lie_bracket(Z, lie_bracket(X, Y));
    if (!j.is_zero()) {
      ++bad;
      if (first.empty()) first = j.str();
    }
  }
  tally(report, "Lie bracket Jacobi identity", bad, inputs, first);

  bad = 0;
  first.clear();
  for (int t = 0; t < inputs; ++t) {
    std::vector<VectorField> xs = {random_vector_field(chart, rng)};
    if (t % 2 == 0) xs.push_back(random_vector_field(chart, rng));
    std::vector<VectorField> ys = {random_vector_field(chart, rng), random_vector_field(chart, rng)};
    MultivectorField diffs =
        schouten_bracket(wedge_all(xs, chart), wedge_all(ys, chart)) - decomposable_schouten(xs, ys);
    if (!diffs.is_zero()) {
      ++bad;
      if (first.empty()) first = to_string(diffs);
    }
  }
  tally(report, "Schouten bracket against decomposable oracle", bad, inputs, first);

  bad = 0;
  first.clear();
  int product_bad = 0;
  std::string product_first;
  for (int t = 0; t < expressions; ++t) {
    Expr e = random_expression(*chart, rng), g = random_expression(*chart, rng);
    Expr once = normalize(e, *chart);
    if (normalize(once, *chart) != once || once != e) {
      ++bad;
      if (first.empty()) first = e.str();
    }
    Var v = chart->coord(static_cast<std::size_t>(rng.uniform(0, 3)));
    Expr rule = diff(e * g, v) - diff(e, v) * g - e * diff(g, v);
    if (!rule.is_zero()) {
      ++product_bad;
      if (product_first.empty()) product_first = rule.str();
    }
  }
  tally(report, "normalize idempotence", bad, expressions, first);
  tally(report, "product rule", product_bad, expressions, product_first);
  return report;
}

Report round_trip_properties(Rng& rng, int expressions) {
  Report report("round-trip");
  ChartPtr chart = property_chart();
  int bad = 0;
  std::string first;
  for (int t = 0; t < expressions; ++t) {
    Expr e = random_expression(*chart, rng);
    std::string text = e.str();
    Expr back = parse(text, *chart);
    if (back != e || back.str() != text) {
      ++bad;
      if (first.empty()) first = text;
    }
  }
  tally(report, "parse-print round trip", bad, expressions, first);
  return report;
}

}  // namespace relcheck
