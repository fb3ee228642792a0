#include "relcheck/frozen_phase.hpp"

#include "relcheck/algebra.hpp"
#include "relcheck/massshell_jacobi.hpp"

namespace relcheck {

namespace {

constexpr const char* kRefKernel = "kernel of dtheta";
constexpr const char* kRefDescent = "descent to the frozen quotient";

}  // namespace

DifferentialForm normalized_theta() {
  auto chart = offshell_chart();
  Expr r = chart->ext("r");
  const auto& g = chart->signature();
  std::vector<Expr> components(8);
  for (std::size_t mu = 0; mu < 4; ++mu) components[mu] = Expr(g[mu]) * chart->x(4 + mu) / r;
  return one_form(chart, components);
}

Report frozen_suite(Rng& rng, int points) {
  auto chart = offshell_chart();
  Report report("frozen", 0);
  DifferentialForm theta = normalized_theta();
  DifferentialForm dtheta = exterior_derivative(theta);
  VectorField delta = ambient_dilation();
  VectorField gamma = ambient_reeb();

  DifferentialForm f = contract(delta, dtheta);
  report.expect("i_Delta dtheta = 0", kRefKernel, f.is_zero(), to_string(f));
  f = contract(gamma, dtheta);
  report.expect("i_Gamma dtheta = 0", kRefKernel, f.is_zero(), to_string(f));
  f = lie_derivative(delta, theta);
  report.expect("L_Delta theta = 0", "homogeneous of degree zero in the momenta", f.is_zero(), to_string(f));
  report.expect_zero("theta(Delta) = 0", kRefKernel, pairing(theta, delta));
  expect_zero_at(report, "theta(Gamma) = 1", kRefKernel, pairing(theta, gamma) - Expr(1), *chart, rng,
                 "with Gamma = p/(p.p) d/dx the pairing is 1/r");
  Expr r = chart->ext("r");
  report.info("theta(r Gamma)", kRefKernel, pairing(theta, r * gamma).str(), "normalization with unit pairing");
  f = wedge_power(dtheta, 4);
  report.expect("(dtheta)^4 = 0", kRefKernel, f.is_zero(), to_string(f));

  Point fixed;
  for (std::size_t i = 0; i < 8; ++i) fixed.values[chart->coord(i)] = 0;
  fixed.values[chart->coord(4)] = 5;
  fixed.values[chart->coord(5)] = 3;
  fixed.extensions[chart->extension("r").symbol] = 4;
  std::size_t rank = two_form_rank(dtheta, fixed);
  Check& c = report.expect("rank at p=(5,3,0,0)", kRefKernel, rank == 6, std::to_string(rank));
  c.witness = witness_of(fixed);
  std::size_t good = 0, sampled = 0;
  for (int i = 0; i < points; ++i) {
    auto p = sample_point(*chart, rng);
    if (!p) continue;
    ++sampled;
    if (two_form_rank(dtheta, *p) == 6) ++good;
  }
  report.expect("rank 6 at " + std::to_string(points) + " points", kRefKernel,
                sampled == static_cast<std::size_t>(points) && good == sampled,
                std::to_string(good) + " of " + std::to_string(sampled));

  // The displayed expansion has 1/r on the second term; d(1/r) gives 1/r^3.
  std::vector<Expr> t0(8), pdp(8);
  const auto& g = chart->signature();
  for (std::size_t mu = 0; mu < 4; ++mu) {
    t0[mu] = Expr(g[mu]) * chart->x(4 + mu);
    pdp[4 + mu] = Expr(g[mu]) * chart->x(4 + mu);
  }
  DifferentialForm theta0 = one_form(chart, t0);
  DifferentialForm displayed = (Expr(1) / r) * exterior_derivative(theta0) - (Expr(1) / r) * wedge(one_form(chart, pdp), theta0);
  DifferentialForm diff = dtheta - displayed;
  report.info("dtheta against the displayed expansion", kRefKernel, diff.is_zero() ? "agrees" : to_string(diff),
              "dtheta is computed from theta directly");
  DifferentialForm corrected = (Expr(1) / r) * exterior_derivative(theta0) -
                               (Expr(1) / (r * r * r)) * wedge(one_form(chart, pdp), theta0);
  diff = dtheta - corrected;
  report.expect("dtheta with 1/r^3 on the second term", kRefKernel, diff.is_zero(), to_string(diff));

  std::vector<std::pair<std::string, VectorField>> fields;
  for (std::size_t mu = 0; mu < 4; ++mu) fields.emplace_back("Y" + std::to_string(mu), ambient_translation(mu));
  for (std::size_t mu = 0; mu < 4; ++mu)
    for (std::size_t nu = mu + 1; nu < 4; ++nu)
      fields.emplace_back("X" + std::to_string(mu) + std::to_string(nu), ambient_lorentz(mu, nu));
  for (const auto& [name, X] : fields) {
    VectorField a = lie_bracket(X, delta);
    report.expect("[" + name + ",Delta] = 0", kRefDescent, a.is_zero(), a.is_zero() ? "0" : a.str());
    VectorField b = lie_bracket(X, gamma);
    report.expect("[" + name + ",Gamma] = 0", kRefDescent, b.is_zero(), b.is_zero() ? "0" : b.str());
    f = lie_derivative(X, theta);
    report.expect("L_" + name + " theta = 0", kRefDescent, f.is_zero(), to_string(f));
  }

  // Brackets of the generating functions through the ambient bivector.
  MultivectorField lambda = ambient_lambda();
  LieAlgebraSpec spec = poincare_spec(chart->signature());
  std::vector<Expr> gens = ambient_generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    report.expect_zero("Gamma(" + spec.basis()[i] + ") = 0", kRefDescent, gamma.apply(gens[i]));
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      Expr residual = bivector_pairing(lambda, differential(chart, gens[i]), differential(chart, gens[j]));
      for (std::size_t k = 0; k < gens.size(); ++k)
        if (spec.c(i, j, k) != 0) residual -= Expr(spec.c(i, j, k)) * gens[k];
      report.expect_zero("{" + spec.basis()[i] + "," + spec.basis()[j] + "}", kRefDescent, residual);
    }
  return report;
}

}  // namespace relcheck
