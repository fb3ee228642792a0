#include "relcheck/massshell_jacobi.hpp"

#include "relcheck/errors.hpp"

namespace relcheck {

namespace {

constexpr const char* kRefShell = "mass shell contact structure";
constexpr const char* kRefPair = "Jacobi pair (Lambda_m, Gamma_m)";
constexpr const char* kRefBracket = "Jacobi bracket table";
constexpr const char* kRefIdentities = "Jacobi identity via Schouten properties";
constexpr const char* kRefLeibniz = "Leibniz anomaly";
constexpr const char* kRefHamiltonian = "Hamiltonian operators X_f";
constexpr const char* kRefEleventh = "eleventh generator";

const std::vector<std::pair<std::size_t, std::size_t>>& lorentz_pairs() {
  static const std::vector<std::pair<std::size_t, std::size_t>> pairs = {{0, 1}, {0, 2}, {0, 3},
                                                                         {1, 2}, {1, 3}, {2, 3}};
  return pairs;
}

int metric(std::size_t mu) { return mu == 0 ? 1 : -1; }

Expr offshell_x(std::size_t mu) { return offshell_chart()->x(mu); }
Expr offshell_p(std::size_t mu) { return offshell_chart()->x(4 + mu); }
Expr lower_x(std::size_t mu) { return Expr(metric(mu)) * offshell_x(mu); }
Expr lower_p(std::size_t mu) { return Expr(metric(mu)) * offshell_p(mu); }

Expr offshell_pp() {
  Expr s;
  for (std::size_t mu = 0; mu < 4; ++mu) s += Expr(metric(mu)) * offshell_p(mu) * offshell_p(mu);
  return s;
}

Index full_index(std::size_t n) {
  Index idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  return idx;
}

std::string field_text(const VectorField& X) { return X.is_zero() ? "0" : X.str(); }

Check& expect_zero_field(Report& report, const std::string& id, const std::string& ref, const VectorField& residual,
                         Rng& rng) {
  Check& c = report.expect(id, ref, residual.is_zero(), field_text(residual));
  if (c.status == Status::Fail) attach_witness(c, residual, rng);
  return c;
}

}  // namespace

MassShell build_mass_shell(const Rational& m) {
  ChartPtr sub = mass_shell_chart(m);
  ChartPtr ambient = offshell_chart();
  LevelSet embedding(ambient, sub, offshell_pp() - Expr(m * m), "p0", sub->ext("E"));
  std::vector<Expr> theta0(8);
  for (std::size_t mu = 0; mu < 4; ++mu) theta0[mu] = lower_p(mu);
  DifferentialForm theta = embedding.restrict(one_form(ambient, theta0));
  DifferentialForm dtheta = exterior_derivative(theta);
  DifferentialForm volume = wedge(theta, wedge_power(dtheta, 3));
  Expr coefficient = volume.get(full_index(sub->dim()));
  return MassShell{m, sub, std::move(embedding), std::move(theta), std::move(dtheta), std::move(volume), coefficient};
}

MultivectorField ambient_lambda() {
  auto chart = offshell_chart();
  Expr pp = offshell_pp();
  MultivectorField out(chart, 2);
  for (std::size_t mu = 0; mu < 4; ++mu)
    for (std::size_t nu = 0; nu < 4; ++nu) {
      Expr c = -offshell_p(mu) * offshell_p(nu) / pp;
      if (mu == nu) c += Expr(metric(mu));
      out.add({4 + mu, nu}, c);
    }
  return out;
}

VectorField ambient_reeb() {
  auto chart = offshell_chart();
  Expr pp = offshell_pp();
  VectorField out(chart);
  for (std::size_t mu = 0; mu < 4; ++mu) out[mu] = offshell_p(mu) / pp;
  return out;
}

VectorField ambient_dilation() {
  auto chart = offshell_chart();
  VectorField out(chart);
  for (std::size_t mu = 0; mu < 4; ++mu) out[4 + mu] = offshell_p(mu);
  return out;
}

VectorField ambient_translation(std::size_t mu) { return VectorField::coordinate(offshell_chart(), mu); }

VectorField ambient_lorentz(std::size_t mu, std::size_t nu) {
  auto chart = offshell_chart();
  VectorField out(chart);
  out[nu] += lower_x(mu);
  out[mu] -= lower_x(nu);
  out[4 + nu] += lower_p(mu);
  out[4 + mu] -= lower_p(nu);
  return out;
}

std::vector<Expr> ambient_generators() {
  std::vector<Expr> out;
  for (std::size_t mu = 0; mu < 4; ++mu) out.push_back(lower_p(mu));
  for (auto [mu, nu] : lorentz_pairs()) out.push_back(lower_x(mu) * lower_p(nu) - lower_x(nu) * lower_p(mu));
  return out;
}

JacobiPair build_jacobi_pair(const Rational& m) {
  MassShell shell = build_mass_shell(m);
  MultivectorField lambda = shell.embedding.restrict(ambient_lambda());
  VectorField gamma = shell.embedding.restrict(ambient_reeb());
  return JacobiPair{std::move(shell), std::move(lambda), std::move(gamma)};
}

Expr jacobi_bracket(const Expr& f, const Expr& g, const JacobiPair& pair) {
  const auto& chart = pair.shell.chart;
  return bivector_pairing(pair.lambda, differential(chart, f), differential(chart, g)) + f * pair.gamma.apply(g) -
         g * pair.gamma.apply(f);
}

Expr volume_bracket(const Expr& f, const Expr& g, const MassShell& shell, const Rational& coefficient) {
  const auto& chart = shell.chart;
  DifferentialForm df = differential(chart, f);
  DifferentialForm dg = differential(chart, g);
  DifferentialForm rhs = wedge(f * dg - g * df, wedge_power(shell.dtheta, 3)) +
                         Expr(coefficient) * wedge(wedge(wedge(df, dg), shell.theta), wedge_power(shell.dtheta, 2));
  return rhs.get(full_index(chart->dim())) / shell.volume_coefficient;
}

HamiltonianField hamiltonian_field(const Expr& f, const JacobiPair& pair) {
  VectorField field = sharp(pair.lambda, differential(pair.shell.chart, f)) + f * pair.gamma;
  return HamiltonianField{std::move(field), -pair.gamma.apply(f)};
}

Report jacobi_pair_report(const JacobiPair& pair, Rng& rng) {
  const MassShell& shell = pair.shell;
  const auto& chart = shell.chart;
  Report report("jacobi-pair");

  // Volume: nonzero canonical numerator and a nonzero value at a sampled point.
  report.expect("volume numerator", kRefShell, !shell.volume_coefficient.is_zero(), shell.volume_coefficient.str(),
                "theta ^ (dtheta)^3 has a nonzero coefficient");
  if (auto p = sample_point(*chart, rng)) {
    Rational v = eval_rational(shell.volume_coefficient, *p);
    Check& c = report.expect("volume at point", kRefShell, v != 0, v.get_str());
    c.witness = witness_of(*p);
  }

  DifferentialForm dtheta3 = wedge_power(shell.dtheta, 3);
  DifferentialForm residual = contract(pair.gamma, shell.volume) - dtheta3;
  report.expect("i_Gamma vol = (dtheta)^3", kRefPair, residual.is_zero(), to_string(residual));
  residual = contract(pair.lambda, shell.volume) - Expr(3) * wedge(shell.theta, wedge_power(shell.dtheta, 2));
  report.expect("i_Lambda vol = 3 theta ^ (dtheta)^2", kRefPair, residual.is_zero(), to_string(residual));

  Expr m2(shell.mass * shell.mass);
  VectorField expected_gamma(chart);
  for (std::size_t mu = 0; mu < 4; ++mu) expected_gamma[mu] = shell.embedding.restrict(offshell_p(mu)) / m2;
  expect_zero_field(report, "Gamma_m = p/m^2 d/dx", kRefPair, pair.gamma - expected_gamma, rng);
  report.expect_zero("theta(Gamma_m) = 1", kRefPair, contract(pair.gamma, shell.theta).scalar_value() - Expr(1));
  residual = contract(pair.gamma, shell.dtheta);
  report.expect("i_Gamma dtheta = 0", kRefPair, residual.is_zero(), to_string(residual));

  // Bracket table against the closed forms.
  std::vector<Expr> x, p;
  for (std::size_t mu = 0; mu < 4; ++mu) {
    x.push_back(shell.embedding.restrict(offshell_x(mu)));
    p.push_back(shell.embedding.restrict(offshell_p(mu)));
  }
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t s = 0; s < 4; ++s) {
      std::string rs = std::to_string(r), ss = std::to_string(s);
      Expr g_rs = r == s ? Expr(metric(r)) : Expr(0);
      expect_zero_at(report, "[p" + rs + ",x" + ss + "]", kRefBracket, jacobi_bracket(p[r], x[s], pair) - g_rs, *chart,
                     rng);
      if (r < s) {
        Expr xx = (x[r] * p[s] - x[s] * p[r]) / m2;
        expect_zero_at(report, "[x" + rs + ",x" + ss + "]", kRefBracket, jacobi_bracket(x[r], x[s], pair) - xx, *chart,
                       rng);
        expect_zero_at(report, "[p" + rs + ",p" + ss + "]", kRefBracket, jacobi_bracket(p[r], p[s], pair), *chart, rng);
      }
    }

  // Hamiltonian fields.
  expect_zero_field(report, "X_1 = Gamma_m", kRefHamiltonian, hamiltonian_field(Expr(1), pair).field - pair.gamma, rng);
  Rational c(-3, 2);
  expect_zero_field(report, "X_c = c Gamma_m", kRefHamiltonian,
                    hamiltonian_field(Expr(c), pair).field - Expr(c) * pair.gamma, rng);
  auto gens = ambient_generators();
  for (std::size_t mu = 0; mu < 4; ++mu) {
    VectorField Y = shell.embedding.restrict(ambient_translation(mu));
    expect_zero_field(report, "X_P" + std::to_string(mu) + " = Y" + std::to_string(mu), kRefHamiltonian,
                      hamiltonian_field(shell.embedding.restrict(gens[mu]), pair).field - Y, rng);
  }
  for (std::size_t a = 0; a < lorentz_pairs().size(); ++a) {
    auto [mu, nu] = lorentz_pairs()[a];
    std::string tag = std::to_string(mu) + std::to_string(nu);
    VectorField X = shell.embedding.restrict(ambient_lorentz(mu, nu));
    expect_zero_field(report, "X_M" + tag + " = X" + tag, kRefHamiltonian,
                      hamiltonian_field(shell.embedding.restrict(gens[4 + a]), pair).field - X, rng);
  }
  return report;
}

Report jacobi_identity_suite(const JacobiPair& pair, Rng& rng, int triples) {
  const MassShell& shell = pair.shell;
  const auto& chart = shell.chart;
  Report report("jacobi-identities");

  MultivectorField gamma = to_multivector(pair.gamma);
  MultivectorField gl_wedge = Expr(2) * wedge(gamma, pair.lambda);
  MultivectorField ll = schouten_bracket(pair.lambda, pair.lambda, SchoutenConvention::DegreeShifted) - gl_wedge;
  report.expect("[Lambda,Lambda] = 2 Gamma^Lambda", kRefIdentities, ll.is_zero(), to_string(ll),
                "degree-shifted Schouten signs");
  MultivectorField alt = schouten_bracket(pair.lambda, pair.lambda) + gl_wedge;
  report.info("[Lambda,Lambda] alternating signs", kRefIdentities, alt.is_zero() ? "-2 Gamma^Lambda" : to_string(alt),
              "the same identity under the alternating-sum Schouten signs");
  MultivectorField gl = schouten_bracket(gamma, pair.lambda);
  report.expect("[Gamma,Lambda] = 0", kRefIdentities, gl.is_zero(), to_string(gl));

  std::vector<Var> vars = chart->coords();
  std::size_t jacobi_fail = 0, leibniz_fail = 0, antisym_fail = 0, operator_fail = 0;
  for (int t = 0; t < triples; ++t) {
    Expr f = random_polynomial(vars, rng, 2, 3);
    Expr g = random_polynomial(vars, rng, 2, 3);
    Expr h = random_polynomial(vars, rng, 2, 3);
    Expr fg = jacobi_bracket(f, g, pair);
    Expr cyclic = jacobi_bracket(f, jacobi_bracket(g, h, pair), pair) +
                  jacobi_bracket(g, jacobi_bracket(h, f, pair), pair) + jacobi_bracket(h, fg, pair);
    if (!cyclic.is_zero()) ++jacobi_fail;
    Expr leibniz = jacobi_bracket(f, g * h, pair) - fg * h - g * jacobi_bracket(f, h, pair) +
                   jacobi_bracket(f, Expr(1), pair) * g * h;
    if (!leibniz.is_zero()) ++leibniz_fail;
    if (!(fg + jacobi_bracket(g, f, pair)).is_zero()) ++antisym_fail;
    if (!(hamiltonian_field(f, pair).apply(g) - fg).is_zero()) ++operator_fail;
  }
  std::string n = std::to_string(triples);
  report.expect("Jacobi identity on " + n + " triples", kRefIdentities, jacobi_fail == 0,
                std::to_string(jacobi_fail) + " nonzero");
  report.expect("Leibniz anomaly on " + n + " triples", kRefLeibniz, leibniz_fail == 0,
                std::to_string(leibniz_fail) + " nonzero");
  report.expect("antisymmetry on " + n + " pairs", kRefBracket, antisym_fail == 0,
                std::to_string(antisym_fail) + " nonzero");
  report.expect("X~_f(g) = [f,g] on " + n + " pairs", kRefHamiltonian, operator_fail == 0,
                std::to_string(operator_fail) + " nonzero");
  Expr x0 = chart->x("x0"), p1 = chart->x("p1"), x1 = chart->x("x1");
  report.expect_zero("Leibniz anomaly f=x0 g=p1 h=x1", kRefLeibniz,
                     jacobi_bracket(x0, p1 * x1, pair) - jacobi_bracket(x0, p1, pair) * x1 -
                         p1 * jacobi_bracket(x0, x1, pair) + jacobi_bracket(x0, Expr(1), pair) * p1 * x1);

  // Volume-form definition of the bracket.
  for (const Rational& coefficient : {Rational(3), Rational(2)}) {
    std::size_t mismatches = 0;
    Rng local(rng.next());
    for (int t = 0; t < 5; ++t) {
      Expr f = random_polynomial(vars, local, 2, 2);
      Expr g = random_polynomial(vars, local, 2, 2);
      if (!(volume_bracket(f, g, shell, coefficient) - jacobi_bracket(f, g, pair)).is_zero()) ++mismatches;
    }
    std::string id = "volume definition, coefficient " + coefficient.get_str();
    if (coefficient == 3)
      report.expect(id, "bracket through the volume form", mismatches == 0, std::to_string(mismatches) + " of 5 differ",
                    "coefficient forced by i_Lambda vol = 3 theta ^ (dtheta)^2");
    else
      report.info(id, "bracket through the volume form", std::to_string(mismatches) + " of 5 differ",
                  "coefficient as displayed");
  }

  // Constants of the motion and the Poisson reduction.
  LieAlgebraSpec spec = poincare_spec(chart->signature());
  std::vector<Expr> gens;
  for (const auto& g : ambient_generators()) gens.push_back(shell.embedding.restrict(g));
  for (std::size_t i = 0; i < gens.size(); ++i)
    report.expect_zero("Gamma(" + spec.basis()[i] + ") = 0", "constants of the motion for Gamma_m",
                       pair.gamma.apply(gens[i]));
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      Expr bracket = jacobi_bracket(gens[i], gens[j], pair);
      Expr poisson = bivector_pairing(pair.lambda, differential(chart, gens[i]), differential(chart, gens[j]));
      Expr residual = bracket - poisson;
      for (std::size_t k = 0; k < gens.size(); ++k)
        if (spec.c(i, j, k) != 0) poisson -= Expr(spec.c(i, j, k)) * gens[k];
      std::string id = "[" + spec.basis()[i] + "," + spec.basis()[j] + "]";
      report.expect_zero(id + " Poisson", "reduces to a Poisson bracket", residual);
      report.expect_zero(id + " structure", "realization in terms of Poisson brackets", poisson);
    }
  return report;
}

Report eleventh_generator_check(const JacobiPair& pair, Rng& rng) {
  const MassShell& shell = pair.shell;
  std::vector<VectorField> fields;
  for (std::size_t mu = 0; mu < 4; ++mu) fields.push_back(shell.embedding.restrict(ambient_translation(mu)));
  for (auto [mu, nu] : lorentz_pairs()) fields.push_back(shell.embedding.restrict(ambient_lorentz(mu, nu)));
  fields.push_back(pair.gamma);
  Realization r{poincare_spec(shell.chart->signature()).with_central("Gamma"), std::move(fields), {}};
  return check_realization(r, kRefEleventh, &rng);
}

Report jacobi_suite(const Rational& m, Rng& rng) {
  Report report("jacobi", 0);
  JacobiPair pair = build_jacobi_pair(m);
  report.append(jacobi_pair_report(pair, rng), "pair/");
  report.append(jacobi_identity_suite(pair, rng), "identities/");
  report.append(eleventh_generator_check(pair, rng), "eleventh/");
  report.info("signature", "metric signature", "(+,-,-,-)",
              "p.p = m^2 needs a timelike convention; the instant form section states (-,+,+,+)");
  return report;
}

}  // namespace relcheck
