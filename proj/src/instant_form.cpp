#include "relcheck/instant_form.hpp"

#include "relcheck/errors.hpp"
#include "relcheck/parse.hpp"

namespace relcheck {

namespace {

constexpr const char* kRefRealization = "Newtonian realization in the instant form";
constexpr const char* kRefWlc = "world-line condition";
constexpr const char* kRefPde = "boost PDE system";
constexpr const char* kRefUnique = "only solution f = 0";
constexpr const char* kRefChain = "compatible Lagrangian chain";
constexpr const char* kRefFamily = "infinite family of free Lagrangians";

int eps(std::size_t l, std::size_t j, std::size_t k) {
  if (l == j || j == k || l == k) return 0;
  return ((j + 3 - l) % 3 == 1) ? 1 : -1;
}

std::vector<int> instant_signature() { return {-1, 1, 1, 1}; }

const std::vector<std::string>& basis_names() {
  static const std::vector<std::string> names = {"P0", "P1", "P2", "P3", "J1", "J2", "J3", "K1", "K2", "K3"};
  return names;
}

Expr first_component(const DifferentialForm& alpha) {
  for (const auto& [idx, c] : alpha.coeffs()) return c;
  return Expr();
}

Check& expect_zero_form(Report& report, const std::string& id, const std::string& ref, const DifferentialForm& residual,
                        Rng& rng) {
  Check& c = report.expect(id, ref, residual.is_zero(), to_string(residual));
  if (c.status == Status::Fail)
    if (auto hit = find_nonzero_point(first_component(residual), *residual.chart(), rng)) {
      c.witness = witness_of(hit->point);
      c.description = "leading coefficient " + hit->value.get_str() + " at witness";
    }
  return c;
}

const Check* first_failure(const Report& r) {
  for (const auto& c : r.checks)
    if (c.status == Status::Fail) return &c;
  return nullptr;
}

}  // namespace

Expr speed_squared() {
  auto chart = tr3_chart();
  Expr u;
  for (std::size_t j = 3; j < 6; ++j) u += chart->x(j) * chart->x(j);
  return u;
}

Expr opaque_f() { return apply_function("f", 0, speed_squared()); }

InstantRealization build_instant_realization(const std::vector<Expr>& accelerations) {
  auto chart = tr3_chart();
  if (accelerations.size() != 3) throw DomainError("three accelerations are required");
  for (const auto& a : accelerations) normalize(a, *chart);

  VectorField gamma(chart);
  for (std::size_t j = 0; j < 3; ++j) {
    gamma[j] = chart->x(3 + j);
    gamma[3 + j] = accelerations[j];
  }
  TangentStructure ts = tangent_structure(chart);

  std::vector<VectorField> fields;
  fields.push_back(gamma);
  for (std::size_t j = 0; j < 3; ++j) fields.push_back(-VectorField::coordinate(chart, j));
  for (std::size_t l = 0; l < 3; ++l) {
    VectorField J(chart);
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k)
        if (int e = eps(l, j, k)) {
          J[k] += Expr(e) * chart->x(j);
          J[3 + k] += Expr(e) * chart->x(3 + j);
        }
    fields.push_back(J);
  }
  for (std::size_t j = 0; j < 3; ++j)
    fields.push_back(chart->x(j) * gamma + chart->x(3 + j) * ts.dilation + ts.vertical_lift(fields[1 + j]));

  return InstantRealization{chart, accelerations, gamma, ts.dilation,
                            Realization{poincare_jk_spec(instant_signature()), std::move(fields), {}}};
}

InstantRealization build_instant_realization(const Expr& f) {
  auto chart = tr3_chart();
  return build_instant_realization({chart->x(3) * f, chart->x(4) * f, chart->x(5) * f});
}

Report wlc_residuals(const InstantRealization& r) {
  Report report("wlc");
  const auto& chart = r.chart;
  for (std::size_t j = 0; j < 3; ++j) {
    const VectorField& K = r.field("K" + std::to_string(j + 1));
    for (std::size_t l = 0; l < 3; ++l) {
      std::string tag = std::to_string(j + 1) + std::to_string(l + 1);
      Expr pos = K.apply(chart->x(l)) - chart->x(j) * chart->x(3 + l);
      report.expect_zero("K" + tag + "/position", kRefWlc, pos);
      Expr vel = K.apply(chart->x(3 + l)) - chart->x(3 + j) * chart->x(3 + l) - chart->x(j) * r.accelerations[l];
      if (j == l) vel += Expr(1);
      report.expect_zero("K" + tag + "/velocity", kRefWlc, vel);
    }
  }
  return report;
}

Report boost_decomposition(const InstantRealization& r) {
  Report report("boost-decomposition");
  TangentStructure ts = tangent_structure(r.chart);
  for (std::size_t j = 0; j < 3; ++j) {
    std::string n = std::to_string(j + 1);
    // Written out in components, independent of the construction path.
    VectorField expected(r.chart);
    for (std::size_t l = 0; l < 3; ++l) {
      expected[l] = r.chart->x(j) * r.chart->x(3 + l);
      expected[3 + l] = r.chart->x(3 + j) * r.chart->x(3 + l) + r.chart->x(j) * r.accelerations[l];
    }
    expected[3 + j] -= Expr(1);
    VectorField diff = r.field("K" + n) - expected;
    report.expect("K" + n, "boost decomposition", diff.is_zero(), diff.is_zero() ? "0" : diff.str(),
                  "Newtonoid part plus vertical lift of a translation");
  }
  VectorField second_order = ts.S.apply(r.gamma) - ts.dilation;
  report.expect("S(Gamma)=Delta", "second order dynamical vector field", second_order.is_zero(),
                second_order.is_zero() ? "0" : second_order.str());
  return report;
}

BoostPde derive_boost_pde() {
  auto chart = tr3_chart();
  InstantRealization r = build_instant_realization(opaque_f());
  BoostPde out{{}, {}, 0, lie_bracket(r.field("K1"), r.field("K2")) - r.field("J3")};
  out.derived = {out.residual[5], out.residual[3], out.residual[4]};

  Expr u = speed_squared();
  Expr f = opaque_f();
  Expr bracket = (Expr(1) - u) * apply_function("f", 1, u) + f;
  Expr w = chart->x(0) * chart->x(4) - chart->x(1) * chart->x(3);
  Expr common = Expr(2) * w * bracket;
  out.displayed = {common * chart->x(5), -chart->x(1) * f + common * chart->x(3), chart->x(0) * f + common * chart->x(4)};

  for (int s : {1, -1}) {
    bool all = true;
    for (std::size_t i = 0; i < 3; ++i) all = all && (out.derived[i] - Expr(s) * out.displayed[i]).is_zero();
    if (all) {
      out.sign = s;
      break;
    }
  }
  return out;
}

Report boost_pde_report(const BoostPde& pde) {
  Report report("boost-pde");
  const char* names[3] = {"pde1 (@xd3)", "pde2 (@xd1)", "pde3 (@xd2)"};
  int s = pde.sign == 0 ? 1 : pde.sign;
  for (std::size_t i = 0; i < 3; ++i)
    report.expect_zero(names[i], kRefPde, pde.derived[i] - Expr(s) * pde.displayed[i],
                       "component of [K1,K2] - J3 against the displayed equation");
  bool positions_free = pde.residual[0].is_zero() && pde.residual[1].is_zero() && pde.residual[2].is_zero();
  report.expect("position components", kRefPde, positions_free, positions_free ? "0" : pde.residual.str(),
                "[K1,K2] - J3 has no @x components");
  report.info("global sign", kRefPde, std::to_string(pde.sign), "derived = sign * displayed");
  return report;
}

Report no_interaction_certificate(Rng& rng) {
  Report report("no-interaction");
  auto chart = tr3_chart();

  Report free = check_realization(build_instant_realization(Expr(0)).realization, kRefRealization);
  report.expect("f=0 closes", kRefUnique, free.passed(),
                std::to_string(free.count(Status::Fail)) + " failing pairs of " + std::to_string(free.checks.size()));

  Expr u = speed_squared();
  std::vector<std::pair<std::string, Expr>> battery = {
      {"f=1", Expr(1)}, {"f=xd^2", u}, {"f=1/(1-xd^2)", Expr(1) / (Expr(1) - u)}};
  for (const auto& [name, f] : battery) {
    InstantRealization r = build_instant_realization(f);
    VectorField residual = lie_bracket(r.field("K1"), r.field("K2")) - r.field("J3");
    Check& c = report.expect(name + " falsified", kRefUnique, false, residual.str());
    attach_witness(c, residual, rng);
    // A reported witness is the certificate.
    c.status = c.witness ? Status::Pass : Status::Fail;
  }

  // On the locus xd1 = xd2 = 0 the second and third equations lose their common term.
  BoostPde pde = derive_boost_pde();
  Bindings locus;
  locus.symbols[chart->coord(3)] = Expr(0);
  locus.symbols[chart->coord(4)] = Expr(0);
  Expr f = opaque_f();
  Expr second = substitute(pde.displayed[1], locus);
  Expr third = substitute(pde.displayed[2], locus);
  Expr f_locus = substitute(f, locus);
  report.expect_zero("locus pde2 = -x2 f", kRefUnique, second + chart->x(1) * f_locus);
  report.expect_zero("locus pde3 = x1 f", kRefUnique, third - chart->x(0) * f_locus);
  Expr at_x1 = substitute(third, chart->coord(0), Expr(1));
  report.expect_zero("locus pde3 at x1=1 equals f", kRefUnique, at_x1 - f_locus, "forces f = 0 pointwise");
  return report;
}

Expr power_lagrangian(const Rational& alpha) {
  auto chart = tr3_chart();
  return Expr::symbol(*chart->lookup("c")) * rational_power(Expr(1) - speed_squared(), alpha);
}

Report lagrangian_chain(const Expr& lagrangian, Rng& rng) {
  auto chart = tr3_chart();
  for (std::size_t j = 0; j < 3; ++j)
    if (!diff(lagrangian, chart->coord(j)).is_zero())
      throw DomainError("the Lagrangian depends on positions; translations would not preserve theta_L");
  Report report("lagrangian-chain");

  std::vector<Expr> components(6);
  for (std::size_t j = 0; j < 3; ++j) components[j] = diff(lagrangian, chart->coord(3 + j));
  DifferentialForm theta = one_form(chart, components);
  DifferentialForm omega = exterior_derivative(theta);
  if (auto p = sample_point(*chart, rng)) {
    try {
      std::size_t rank = two_form_rank(omega, *p);
      Check& c = report.info("omega_L rank", kRefChain, std::to_string(rank), rank < 6 ? "degenerate theta_L" : "");
      c.witness = witness_of(*p);
    } catch (const EvaluationError& e) {
      report.info("omega_L rank", kRefChain, "not evaluated", e.what());
    }
  }

  InstantRealization r = build_instant_realization(Expr(0));
  Expr u = speed_squared();
  // dL/d(xd^2) through Euler's relation on the dilation field.
  Expr l_u = r.dilation.apply(lagrangian) / (Expr(2) * u);
  Expr h = Expr(2) * (u - Expr(1)) * l_u;

  std::vector<Expr> generating(10);
  generating[0] = lagrangian;
  for (std::size_t m = 0; m < 3; ++m) generating[7 + m] = chart->x(m) * h;
  const auto& names = basis_names();
  for (std::size_t i = 0; i < 10; ++i) {
    DifferentialForm residual = lie_derivative(r.realization.fields[i], theta) - differential(chart, generating[i]);
    expect_zero_form(report, "noether " + names[i], kRefChain, residual, rng);
  }
  for (std::size_t m = 0; m < 3; ++m) {
    std::string n = std::to_string(m + 1);
    Expr residual = r.field("K" + n).apply(lagrangian) - r.gamma.apply(generating[7 + m]);
    expect_zero_at(report, "h-equation K" + n, kRefChain, residual, *chart, rng, "L_K L = L_Gamma F with F = x h");
  }
  for (std::size_t n = 0; n < 3; ++n)
    for (std::size_t m = 0; m < 3; ++m) {
      Expr residual = r.field("P" + std::to_string(n + 1)).apply(generating[7 + m]);
      if (n == m) residual += lagrangian;
      expect_zero_at(report, "translation P" + std::to_string(n + 1) + " F" + std::to_string(m + 1), kRefChain,
                     residual, *chart, rng, "L_Pn F_m = -delta_nm L");
    }
  expect_zero_at(report, "ode", kRefChain, Expr(2) * (u - Expr(1)) * l_u - lagrangian, *chart, rng,
                 "2(xd^2 - 1) dL/d(xd^2) = L");
  return report;
}

bool chain_passes(const Expr& lagrangian, Rng& rng) { return lagrangian_chain(lagrangian, rng).passed(); }

Report degenerate_family_demo(Rng& rng) {
  auto chart = tr3_chart();
  Report report("free-family");
  InstantRealization free = build_instant_realization(Expr(0));
  auto free_compatible = [&](const Expr& l) {
    std::vector<Expr> components(6);
    for (std::size_t j = 0; j < 3; ++j) components[j] = diff(l, chart->coord(3 + j));
    DifferentialForm theta = one_form(chart, components);
    return (lie_derivative(free.gamma, theta) - differential(chart, l)).is_zero();
  };
  for (const char* text : {"xd1^2 + 2*xd2^2", "xd1^4 + xd2^2*xd3^2", "1/2*(xd1^2 + xd2^2 + xd3^2)"}) {
    Expr l = parse(text, *chart);
    bool compatible = free_compatible(l);
    Report chain = lagrangian_chain(l, rng);
    const Check* fail = first_failure(chain);
    Check& c = report.expect(std::string("L = ") + text, kRefFamily, compatible && fail != nullptr,
                             fail ? fail->id + ": " + fail->residual : "chain passes",
                             "free-compatible, chain fails");
    if (fail) c.witness = fail->witness;
  }
  Expr root = parse("sqrt(1 - xd1^2 - xd2^2 - xd3^2)", *chart);
  report.expect("L = sqrt(1-xd^2)", kRefFamily, free_compatible(root) && chain_passes(root, rng), "0",
                "the one Lagrangian admitting the realization");
  Expr linear = chart->x("xd1");
  std::vector<Expr> linear_theta(6);
  for (std::size_t j = 0; j < 3; ++j) linear_theta[j] = diff(linear, chart->coord(3 + j));
  DifferentialForm omega = exterior_derivative(one_form(chart, linear_theta));
  report.info("L = xd1", kRefFamily, omega.is_zero() ? "omega_L = 0" : to_string(omega),
              free_compatible(linear) ? "degenerate theta_L (linear in velocity)" : "not free-compatible");
  return report;
}

Report acceleration_constraints(Rng& rng) {
  auto chart = tr3_chart();
  Report report("acceleration-constraints");
  auto commutator_with_gamma = [](const InstantRealization& r, const std::string& name) {
    return lie_bracket(r.field(name), r.gamma);
  };

  // [P_l, P0] = -(da_j/dx_l) d/dxd_j for any accelerations.
  InstantRealization position_force = build_instant_realization({chart->x(0), chart->x(1), chart->x(2)});
  for (std::size_t l = 0; l < 3; ++l) {
    std::string n = std::to_string(l + 1);
    VectorField expected(chart);
    for (std::size_t j = 0; j < 3; ++j) expected[3 + j] = -diff(position_force.accelerations[j], chart->coord(l));
    VectorField residual = commutator_with_gamma(position_force, "P" + n);
    bool ok = residual == expected && !residual.is_zero();
    Check& c = report.expect("a=x: [P" + n + ",P0]", "accelerations cannot depend on positions", ok, residual.str());
    attach_witness(c, residual, rng);
  }
  InstantRealization radial = build_instant_realization(opaque_f());
  for (std::size_t l = 0; l < 3; ++l) {
    std::string n = std::to_string(l + 1);
    VectorField res = commutator_with_gamma(radial, "J" + n);
    report.expect("a=xd f: [J" + n + ",P0]", "rotations force a_j = xd_j f(xd^2)", res.is_zero(), res.str());
    res = commutator_with_gamma(radial, "P" + n);
    report.expect("a=xd f: [P" + n + ",P0]", "accelerations cannot depend on positions", res.is_zero(), res.str());
  }
  InstantRealization skew = build_instant_realization({Expr(0), chart->x(3), Expr(0)});
  bool rotation_fails = false;
  VectorField witness_field(chart);
  for (std::size_t l = 0; l < 3 && !rotation_fails; ++l) {
    witness_field = commutator_with_gamma(skew, "J" + std::to_string(l + 1));
    rotation_fails = !witness_field.is_zero();
  }
  Check& c = report.expect("a2=xd1: rotation closure fails", "rotations force a_j = xd_j f(xd^2)", rotation_fails,
                           witness_field.str());
  attach_witness(c, witness_field, rng);
  bool rotation_closes = true;
  for (std::size_t l = 0; l < 3; ++l)
    rotation_closes = rotation_closes && commutator_with_gamma(position_force, "J" + std::to_string(l + 1)).is_zero();
  report.info("a=x: rotation closure", "rotations force a_j = xd_j f(xd^2)", rotation_closes ? "0" : "nonzero",
              "central forces commute with rotations; translations exclude them");
  return report;
}

Report lagrangian_uniqueness(Rng& rng) {
  auto chart = tr3_chart();
  Report report("lagrangian-uniqueness");
  for (const char* text : {"1/2*(xd1^2 + xd2^2 + xd3^2)", "1 - xd1^2 - xd2^2 - xd3^2"}) {
    Report chain = lagrangian_chain(parse(text, *chart), rng);
    const Check* fail = first_failure(chain);
    Check& c = report.expect(std::string("L = ") + text + " fails", kRefChain, fail && fail->witness,
                             fail ? fail->id + ": " + fail->residual : "chain passes");
    if (fail) c.witness = fail->witness;
  }
  const Rational half(1, 2);
  for (const Rational& delta : {Rational(0), Rational(1, 10), Rational(-1, 10), Rational(1, 3), Rational(-1, 3),
                                Rational(1)}) {
    Rational alpha = half + delta;
    Report chain = lagrangian_chain(power_lagrangian(alpha), rng);
    const Check* ode = chain.find("ode");
    bool expected = alpha == half;
    report.expect("alpha = " + alpha.get_str(), kRefChain, chain.passed() == expected, ode ? ode->residual : "?",
                  expected ? "chain passes" : "chain fails");
  }
  return report;
}

Report instant_form_suite(const InstantOptions& options, Rng& rng) {
  auto chart = tr3_chart();
  Report report("instant-form", 0);
  Expr f = normalize(parse(options.f, *chart), *chart);
  InstantRealization r = build_instant_realization(f);

  Expr j3x1 = r.field("J3").apply(chart->x("x1"));
  report.expect_zero("J3(x1) = -x2", kRefRealization, j3x1 + chart->x("x2"));
  report.append(boost_decomposition(r), "build/");
  report.append(wlc_residuals(build_instant_realization(opaque_f())), "wlc/opaque-f/");
  report.append(wlc_residuals(r), "wlc/");
  report.append(check_realization(r.realization, kRefRealization, &rng), "closure/");
  report.append(acceleration_constraints(rng), "constraints/");
  report.append(boost_pde_report(derive_boost_pde()), "pde/");
  report.append(no_interaction_certificate(rng), "certificate/");
  report.append(lagrangian_chain(normalize(parse(options.lagrangian, *chart), *chart), rng), "chain/");
  report.append(lagrangian_uniqueness(rng), "uniqueness/");
  report.append(degenerate_family_demo(rng), "family/");
  return report;
}

}  // namespace relcheck
