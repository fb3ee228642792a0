#include <gtest/gtest.h>

#include <set>

#include "relcheck/errors.hpp"
#include "relcheck/frozen_phase.hpp"
#include "relcheck/instant_form.hpp"
#include "relcheck/lagrangian_form.hpp"
#include "relcheck/massshell_jacobi.hpp"

using namespace relcheck;

namespace {

std::set<std::string> failing(const Report& r) {
  std::set<std::string> out;
  for (const auto& c : r.checks)
    if (c.status == Status::Fail) out.insert(c.id);
  return out;
}

}  // namespace

TEST(InstantForm, FreeCaseCloses) {
  Rng rng(1);
  InstantRealization inst = build_instant_realization(Expr(0));
  Report r = check_realization(inst.realization);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.checks.size(), 45u);
}

TEST(InstantForm, ConstantInteractionFailsWithWitness) {
  Rng rng(2);
  InstantRealization inst = build_instant_realization(Expr(1));
  Report r = check_realization(inst.realization, "commutation relations", &rng);
  EXPECT_FALSE(r.passed());
  const Check* c = r.find("[K1,K2]");
  ASSERT_NE(c, nullptr);
  EXPECT_EQ(c->status, Status::Fail);
  EXPECT_TRUE(c->witness.has_value());
}

TEST(InstantForm, BoostPdesMatchDisplay) {
  Report r = boost_pde_report(derive_boost_pde());
  EXPECT_TRUE(r.passed());
}

TEST(InstantForm, FullSuite) {
  Rng rng(3);
  Report r = instant_form_suite(InstantOptions{}, rng);
  EXPECT_TRUE(r.passed()) << render_text(r);
}

TEST(InstantForm, LagrangianDependingOnPositionRejected) {
  Rng rng(4);
  ChartPtr c = tr3_chart();
  EXPECT_THROW(lagrangian_chain(c->x("x1"), rng), DomainError);
}

TEST(MassShell, NonpositiveMassRejected) {
  EXPECT_THROW(build_mass_shell(Rational(0)), DomainError);
}

TEST(MassShell, SuitesPassForTwoMasses) {
  for (int m : {1, 3}) {
    Rng rng(5);
    Report r = jacobi_suite(Rational(m), rng);
    EXPECT_TRUE(r.passed()) << render_text(r);
  }
}

TEST(MassShell, BracketIsAntisymmetricAtAPoint) {
  JacobiPair pair = build_jacobi_pair(Rational(1));
  const Chart& c = *pair.shell.chart;
  Expr f = c.x("x1") * c.x("p2"), g = c.x("x0") + c.x("p1");
  EXPECT_TRUE((jacobi_bracket(f, g, pair) + jacobi_bracket(g, f, pair)).is_zero());
}

TEST(FrozenPhase, OnlyTheReebNormalizationFails) {
  Rng rng(6);
  Report r = frozen_suite(rng);
  EXPECT_EQ(failing(r), (std::set<std::string>{"theta(Gamma) = 1"}));
}

TEST(LagrangianForm, KnownFailuresOnly) {
  Rng rng(7);
  Report r = lagrangian_suite(rng);
  std::set<std::string> expected = {"bivector/Lambda closed form", "translations/L_P0 f1 = 0",
                                    "translations/L_P1 f1 = 0", "translations/L_P2 f1 = 0",
                                    "translations/L_P3 f1 = 0"};
  EXPECT_EQ(failing(r), expected);
}

TEST(LagrangianForm, ClosedFormMissesRadialTerm) {
  LagrangianGeometry geo = build_lagrangian_geometry();
  MultivectorField lambda = connection_bivector(geo, build_connection(geo));
  VectorField position(geo.chart);
  for (std::size_t s = 0; s < 4; ++s) position[s] = geo.chart->x(s);
  MultivectorField rest = lambda - displayed_bivector(geo) + (Expr(1) / geo.lagrangian) * wedge(geo.gamma, position);
  EXPECT_TRUE(rest.is_zero());
}

TEST(LagrangianForm, BracketValueAtPoint) {
  LagrangianGeometry geo = build_lagrangian_geometry();
  MultivectorField lambda = connection_bivector(geo, build_connection(geo));
  const auto& c = geo.chart;
  Point p;
  std::vector<Rational> values = {1, 0, 0, 0, 5, 3, 0, 0};
  for (std::size_t i = 0; i < 8; ++i) p.values[c->coord(i)] = values[i];
  p.extensions[c->extension("v").symbol] = 4;
  Expr bracket = bivector_pairing(lambda, differential(c, c->x(0)), differential(c, c->x(1)));
  EXPECT_EQ(eval_rational(bracket, p), Rational(3, 4));
}

TEST(LagrangianForm, ProjectorProperties) {
  LagrangianGeometry geo = build_lagrangian_geometry();
  Connection conn = build_connection(geo);
  EXPECT_TRUE((conn.A * conn.A - conn.A).is_zero());
  EXPECT_TRUE(conn.A.apply(geo.gamma).is_zero());
  EXPECT_TRUE(conn.A.apply(geo.dilation).is_zero());
}
