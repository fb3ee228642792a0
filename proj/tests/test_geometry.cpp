#include <gtest/gtest.h>

#include "relcheck/errors.hpp"
#include "relcheck/properties.hpp"

using namespace relcheck;

namespace {

ChartPtr chart() { return property_chart(); }

}  // namespace

TEST(Geometry, WedgeOfOneFormsAgainstBruteForce) {
  Rng rng(31);
  for (int t = 0; t < 25; ++t) {
    DifferentialForm a = random_one_form(chart(), rng), b = random_one_form(chart(), rng);
    DifferentialForm w = wedge(a, b);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        EXPECT_EQ(w.get({i, j}), a.get({i}) * b.get({j}) - a.get({j}) * b.get({i}));
  }
}

TEST(Geometry, WedgeOfThreeOneFormsIsDeterminant) {
  Rng rng(32);
  for (int t = 0; t < 10; ++t) {
    std::vector<DifferentialForm> f = {random_one_form(chart(), rng), random_one_form(chart(), rng),
                                       random_one_form(chart(), rng)};
    DifferentialForm w = wedge(wedge(f[0], f[1]), f[2]);
    const std::size_t i = 0, j = 1, k = 3;
    auto c = [&](int a, std::size_t idx) { return f[static_cast<std::size_t>(a)].get({idx}); };
    Expr det = c(0, i) * (c(1, j) * c(2, k) - c(1, k) * c(2, j)) - c(0, j) * (c(1, i) * c(2, k) - c(1, k) * c(2, i)) +
               c(0, k) * (c(1, i) * c(2, j) - c(1, j) * c(2, i));
    EXPECT_EQ(w.get({i, j, k}), det);
  }
}

TEST(Geometry, ExteriorDerivativeSquaresToZero) {
  Rng rng(33);
  for (int t = 0; t < 25; ++t) {
    Expr f = random_expression(*chart(), rng);
    EXPECT_TRUE(exterior_derivative(exterior_derivative(differential(chart(), f))).is_zero()) << f.str();
    DifferentialForm a = random_one_form(chart(), rng);
    EXPECT_TRUE(exterior_derivative(exterior_derivative(a)).is_zero());
  }
}

TEST(Geometry, CartanMatchesCoordinateLieDerivative) {
  Rng rng(34);
  for (int t = 0; t < 25; ++t) {
    VectorField X = random_vector_field(chart(), rng);
    DifferentialForm a = random_one_form(chart(), rng);
    std::vector<Expr> expected(4);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        expected[i] += X[j] * diff(a.get({i}), chart()->coord(j)) + a.get({j}) * diff(X[j], chart()->coord(i));
    EXPECT_EQ(lie_derivative(X, a), one_form(chart(), expected));
    // Cartan on a two-form: L_X w = i_X dw + d i_X w.
    DifferentialForm w = wedge(a, random_one_form(chart(), rng));
    EXPECT_EQ(lie_derivative(X, w), contract(X, exterior_derivative(w)) + exterior_derivative(contract(X, w)));
  }
}

TEST(Geometry, LieBracketJacobi) {
  Rng rng(35);
  for (int t = 0; t < 25; ++t) {
    VectorField X = random_vector_field(chart(), rng), Y = random_vector_field(chart(), rng),
                Z = random_vector_field(chart(), rng);
    VectorField j =
        lie_bracket(X, lie_bracket(Y, Z)) + lie_bracket(Y, lie_bracket(Z, X)) + lie_bracket(Z, lie_bracket(X, Y));
    EXPECT_TRUE(j.is_zero()) << j.str();
  }
}

TEST(Geometry, LieBracketActsAsCommutator) {
  Rng rng(36);
  for (int t = 0; t < 10; ++t) {
    VectorField X = random_vector_field(chart(), rng), Y = random_vector_field(chart(), rng);
    Expr f = random_expression(*chart(), rng);
    EXPECT_EQ(lie_bracket(X, Y).apply(f), X.apply(Y.apply(f)) - Y.apply(X.apply(f)));
  }
}

TEST(Geometry, SchoutenAgainstDecomposableOracle) {
  Rng rng(37);
  for (int t = 0; t < 25; ++t) {
    std::vector<VectorField> xs = {random_vector_field(chart(), rng)};
    if (t % 2) xs.push_back(random_vector_field(chart(), rng));
    std::vector<VectorField> ys = {random_vector_field(chart(), rng), random_vector_field(chart(), rng)};
    MultivectorField a = to_multivector(xs[0]);
    if (xs.size() == 2) a = wedge(xs[0], xs[1]);
    MultivectorField b = wedge(ys[0], ys[1]);
    EXPECT_EQ(schouten_bracket(a, b), decomposable_schouten(xs, ys));
    MultivectorField shifted = schouten_bracket(a, b, SchoutenConvention::DegreeShifted);
    EXPECT_EQ(shifted, xs.size() == 2 ? -schouten_bracket(a, b) : schouten_bracket(a, b));
  }
}

TEST(Geometry, SchoutenOfVectorsIsLieBracket) {
  Rng rng(38);
  VectorField X = random_vector_field(chart(), rng), Y = random_vector_field(chart(), rng);
  EXPECT_EQ(to_vector_field(schouten_bracket(to_multivector(X), to_multivector(Y))), lie_bracket(X, Y));
}

TEST(Geometry, BivectorContractionConvention) {
  Rng rng(39);
  VectorField X = random_vector_field(chart(), rng), Y = random_vector_field(chart(), rng);
  Expr f = random_expression(*chart(), rng), g = random_expression(*chart(), rng);
  MultivectorField L = wedge(X, Y);
  DifferentialForm df = differential(chart(), f), dg = differential(chart(), g);
  Expr expected = X.apply(f) * Y.apply(g) - X.apply(g) * Y.apply(f);
  EXPECT_EQ(bivector_pairing(L, df, dg), expected);
  EXPECT_EQ(contract(L, wedge(df, dg)).scalar_value(), expected);
  EXPECT_EQ(sharp(L, df).apply(g), expected);
}

TEST(Geometry, TwoFormRank) {
  ChartPtr c = chart();
  DifferentialForm w = wedge(differential(c, c->x("x")), differential(c, c->x("y"))) +
                       wedge(differential(c, c->x("z")), differential(c, c->x("w")));
  Point p;
  for (auto v : c->coords()) p.values[v] = 1;
  EXPECT_EQ(two_form_rank(w, p), 4u);
  EXPECT_EQ(two_form_rank(wedge(differential(c, c->x("x")), differential(c, c->x("y"))), p), 2u);
  EXPECT_EQ(rational_rank({{1, 2}, {2, 4}}), 1u);
}

TEST(Geometry, TangentLiftPreservesTheDilation) {
  ChartPtr tr4 = tr4_chart();
  VectorField base(tr4);
  base[1] = tr4->x(0);
  base[0] = tr4->x(1);
  VectorField lift = tangent_lift(base);
  TangentStructure ts = tangent_structure(tr4);
  EXPECT_TRUE(lie_bracket(lift, ts.dilation).is_zero());
  EXPECT_THROW(tangent_structure(offshell_chart()), DomainError);
}

TEST(Geometry, LevelSetImplicitDifferentiation) {
  // On p.p = m^2 with p0 = E: dE/dp1 = p1 / E, and the restricted constraint vanishes.
  ChartPtr shell = mass_shell_chart(Rational(1));
  Expr E = shell->ext("E");
  Expr p1 = shell->x("p1");
  EXPECT_EQ(diff(E, shell->coord(shell->index("p1"))), p1 / E);
}
