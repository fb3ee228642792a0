#include <gtest/gtest.h>

#include "relcheck/algebra.hpp"
#include "relcheck/errors.hpp"

using namespace relcheck;

namespace {

/// Structure constants written out independently from the defining relations.
Rational oracle(const std::vector<int>& g, std::size_t i, std::size_t j, std::size_t k) {
  // Basis: P0..P3 then M01 M02 M03 M12 M13 M23.
  static const std::pair<int, int> pairs[] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  auto metric = [&](int a, int b) { return a == b ? g[static_cast<std::size_t>(a)] : 0; };
  auto m_index = [&](int a, int b) -> std::pair<std::size_t, int> {
    if (a == b) return {0, 0};
    int s = 1;
    if (a > b) std::swap(a, b), s = -1;
    for (std::size_t n = 0; n < 6; ++n)
      if (pairs[n].first == a && pairs[n].second == b) return {4 + n, s};
    return {0, 0};
  };
  std::vector<Rational> out(10);
  auto add_m = [&](int a, int b, int coeff) {
    auto [idx, s] = m_index(a, b);
    if (s != 0) out[idx] += coeff * s;
  };
  if (i >= 4 && j < 4) {
    auto [m, n] = pairs[i - 4];
    int r = static_cast<int>(j);
    out[static_cast<std::size_t>(m)] += metric(n, r);
    out[static_cast<std::size_t>(n)] -= metric(m, r);
  } else if (i < 4 && j >= 4) {
    return -oracle(g, j, i, k);
  } else if (i >= 4 && j >= 4) {
    auto [m, n] = pairs[i - 4];
    auto [r, s] = pairs[j - 4];
    add_m(m, s, metric(n, r));
    add_m(n, s, -metric(m, r));
    add_m(r, m, metric(n, s));
    add_m(r, n, -metric(m, s));
  }
  return out[k];
}

}  // namespace

TEST(Algebra, PoincareMatchesIndependentTable) {
  for (const auto& g : {std::vector<int>{1, -1, -1, -1}, std::vector<int>{-1, 1, 1, 1}}) {
    LieAlgebraSpec spec = poincare_spec(g);
    for (std::size_t i = 0; i < 10; ++i)
      for (std::size_t j = 0; j < 10; ++j)
        for (std::size_t k = 0; k < 10; ++k) EXPECT_EQ(spec.c(i, j, k), oracle(g, i, j, k)) << i << j << k;
  }
}

TEST(Algebra, JacobiOverAllTriples) {
  LieAlgebraSpec spec = poincare_spec({1, -1, -1, -1});
  std::size_t n = spec.dim(), triples = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k, ++triples)
        for (std::size_t out = 0; out < n; ++out) {
          Rational sum;
          for (std::size_t m = 0; m < n; ++m)
            sum += spec.c(i, j, m) * spec.c(m, k, out) + spec.c(j, k, m) * spec.c(m, i, out) +
                   spec.c(k, i, m) * spec.c(m, j, out);
          EXPECT_EQ(sum, 0);
        }
  EXPECT_EQ(triples, 1000u);
  EXPECT_EQ(spec.jacobi_defects(), 0u);
  EXPECT_EQ(spec.antisymmetry_defects(), 0u);
}

TEST(Algebra, InvalidSpecRejected) {
  std::vector<Rational> c(8);
  c[(0 * 2 + 1) * 2 + 0] = 1;  // [a,b] = a without [b,a] = -a
  EXPECT_THROW(LieAlgebraSpec({"a", "b"}, c), DomainError);
}

TEST(Algebra, RotationsAndBoostsTable) {
  LieAlgebraSpec jk = poincare_jk_spec({-1, 1, 1, 1});
  auto br = [&](const char* a, const char* b, const char* c) { return jk.bracket(jk.index(a), jk.index(b))[jk.index(c)]; };
  EXPECT_EQ(br("J1", "J2", "J3"), -1);
  EXPECT_EQ(br("K1", "K2", "J3"), 1);
  EXPECT_EQ(br("J3", "K1", "K2"), -1);
  EXPECT_EQ(br("P0", "K1", "P1"), -1);
  EXPECT_EQ(br("P1", "K1", "P0"), -1);
  LieAlgebraSpec conv = poincare_jk_spec({-1, 1, 1, 1}, Convention::Flipped);
  EXPECT_EQ(conv.bracket(conv.index("K1"), conv.index("K2"))[conv.index("J3")], -1);
  EXPECT_EQ(jk.jacobi_defects(), 0u);
}

TEST(Algebra, SerializationRoundTrip) {
  LieAlgebraSpec spec = poincare_spec({1, -1, -1, -1}).with_central("Gamma");
  LieAlgebraSpec back = LieAlgebraSpec::parse(spec.serialize());
  EXPECT_EQ(back.serialize(), spec.serialize());
  EXPECT_EQ(back.dim(), 11u);
  EXPECT_THROW(LieAlgebraSpec::parse("basis: a b\n[a,b] = 1 c\n"), Error);
}

TEST(Algebra, LiePoissonBracket) {
  LieAlgebraSpec spec = poincare_spec({1, -1, -1, -1});
  std::vector<Rational> m12(10), p1(10);
  m12[spec.index("M12")] = 1;
  p1[spec.index("P1")] = 1;
  auto out = lie_poisson_bracket(m12, p1, spec);
  EXPECT_EQ(out, spec.bracket(spec.index("M12"), spec.index("P1")));
  EXPECT_EQ(out[spec.index("P2")], 1);  // g_21 P_1 - g_11 P_2 = P_2
}

TEST(Algebra, ElementarySolution) {
  Report r = check_elementary_solution();
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.count(Status::Pass), 45u);
}

TEST(Algebra, RealizationModuloDistribution) {
  // Translations of R^2 realize the abelian algebra; a deformed field fails strictly
  // and closes modulo the deformation.
  ChartPtr c = builtin_chart("TR3");
  VectorField a = VectorField::coordinate(c, "x1"), b = VectorField::coordinate(c, "x2") + c->x("x1") * VectorField::coordinate(c, "x3");
  LieAlgebraSpec abelian({"A", "B"}, std::vector<Rational>(8));
  EXPECT_FALSE(check_realization(Realization{abelian, {a, b}, {}}).passed());
  EXPECT_TRUE(check_realization(Realization{abelian, {a, b}, {VectorField::coordinate(c, "x3")}}).passed());
}
