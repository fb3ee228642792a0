#pragma once

#include <vector>

#include "relcheck/algebra.hpp"
#include "relcheck/geometry.hpp"
#include "relcheck/report.hpp"
#include "relcheck/sampling.hpp"

namespace relcheck {

/// Mass shell p.p = m^2, upper branch p0 = E, embedded in the offshell chart.
struct MassShell {
  Rational mass;
  ChartPtr chart;
  LevelSet embedding;
  DifferentialForm theta;   ///< pullback of p_mu dx^mu
  DifferentialForm dtheta;
  DifferentialForm volume;  ///< theta ^ (dtheta)^3
  Expr volume_coefficient;  ///< coefficient of dx0^...^dp3
};
/// Throws DomainError for m <= 0.
MassShell build_mass_shell(const Rational& m);

/// Ambient tensors on the offshell chart.
MultivectorField ambient_lambda();    ///< (g^mn - p^m p^n / p.p) d/dp^m ^ d/dx^n
VectorField ambient_reeb();           ///< p^m / p.p d/dx^m
VectorField ambient_dilation();       ///< p^m d/dp^m
/// Translation Y_m and Lorentz field X_mn = x_m d/dx^n - x_n d/dx^m + p_m d/dp^n - p_n d/dp^m.
VectorField ambient_translation(std::size_t mu);
VectorField ambient_lorentz(std::size_t mu, std::size_t nu);
/// P_m = p_m and M_mn = x_m p_n - x_n p_m in poincare_spec order.
std::vector<Expr> ambient_generators();

struct JacobiPair {
  MassShell shell;
  MultivectorField lambda;
  VectorField gamma;
};
JacobiPair build_jacobi_pair(const Rational& m);

/// [f,g] = Lambda(df,dg) + f Gamma(g) - g Gamma(f).
Expr jacobi_bracket(const Expr& f, const Expr& g, const JacobiPair& pair);
/// The bracket read off from
/// [f,g] vol = (f dg - g df) ^ (dtheta)^3 + coefficient df ^ dg ^ theta ^ (dtheta)^2.
Expr volume_bracket(const Expr& f, const Expr& g, const MassShell& shell, const Rational& coefficient);

/// X_f = Lambda(df, .) + f Gamma, and the operator X~_f = X_f - Gamma(f).
struct HamiltonianField {
  VectorField field;
  Expr scalar;
  Expr apply(const Expr& g) const { return field.apply(g) + scalar * g; }
};
HamiltonianField hamiltonian_field(const Expr& f, const JacobiPair& pair);

/// Contact volume, defining contractions, Reeb property, bracket table and
/// Hamiltonian fields of the generators.
Report jacobi_pair_report(const JacobiPair& pair, Rng& rng);
/// Schouten identities, Jacobi identity and Leibniz anomaly on random triples,
/// Poisson reduction on constants of the motion.
Report jacobi_identity_suite(const JacobiPair& pair, Rng& rng, int triples = 20);
/// {X_mn, Y_m, Gamma_m} against poincare_spec with a central element.
Report eleventh_generator_check(const JacobiPair& pair, Rng& rng);

Report jacobi_suite(const Rational& m, Rng& rng);

}  // namespace relcheck
