#pragma once

#include <array>
#include <string>
#include <vector>

#include "relcheck/algebra.hpp"
#include "relcheck/geometry.hpp"
#include "relcheck/report.hpp"
#include "relcheck/sampling.hpp"

namespace relcheck {

/// Newtonian realization of the Poincare algebra on TR3 with basis
/// P0 = Gamma, Pj = -d/dxj, Jl = eps_ljk (xj d/dxk + xdj d/dxdk),
/// Kj = xj Gamma + xdj Delta + (Pj)^V.
struct InstantRealization {
  ChartPtr chart;
  std::vector<Expr> accelerations;
  VectorField gamma;
  VectorField dilation;
  Realization realization;

  const VectorField& field(const std::string& name) const { return realization.fields.at(realization.spec.index(name)); }
};

/// Throws DomainError unless there are three accelerations on TR3.
InstantRealization build_instant_realization(const std::vector<Expr>& accelerations);
/// a_j = xd_j f, with f an expression on TR3 such as "f(xd1^2+xd2^2+xd3^2)".
InstantRealization build_instant_realization(const Expr& f);

/// xd1^2 + xd2^2 + xd3^2.
Expr speed_squared();
/// The opaque function f applied to speed_squared().
Expr opaque_f();

/// L_Kj x_l = x_j xd_l and L_Kj xd_l = xd_j xd_l + x_j a_l - delta_jl.
Report wlc_residuals(const InstantRealization& r);
/// K_j against x_j Gamma + xd_j Delta + vertical lift of P_j, and S(Gamma) = Delta.
Report boost_decomposition(const InstantRealization& r);

struct BoostPde {
  std::array<Expr, 3> derived;    ///< components of [K1,K2] - J3 along d/dxd3, d/dxd1, d/dxd2
  std::array<Expr, 3> displayed;  ///< the three expressions as written in the source
  int sign = 0;                   ///< derived = sign * displayed, 0 if neither sign works
  VectorField residual;           ///< the full [K1,K2] - J3
};
/// Uses a_j = xd_j f(xd^2) with f opaque.
BoostPde derive_boost_pde();
Report boost_pde_report(const BoostPde& pde);

Report no_interaction_certificate(Rng& rng);

/// Chain of Lagrangian compatibility checks for free dynamics. L must not depend
/// on positions (DomainError otherwise).
Report lagrangian_chain(const Expr& lagrangian, Rng& rng);
/// True iff every non-info check of lagrangian_chain passes.
bool chain_passes(const Expr& lagrangian, Rng& rng);
/// c (1 - xd^2)^alpha.
Expr power_lagrangian(const Rational& alpha);

Report degenerate_family_demo(Rng& rng);
/// Closure with translations and rotations against non-admissible accelerations.
Report acceleration_constraints(Rng& rng);
/// Within c (1 - xd^2)^alpha only alpha = 1/2 passes; the failing examples carry witnesses.
Report lagrangian_uniqueness(Rng& rng);

struct InstantOptions {
  std::string f = "0";
  std::string lagrangian = "c*sqrt(1-xd1^2-xd2^2-xd3^2)";
};
Report instant_form_suite(const InstantOptions& options, Rng& rng);

}  // namespace relcheck
