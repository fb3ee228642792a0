#pragma once

#include <vector>

#include "relcheck/geometry.hpp"
#include "relcheck/report.hpp"
#include "relcheck/sampling.hpp"

namespace relcheck {

/// L = v = sqrt(g xd xd) on TR4 with m = 1.
struct LagrangianGeometry {
  ChartPtr chart;
  Expr lagrangian;
  DifferentialForm theta;  ///< g_mn xd^m dx^n / L
  DifferentialForm omega;  ///< d theta
  VectorField dilation;    ///< xd^m d/dxd^m
  VectorField gamma;       ///< xd^m d/dx^m
};
LagrangianGeometry build_lagrangian_geometry();

/// (1/v^3)(g_mn v^2 - xd_m xd_n) dxd^n ^ dx^m as displayed.
DifferentialForm displayed_omega(const LagrangianGeometry& geo);

struct Connection {
  Tensor11 A;
  DifferentialForm alpha;  ///< xd_m dxd^m / L^2
  DifferentialForm beta;   ///< (1/L) d(xd_m x^m / L)
};
/// A = 1 - alpha (x) Delta - beta (x) Gamma.
Connection build_connection(const LagrangianGeometry& geo);

/// L g^mn A(d/dxd^m) ^ A(d/dx^n).
MultivectorField connection_bivector(const LagrangianGeometry& geo, const Connection& conn);
/// L (g^rs - xd^r xd^s / L^2) d/dxd^r ^ d/dx^s as displayed.
MultivectorField displayed_bivector(const LagrangianGeometry& geo);
/// Tangent lift of x_m d/dx^n - x_n d/dx^m.
VectorField lifted_lorentz(std::size_t mu, std::size_t nu);
/// d/dx^m - (x_m / L) Gamma.
VectorField modified_translation(const LagrangianGeometry& geo, std::size_t mu);

Report lagrangian_geometry_report(const LagrangianGeometry& geo, Rng& rng);
Report connection_report(const LagrangianGeometry& geo, const Connection& conn, Rng& rng);
Report bivector_report(const LagrangianGeometry& geo, const MultivectorField& lambda, Rng& rng);
Report newton_wigner_suite(const LagrangianGeometry& geo, const MultivectorField& lambda, Rng& rng);
Report modified_translations_suite(const LagrangianGeometry& geo, Rng& rng);
Report dynamical_frame_suite(const LagrangianGeometry& geo, Rng& rng);

Report lagrangian_suite(Rng& rng);

}  // namespace relcheck
