#pragma once

#include "relcheck/geometry.hpp"
#include "relcheck/report.hpp"
#include "relcheck/sampling.hpp"

namespace relcheck {

/// Four coordinates x y z w, extension s = sqrt(1 + x^2 + y^2), opaque function f.
ChartPtr property_chart();

/// Random expression over the chart: polynomials, quotients, the chart's first
/// extension symbol and opaque function applications.
Expr random_expression(const Chart& chart, Rng& rng);
/// Random field with polynomial components in the coordinates.
VectorField random_vector_field(const ChartPtr& chart, Rng& rng);
DifferentialForm random_one_form(const ChartPtr& chart, Rng& rng);

/// Sum over i, j of (-1)^(i+j) [Xi, Yj] ^ (remaining Xs) ^ (remaining Ys).
MultivectorField decomposable_schouten(const std::vector<VectorField>& xs, const std::vector<VectorField>& ys);

/// d^2 = 0, Cartan formula against the coordinate Lie derivative, Jacobi identity
/// of the Lie bracket and the Schouten bracket against decomposable_schouten, each
/// on `inputs` random inputs; normalize idempotence and the product rule on
/// `expressions` random expressions.
Report engine_properties(Rng& rng, int inputs = 25, int expressions = 100);

/// Parse-print round trip on random canonical expressions.
Report round_trip_properties(Rng& rng, int expressions = 100);

}  // namespace relcheck
