#pragma once

#include "relcheck/geometry.hpp"
#include "relcheck/report.hpp"
#include "relcheck/sampling.hpp"

namespace relcheck {

/// theta = p_mu dx^mu / r on the offshell chart, r^2 = p.p.
DifferentialForm normalized_theta();

/// Kernel of dtheta, homogeneity, rank, and descent of the Poincare fields.
/// `points` is the number of seeded rank samples.
Report frozen_suite(Rng& rng, int points = 10);

}  // namespace relcheck
