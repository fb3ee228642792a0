#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "relcheck/report.hpp"
#include "relcheck/sampling.hpp"

namespace relcheck {

struct SuiteOptions {
  std::string f = "0";
  std::string lagrangian = "c*sqrt(1-xd1^2-xd2^2-xd3^2)";
  std::string mass = "1";
  std::string signature;  ///< lagrangian suite only; informational
  std::uint64_t seed = 1;
  bool timing = false;    ///< adds one elapsed-time line per module
};

const std::vector<std::string>& suite_names();

/// Structure-constant checks, the (J, K) basis and the elementary solution.
Report algebra_suite(Rng& rng);

/// Runs one of instant-form, jacobi, frozen, lagrangian, algebra, all.
/// Throws DomainError for an unknown suite or invalid options.
Report run_suite(const std::string& name, const SuiteOptions& options);

}  // namespace relcheck
