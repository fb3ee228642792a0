#pragma once

#include <string>

#include "relcheck/chart.hpp"
#include "relcheck/expr.hpp"

namespace relcheck {

/// Parses an expression over the chart. Besides the basic grammar this accepts
/// rational exponents "^(p/q)" and derivative atoms written f'(u), f''(u).
/// Throws ParseError (with position) on syntax errors, unknown identifiers and
/// divisions by an expression that normalizes to zero.
Expr parse(const std::string& text, const Chart& chart);

/// Canonical form of an expression; expressions are stored canonically, so this
/// only checks that every symbol belongs to the chart.
Expr normalize(const Expr& e, const Chart& chart);

}  // namespace relcheck
