#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace relcheck {

using Integer = mpz_class;
using Rational = mpq_class;

inline std::string to_string(const Rational& q) { return q.get_str(); }

/// Parses "p" or "p/q" (optional leading '-'); throws std::invalid_argument on bad text.
Rational parse_rational(const std::string& text);

/// Exact k-th root of a non-negative rational if it exists.
std::optional<Rational> exact_root(const Rational& value, unsigned k);

}  // namespace relcheck
