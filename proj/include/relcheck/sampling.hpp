#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "relcheck/chart.hpp"
#include "relcheck/expr.hpp"
#include "relcheck/report.hpp"

namespace relcheck {

/// Seeded generator with a fixed integer mapping, so streams are identical across
/// standard library implementations.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t next() { return engine_(); }
  /// Uniform-ish integer in [lo, hi].
  long uniform(long lo, long hi) {
    auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<long>(next() % span);
  }
  /// Small rational with numerator in [-limit, limit] and denominator in [1, 3].
  Rational small_rational(long limit = 4);
  Rational nonzero_rational(long limit = 4);

private:
  std::mt19937_64 engine_;
};

/// Random rational point on the chart: coordinates and parameters get small
/// rationals, and coordinates inside extension radicands are adjusted so every
/// extension takes a positive rational value. Entries of `fixed` are kept.
std::optional<Point> sample_point(const Chart& chart, Rng& rng, const std::map<Var, Rational>& fixed = {},
                                  int attempts = 50);

/// Names and values of the point, including supplied extension values.
Witness witness_of(const Point& point);

struct Evaluation {
  Point point;
  Rational value;
};

/// Point where e is defined and nonzero, if one is found.
std::optional<Evaluation> find_nonzero_point(const Expr& e, const Chart& chart, Rng& rng, int attempts = 60);

/// Report::expect_zero, adding a witness point and value when the residual is nonzero.
Check& expect_zero_at(Report& report, const std::string& id, const std::string& ref, const Expr& residual,
                      const Chart& chart, Rng& rng, const std::string& description = {});

/// Random polynomial with up to `terms` terms of total degree <= max_degree.
Expr random_polynomial(const std::vector<Var>& vars, Rng& rng, unsigned max_degree, unsigned terms);

}  // namespace relcheck
