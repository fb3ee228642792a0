#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "relcheck/expr.hpp"

namespace relcheck {

enum class Status { Pass, Fail, Info };

const char* to_string(Status s);
Status status_from_string(const std::string& s);

/// Symbol name -> "p/q".
using Witness = std::map<std::string, std::string>;

struct Check {
  std::string id;
  std::string description;
  std::string paper_ref;
  Status status = Status::Pass;
  std::string residual = "0";
  std::optional<Witness> witness;
  long long ms = 0;
};

class Report {
public:
  Report() = default;
  explicit Report(std::string suite_name, std::uint64_t seed_value = 0)
      : suite(std::move(suite_name)), seed(seed_value) {}

  /// Fail iff some non-info check failed.
  Status status() const;
  bool passed() const { return status() == Status::Pass; }
  std::size_t count(Status s) const;
  const Check* find(const std::string& id) const;

  Check& add(Check c);
  /// Pass iff the residual is the zero canonical form.
  Check& expect_zero(const std::string& id, const std::string& ref, const Expr& residual,
                     const std::string& description = {});
  Check& expect(const std::string& id, const std::string& ref, bool ok, const std::string& residual,
                const std::string& description = {});
  Check& info(const std::string& id, const std::string& ref, const std::string& residual,
              const std::string& description = {});
  /// Appends the checks of another report, prefixing their ids.
  void append(const Report& other, const std::string& prefix = {});

  std::string suite;
  std::uint64_t seed = 0;
  std::vector<Check> checks;
};

/// Aligned human-readable table.
std::string render_text(const Report& r);
/// Stable-key JSON; elapsed times are written as 0 unless include_timing is set,
/// so that runs with the same seed are byte-identical.
std::string render_json(const Report& r, bool include_timing = false);
/// Inverse of render_json.
Report parse_report_json(const std::string& text);

/// Measures elapsed milliseconds for the check added last in a scope.
class CheckTimer {
public:
  CheckTimer() : start_(std::chrono::steady_clock::now()) {}
  long long elapsed_ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_).count();
  }

private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace relcheck
