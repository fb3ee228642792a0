#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "relcheck/expr.hpp"

namespace relcheck {

struct ExtensionDecl {
  std::string name;
  Var symbol;
  Poly radicand;  ///< defining polynomial is symbol^2 - radicand, positive branch
};

/// Base/fiber pairing of a tangent-bundle chart: coords[base[i]] and coords[fiber[i]]
/// are a position and its velocity.
struct TangentSplit {
  std::vector<std::size_t> base;
  std::vector<std::size_t> fiber;
};

/// Ordered coordinates plus the symbols an expression over the chart may mention.
class Chart {
public:
  Chart(std::string name, const std::vector<std::string>& coordinates);

  const std::string& name() const noexcept { return name_; }
  std::size_t dim() const noexcept { return coords_.size(); }
  const std::vector<Var>& coords() const noexcept { return coords_; }
  Var coord(std::size_t i) const { return coords_.at(i); }
  Expr x(std::size_t i) const { return Expr::symbol(coords_.at(i)); }
  Expr x(const std::string& name) const { return Expr::symbol(coords_.at(index(name))); }
  std::optional<std::size_t> index_of(Var v) const;
  /// Throws DomainError for a name that is not a coordinate.
  std::size_t index(const std::string& name) const;

  Var add_parameter(const std::string& name);
  Var add_extension(const std::string& name, const Poly& radicand);
  void add_function(const std::string& head);
  void set_signature(std::vector<int> signature);
  void set_tangent_split(TangentSplit split);

  const std::vector<Var>& parameters() const noexcept { return parameters_; }
  const std::vector<ExtensionDecl>& extensions() const noexcept { return extensions_; }
  const std::set<std::string>& functions() const noexcept { return functions_; }
  const std::vector<int>& signature() const noexcept { return signature_; }
  const std::optional<TangentSplit>& tangent_split() const noexcept { return split_; }
  const ExtensionDecl& extension(const std::string& name) const;
  Expr ext(const std::string& name) const { return Expr::symbol(extension(name).symbol); }

  /// Resolves an identifier to a coordinate, parameter or extension symbol.
  std::optional<Var> lookup(const std::string& name) const;
  bool is_function(const std::string& head) const { return functions_.count(head) > 0; }

  /// Charts are compatible when their coordinate lists agree.
  bool same_coordinates(const Chart& other) const { return coords_ == other.coords_; }

private:
  std::string name_;
  std::vector<Var> coords_;
  std::vector<Var> parameters_;
  std::vector<ExtensionDecl> extensions_;
  std::set<std::string> functions_;
  std::vector<int> signature_;
  std::optional<TangentSplit> split_;
};

using ChartPtr = std::shared_ptr<const Chart>;

/// Throws ChartMismatch unless both charts share coordinates.
void require_same_chart(const ChartPtr& a, const ChartPtr& b);

/// Position/velocity chart on T R^3: x1..x3, xd1..xd3, parameter c, opaque f and h,
/// and the extension sqrt(1 - xd1^2 - xd2^2 - xd3^2).
ChartPtr tr3_chart();
/// Position/velocity chart on T R^4 with v^2 = xd0^2 - xd1^2 - xd2^2 - xd3^2.
ChartPtr tr4_chart();
/// Phase space T*R^4 with upper-index momenta p0..p3 and r^2 = p0^2 - p1^2 - p2^2 - p3^2.
ChartPtr offshell_chart();
/// Mass shell: x0..x3, p1..p3 and E^2 = m^2 + p1^2 + p2^2 + p3^2. Throws for m <= 0.
ChartPtr mass_shell_chart(const Rational& m);
/// One of "TR3", "TR4", "offshell", "massshell" (m = 1).
ChartPtr builtin_chart(const std::string& name);
/// Reads a chart description:
///   name: demo
///   coordinates: x1 x2 xd1 xd2
///   tangent: x1 x2 | xd1 xd2
///   parameters: c
///   functions: f h
///   extension: v = xd1^2 + xd2^2 positive
///   signature: + -
ChartPtr load_chart(const std::string& text);

}  // namespace relcheck
