#pragma once

#include <memory>
#include <string>
#include <vector>

#include "relcheck/poly.hpp"
#include "relcheck/rational.hpp"

namespace relcheck {

class Expr;

enum class SymbolKind {
  Plain,      ///< independent indeterminate (coordinate or parameter)
  Extension,  ///< s with s^2 = radicand, positive branch
  Function,   ///< k-th formal derivative of an opaque unary function at an argument
  Power,      ///< base^exponent with non-half-integer rational exponent in (0, 1)
};

struct SymbolInfo {
  SymbolKind kind = SymbolKind::Plain;
  std::string name;  ///< plain name, extension alias, or function head
  Poly radicand;     ///< Extension
  unsigned order = 0;                  ///< Function: derivative order
  std::shared_ptr<const Expr> argument;  ///< Function argument / Power base
  Rational exponent;                   ///< Power
  std::vector<Var> depends_on;         ///< plain symbols this atom depends on, sorted
};

/// Var layout: the kind sits in the top bits, so plain symbols always precede
/// extensions, which precede function atoms and power atoms in the monomial order.
constexpr unsigned kKindShift = 28;
constexpr Var kIndexMask = (Var{1} << kKindShift) - 1;
inline SymbolKind kind_of(Var v) noexcept { return static_cast<SymbolKind>(v >> kKindShift); }
inline bool is_extension(Var v) noexcept { return kind_of(v) == SymbolKind::Extension; }

/// Process-wide, append-only interning table for symbols and atoms. Lookups are
/// thread-safe; returned references stay valid for the lifetime of the process.
/// Ids are handed out in creation order, which fixes the monomial order.
class SymbolTable {
public:
  static SymbolTable& instance();

  Var plain(const std::string& name);
  /// Extension with the given radicand; reuses an existing symbol with the same
  /// radicand. The name is recorded only when the symbol is created.
  Var extension(const Poly& radicand, const std::string& name = {});
  Var function(const std::string& head, unsigned order, const Expr& argument);
  Var power(const Expr& base, const Rational& exponent);

  const SymbolInfo& info(Var v) const;
  std::string display_name(Var v) const;
  bool depends_on(Var atom, Var symbol) const;

  SymbolTable(const SymbolTable&) = delete;
  SymbolTable& operator=(const SymbolTable&) = delete;

private:
  SymbolTable();
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

inline SymbolTable& symbols() { return SymbolTable::instance(); }

}  // namespace relcheck
