#include "relcheck/symbols.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <mutex>
#include <set>
#include <shared_mutex>
#include <tuple>

#include "relcheck/errors.hpp"
#include "relcheck/expr.hpp"

namespace relcheck {

struct SymbolTable::Impl {
  mutable std::shared_mutex mutex;
  std::deque<SymbolInfo> entries;
  std::map<std::string, Var> plain;
  std::map<Poly, Var> extensions;
  std::map<std::tuple<std::string, unsigned, Poly, Poly>, Var> functions;
  std::map<std::tuple<Poly, Poly, Rational>, Var> powers;

  Var add(SymbolInfo info) {
    Var index = static_cast<Var>(entries.size());
    if (index > kIndexMask) throw Error("symbol table exhausted");
    Var id = (static_cast<Var>(info.kind) << kKindShift) | index;
    entries.push_back(std::move(info));
    return id;
  }
};

SymbolTable::SymbolTable() : impl_(std::make_unique<Impl>()) {}

SymbolTable& SymbolTable::instance() {
  static SymbolTable table;
  return table;
}

namespace {
std::vector<Var> dependencies_of(const std::vector<Var>& atoms) {
  std::set<Var> deps;
  for (Var a : atoms) {
    if (kind_of(a) == SymbolKind::Plain) {
      deps.insert(a);
    } else {
      const auto& d = symbols().info(a).depends_on;
      deps.insert(d.begin(), d.end());
    }
  }
  return {deps.begin(), deps.end()};
}
}  // namespace

Var SymbolTable::plain(const std::string& name) {
  {
    std::shared_lock lock(impl_->mutex);
    auto it = impl_->plain.find(name);
    if (it != impl_->plain.end()) return it->second;
  }
  std::unique_lock lock(impl_->mutex);
  auto it = impl_->plain.find(name);
  if (it != impl_->plain.end()) return it->second;
  SymbolInfo info;
  info.kind = SymbolKind::Plain;
  info.name = name;
  Var id = impl_->add(std::move(info));
  impl_->entries.back().depends_on = {id};
  impl_->plain.emplace(name, id);
  return id;
}

Var SymbolTable::extension(const Poly& radicand, const std::string& name) {
  {
    std::shared_lock lock(impl_->mutex);
    auto it = impl_->extensions.find(radicand);
    if (it != impl_->extensions.end()) return it->second;
  }
  if (radicand.is_zero()) throw DomainError("extension with zero radicand");
  auto deps = dependencies_of(radicand.variables());
  std::unique_lock lock(impl_->mutex);
  auto it = impl_->extensions.find(radicand);
  if (it != impl_->extensions.end()) return it->second;
  SymbolInfo info;
  info.kind = SymbolKind::Extension;
  info.name = name;
  info.radicand = radicand;
  info.depends_on = std::move(deps);
  Var id = impl_->add(std::move(info));
  impl_->extensions.emplace(radicand, id);
  return id;
}

Var SymbolTable::function(const std::string& head, unsigned order, const Expr& argument) {
  auto key = std::make_tuple(head, order, argument.numerator(), argument.denominator());
  {
    std::shared_lock lock(impl_->mutex);
    auto it = impl_->functions.find(key);
    if (it != impl_->functions.end()) return it->second;
  }
  auto deps = dependencies_of(argument.atoms());
  std::unique_lock lock(impl_->mutex);
  auto it = impl_->functions.find(key);
  if (it != impl_->functions.end()) return it->second;
  SymbolInfo info;
  info.kind = SymbolKind::Function;
  info.name = head;
  info.order = order;
  info.argument = std::make_shared<const Expr>(argument);
  info.depends_on = std::move(deps);
  Var id = impl_->add(std::move(info));
  impl_->functions.emplace(std::move(key), id);
  return id;
}

Var SymbolTable::power(const Expr& base, const Rational& exponent) {
  auto key = std::make_tuple(base.numerator(), base.denominator(), exponent);
  {
    std::shared_lock lock(impl_->mutex);
    auto it = impl_->powers.find(key);
    if (it != impl_->powers.end()) return it->second;
  }
  auto deps = dependencies_of(base.atoms());
  std::unique_lock lock(impl_->mutex);
  auto it = impl_->powers.find(key);
  if (it != impl_->powers.end()) return it->second;
  SymbolInfo info;
  info.kind = SymbolKind::Power;
  info.argument = std::make_shared<const Expr>(base);
  info.exponent = exponent;
  info.depends_on = std::move(deps);
  Var id = impl_->add(std::move(info));
  impl_->powers.emplace(std::move(key), id);
  return id;
}

const SymbolInfo& SymbolTable::info(Var v) const {
  std::shared_lock lock(impl_->mutex);
  Var index = v & kIndexMask;
  if (index >= impl_->entries.size()) throw Error("unknown symbol id");
  return impl_->entries[index];
}

std::string SymbolTable::display_name(Var v) const {
  const SymbolInfo& s = info(v);
  switch (s.kind) {
    case SymbolKind::Plain:
      return s.name;
    case SymbolKind::Extension:
      return s.name.empty() ? "sqrt(" + to_string(s.radicand) + ")" : s.name;
    case SymbolKind::Function:
      return s.name + std::string(s.order, '\'') + "(" + s.argument->str() + ")";
    case SymbolKind::Power:
      return "(" + s.argument->str() + ")^(" + s.exponent.get_str() + ")";
  }
  return "?";
}

bool SymbolTable::depends_on(Var atom, Var symbol) const {
  if (atom == symbol) return true;
  if (kind_of(atom) == SymbolKind::Plain) return false;
  const auto& d = info(atom).depends_on;
  return std::binary_search(d.begin(), d.end(), symbol);
}

}  // namespace relcheck
