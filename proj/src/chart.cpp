#include "relcheck/chart.hpp"

#include <algorithm>
#include <sstream>

#include "relcheck/errors.hpp"
#include "relcheck/parse.hpp"

namespace relcheck {

Chart::Chart(std::string name, const std::vector<std::string>& coordinates) : name_(std::move(name)) {
  for (const auto& c : coordinates) {
    Var v = symbols().plain(c);
    if (std::find(coords_.begin(), coords_.end(), v) != coords_.end())
      throw DomainError("duplicate coordinate " + c);
    coords_.push_back(v);
  }
}

std::optional<std::size_t> Chart::index_of(Var v) const {
  auto it = std::find(coords_.begin(), coords_.end(), v);
  if (it == coords_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - coords_.begin());
}

std::size_t Chart::index(const std::string& name) const {
  auto i = index_of(symbols().plain(name));
  if (!i) throw DomainError("no coordinate " + name + " in chart " + name_);
  return *i;
}

Var Chart::add_parameter(const std::string& name) {
  Var v = symbols().plain(name);
  if (index_of(v)) throw DomainError("parameter " + name + " is already a coordinate");
  if (std::find(parameters_.begin(), parameters_.end(), v) == parameters_.end()) parameters_.push_back(v);
  return v;
}

Var Chart::add_extension(const std::string& name, const Poly& radicand) {
  if (radicand.is_zero()) throw DomainError("extension " + name + " has zero radicand");
  Var s = symbols().extension(radicand, name);
  extensions_.push_back({name, s, radicand});
  return s;
}

void Chart::add_function(const std::string& head) { functions_.insert(head); }

void Chart::set_signature(std::vector<int> signature) {
  for (int s : signature)
    if (s != 1 && s != -1) throw DomainError("signature entries must be +1 or -1");
  signature_ = std::move(signature);
}

void Chart::set_tangent_split(TangentSplit split) {
  if (split.base.size() != split.fiber.size()) throw DomainError("tangent split needs equal base and fiber counts");
  for (auto i : split.base)
    if (i >= dim()) throw DomainError("tangent split index out of range");
  for (auto i : split.fiber)
    if (i >= dim()) throw DomainError("tangent split index out of range");
  split_ = std::move(split);
}

const ExtensionDecl& Chart::extension(const std::string& name) const {
  for (const auto& e : extensions_)
    if (e.name == name) return e;
  throw DomainError("no extension " + name + " in chart " + name_);
}

std::optional<Var> Chart::lookup(const std::string& name) const {
  for (const auto& e : extensions_)
    if (e.name == name) return e.symbol;
  Var v = symbols().plain(name);
  if (index_of(v)) return v;
  if (std::find(parameters_.begin(), parameters_.end(), v) != parameters_.end()) return v;
  return std::nullopt;
}

void require_same_chart(const ChartPtr& a, const ChartPtr& b) {
  if (!a || !b || (a != b && !a->same_coordinates(*b))) throw ChartMismatch();
}

namespace {

Poly sq(Var v) { return Poly::variable(v) * Poly::variable(v); }

}  // namespace

ChartPtr tr3_chart() {
  static const ChartPtr chart = [] {
    auto c = std::make_shared<Chart>("TR3", std::vector<std::string>{"x1", "x2", "x3", "xd1", "xd2", "xd3"});
    c->set_tangent_split({{0, 1, 2}, {3, 4, 5}});
    c->add_parameter("c");
    c->add_function("f");
    c->add_function("h");
    c->add_function("L");
    c->set_signature({1, 1, 1});
    Poly q(1);
    for (std::size_t i = 3; i < 6; ++i) q -= sq(c->coord(i));
    c->add_extension("", q);
    return c;
  }();
  return chart;
}

ChartPtr tr4_chart() {
  static const ChartPtr chart = [] {
    auto c = std::make_shared<Chart>(
        "TR4", std::vector<std::string>{"x0", "x1", "x2", "x3", "xd0", "xd1", "xd2", "xd3"});
    c->set_tangent_split({{0, 1, 2, 3}, {4, 5, 6, 7}});
    c->set_signature({1, -1, -1, -1});
    Poly q = sq(c->coord(4)) - sq(c->coord(5)) - sq(c->coord(6)) - sq(c->coord(7));
    c->add_extension("v", q);
    return c;
  }();
  return chart;
}

ChartPtr offshell_chart() {
  static const ChartPtr chart = [] {
    auto c = std::make_shared<Chart>("offshell",
                                     std::vector<std::string>{"x0", "x1", "x2", "x3", "p0", "p1", "p2", "p3"});
    c->set_signature({1, -1, -1, -1});
    Poly q = sq(c->coord(4)) - sq(c->coord(5)) - sq(c->coord(6)) - sq(c->coord(7));
    c->add_extension("r", q);
    return c;
  }();
  return chart;
}

ChartPtr mass_shell_chart(const Rational& m) {
  if (m <= 0) throw DomainError("mass must be positive");
  auto c = std::make_shared<Chart>("massshell", std::vector<std::string>{"x0", "x1", "x2", "x3", "p1", "p2", "p3"});
  c->set_signature({1, -1, -1, -1});
  Poly q = Poly(m * m) + sq(c->coord(4)) + sq(c->coord(5)) + sq(c->coord(6));
  c->add_extension("E", q);
  return c;
}

ChartPtr builtin_chart(const std::string& name) {
  if (name == "TR3") return tr3_chart();
  if (name == "TR4") return tr4_chart();
  if (name == "offshell") return offshell_chart();
  if (name == "massshell") return mass_shell_chart(1);
  throw DomainError("unknown chart " + name);
}

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

}  // namespace

ChartPtr load_chart(const std::string& text) {
  std::string name = "custom";
  std::vector<std::string> coords;
  std::vector<std::pair<std::string, std::string>> rest;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) throw DomainError("chart file: expected 'key: value' in '" + line + "'");
    std::string key = trim(line.substr(0, colon));
    std::string value = trim(line.substr(colon + 1));
    if (key == "name")
      name = value;
    else if (key == "coordinates")
      coords = words(value);
    else
      rest.emplace_back(key, value);
  }
  if (coords.empty()) throw DomainError("chart file: no coordinates");
  auto chart = std::make_shared<Chart>(name, coords);
  // Extensions are parsed last so their radicands may use parameters.
  std::vector<std::string> extension_lines;
  for (const auto& [key, value] : rest) {
    if (key == "parameters") {
      for (const auto& w : words(value)) chart->add_parameter(w);
    } else if (key == "functions") {
      for (const auto& w : words(value)) chart->add_function(w);
    } else if (key == "signature") {
      std::vector<int> sig;
      for (const auto& w : words(value)) {
        if (w == "+" || w == "+1")
          sig.push_back(1);
        else if (w == "-" || w == "-1")
          sig.push_back(-1);
        else
          throw DomainError("chart file: bad signature entry " + w);
      }
      chart->set_signature(std::move(sig));
    } else if (key == "tangent") {
      auto bar = value.find('|');
      if (bar == std::string::npos) throw DomainError("chart file: tangent needs 'base | fiber'");
      TangentSplit split;
      for (const auto& w : words(value.substr(0, bar))) split.base.push_back(chart->index(w));
      for (const auto& w : words(value.substr(bar + 1))) split.fiber.push_back(chart->index(w));
      chart->set_tangent_split(std::move(split));
    } else if (key == "extension") {
      extension_lines.push_back(value);
    } else {
      throw DomainError("chart file: unknown key " + key);
    }
  }
  for (const auto& value : extension_lines) {
    auto eq = value.find('=');
    if (eq == std::string::npos) throw DomainError("chart file: extension needs 'name = radicand positive'");
    std::string sym = trim(value.substr(0, eq));
    std::string body = trim(value.substr(eq + 1));
    const std::string tag = "positive";
    if (body.size() >= tag.size() && body.compare(body.size() - tag.size(), tag.size(), tag) == 0)
      body = trim(body.substr(0, body.size() - tag.size()));
    else
      throw DomainError("chart file: only the positive branch is supported");
    Expr q = parse(body, *chart);
    if (!q.is_polynomial()) throw DomainError("chart file: radicand of " + sym + " must be polynomial");
    chart->add_extension(sym, q.numerator());
  }
  return chart;
}

}  // namespace relcheck
