#include "relcheck/expr.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <unordered_map>

#include "relcheck/errors.hpp"

namespace relcheck {

namespace {

Poly pow_poly(const Poly& p, unsigned e) { return e == 1 ? p : p.pow(e); }

Poly product(const std::vector<Expr::Factor>& factors) {
  Poly d(1);
  for (const auto& f : factors) d = d * pow_poly(f.poly, f.exponent);
  return d;
}

Poly divide_monomial(const Poly& p, const Monomial& m) {
  if (m.is_one()) return p;
  std::vector<Term> terms;
  terms.reserve(p.size());
  for (const auto& t : p.terms()) terms.push_back({*t.monomial.divide(m), t.coeff});
  return Poly::from_terms(std::move(terms));
}

/// Splits an extension-free nonzero denominator into monic factors, moving its
/// constant into the numerator.
std::vector<Expr::Factor> split_denominator(const Poly& den, Poly& num) {
  std::vector<Expr::Factor> out;
  Monomial mc = den.monomial_content();
  for (const auto& [v, e] : mc.factors()) out.push_back({Poly::variable(v), e});
  Poly rest = divide_monomial(den, mc);
  Rational lc = rest.leading_coeff();
  if (lc != 1) num = num.scaled(1 / lc);
  if (!rest.is_constant()) out.push_back({rest.scaled(1 / lc), 1});
  return out;
}

/// Removes common factors between num and the denominator factors. On return every
/// factor is coprime to num and equal factors are merged.
void cancel(Poly& num, std::vector<Expr::Factor>& factors) {
  std::vector<Expr::Factor> work = std::move(factors);
  factors.clear();
  while (!work.empty()) {
    Expr::Factor f = std::move(work.back());
    work.pop_back();
    if (f.poly.is_constant() || f.exponent == 0) continue;
    while (f.exponent > 0) {
      auto q = divide_exact(num, f.poly);
      if (!q) break;
      num = std::move(*q);
      --f.exponent;
    }
    if (f.exponent == 0) continue;
    if (f.poly.total_degree() == 1) {
      factors.push_back(std::move(f));
      continue;
    }
    Poly g = gcd(num, f.poly);
    if (g.is_constant()) {
      factors.push_back(std::move(f));
      continue;
    }
    g = g.monic();
    Poly rest = divide_exact(f.poly, g)->monic();
    work.push_back({std::move(g), f.exponent});
    work.push_back({std::move(rest), f.exponent});
  }
  std::sort(factors.begin(), factors.end(),
            [](const Expr::Factor& a, const Expr::Factor& b) { return a.poly < b.poly; });
  std::vector<Expr::Factor> merged;
  for (auto& f : factors) {
    if (!merged.empty() && merged.back().poly == f.poly)
      merged.back().exponent += f.exponent;
    else
      merged.push_back(std::move(f));
  }
  factors = std::move(merged);
}

bool has_extension(const Poly& p) {
  for (const auto& t : p.terms())
    for (const auto& [v, e] : t.monomial.factors())
      if (is_extension(v)) return true;
  return false;
}

std::vector<Var> extension_vars(const Poly& p) {
  std::vector<Var> out;
  for (Var v : p.variables())
    if (is_extension(v)) out.push_back(v);
  return out;
}

}  // namespace

Expr::Expr(const Rational& c) : num_(c) {}

Expr Expr::symbol(Var v) { return from_poly(Poly::variable(v)); }

Expr Expr::from_poly(const Poly& p) {
  Expr e;
  e.num_ = reduce_extensions(p);
  return e;
}

Expr Expr::fraction(const Poly& num, const Poly& den) {
  if (den.is_zero()) throw DivisionByZero();
  if (has_extension(den)) return from_poly(num) / from_poly(den);
  Poly n = num;
  auto factors = split_denominator(den, n);
  return canonical(std::move(n), std::move(factors));
}

Expr Expr::canonical(Poly num, std::vector<Factor> factors) {
  Expr e;
  num = reduce_extensions(num);
  if (num.is_zero()) return e;
  cancel(num, factors);
  e.num_ = std::move(num);
  e.den_ = product(factors);
  e.factors_ = std::move(factors);
  return e;
}

std::optional<Rational> Expr::constant_value() const {
  if (!is_constant()) return std::nullopt;
  return num_.constant_value() / den_.constant_value();
}

std::vector<Var> Expr::atoms() const {
  std::set<Var> all;
  for (Var v : num_.variables()) all.insert(v);
  for (Var v : den_.variables()) all.insert(v);
  return {all.begin(), all.end()};
}

Expr Expr::operator-() const {
  Expr e = *this;
  e.num_ = -num_;
  return e;
}

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_ == b.den_) {
    if (a.is_polynomial()) return Expr::from_poly(a.num_ + b.num_);
    return Expr::canonical(a.num_ + b.num_, a.factors_);
  }
  std::map<Poly, unsigned> lcm;
  for (const auto& f : a.factors_) lcm[f.poly] = std::max(lcm[f.poly], f.exponent);
  for (const auto& f : b.factors_) lcm[f.poly] = std::max(lcm[f.poly], f.exponent);
  auto cofactor = [&lcm](const std::vector<Expr::Factor>& own) {
    std::map<Poly, unsigned> mine;
    for (const auto& f : own) mine[f.poly] = f.exponent;
    Poly m(1);
    for (const auto& [p, e] : lcm) {
      auto it = mine.find(p);
      unsigned have = it == mine.end() ? 0 : it->second;
      if (e > have) m = m * pow_poly(p, e - have);
    }
    return m;
  };
  Poly num = a.num_ * cofactor(a.factors_) + b.num_ * cofactor(b.factors_);
  std::vector<Expr::Factor> factors;
  for (const auto& [p, e] : lcm) factors.push_back({p, e});
  return Expr::canonical(std::move(num), std::move(factors));
}

Expr operator-(const Expr& a, const Expr& b) { return a + (-b); }

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_zero() || b.is_zero()) return Expr();
  if (a.is_constant() && a.den_.is_constant()) {
    Expr e = b;
    e.num_ = b.num_.scaled(*a.constant_value());
    return e;
  }
  if (b.is_constant()) return b * a;
  Poly na = a.num_;
  Poly nb = b.num_;
  auto fa = a.factors_;
  auto fb = b.factors_;
  // Cross cancellation keeps the product small; the full pass below is only
  // needed when extension reduction can create new common factors.
  cancel(na, fb);
  cancel(nb, fa);
  Poly num = na * nb;
  fa.insert(fa.end(), fb.begin(), fb.end());
  if (has_extension(na) && has_extension(nb)) return Expr::canonical(std::move(num), std::move(fa));
  Expr e;
  std::sort(fa.begin(), fa.end(), [](const Expr::Factor& x, const Expr::Factor& y) { return x.poly < y.poly; });
  std::vector<Expr::Factor> merged;
  for (auto& f : fa) {
    if (!merged.empty() && merged.back().poly == f.poly)
      merged.back().exponent += f.exponent;
    else
      merged.push_back(std::move(f));
  }
  e.num_ = std::move(num);
  e.den_ = product(merged);
  e.factors_ = std::move(merged);
  return e;
}

Expr operator/(const Expr& a, const Expr& b) {
  if (b.is_zero()) throw DivisionByZero();
  if (a.is_zero()) return Expr();
  if (auto c = b.constant_value()) return a * Expr(1 / *c);
  // a / b = a.num * b.den / (a.den * b.num); rationalize b.num with conjugates.
  Poly num = a.num_ * b.den_;
  Poly divisor = b.num_;
  auto exts = extension_vars(divisor);
  std::sort(exts.rbegin(), exts.rend());
  for (Var s : exts) {
    auto coeffs = divisor.coefficients_in(s);
    if (coeffs.size() < 2) continue;
    Poly conj = coeffs[0] - coeffs[1] * Poly::variable(s);
    num = reduce_extensions(num * conj);
    divisor = reduce_extensions(divisor * conj);
    if (divisor.is_zero()) throw DivisionByZero("division by a zero divisor of the extension ring");
  }
  auto factors = a.factors_;
  auto extra = split_denominator(divisor, num);
  factors.insert(factors.end(), extra.begin(), extra.end());
  return Expr::canonical(std::move(num), std::move(factors));
}

Expr Expr::pow(int k) const {
  if (k < 0) return Expr(1) / pow(-k);
  Expr result(1);
  Expr base = *this;
  unsigned e = static_cast<unsigned>(k);
  while (e) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e) base *= base;
  }
  return result;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

std::string monomial_text(const Monomial& m) {
  std::string out;
  for (const auto& [v, e] : m.factors()) {
    if (!out.empty()) out += "*";
    std::string name = symbols().display_name(v);
    if (kind_of(v) == SymbolKind::Power && e > 1) name = "(" + name + ")";
    out += name;
    if (e > 1) out += "^" + std::to_string(e);
  }
  return out;
}

}  // namespace

std::string to_string(const Poly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : p.terms()) {
    Rational c = t.coeff;
    bool negative = c < 0;
    if (negative) c = -c;
    if (first)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    first = false;
    if (t.monomial.is_one()) {
      out += c.get_str();
    } else {
      if (c != 1) out += c.get_str() + "*";
      out += monomial_text(t.monomial);
    }
  }
  return out;
}

std::string Expr::str() const {
  if (factors_.empty()) return to_string(num_);
  std::string n = to_string(num_);
  if (num_.size() > 1) n = "(" + n + ")";
  std::string d = to_string(den_);
  bool bare = den_.size() == 1 && den_.leading().monomial.factors().size() == 1 &&
              kind_of(den_.leading().monomial.factors()[0].first) != SymbolKind::Power;
  if (!bare) d = "(" + d + ")";
  return n + "/" + d;
}

std::string to_string(const Expr& e) { return e.str(); }

// ---------------------------------------------------------------------------
// Extensions, roots and atoms

Poly reduce_extensions(const Poly& p) {
  bool needed = false;
  for (const auto& t : p.terms()) {
    for (const auto& [v, e] : t.monomial.factors())
      if (e >= 2 && is_extension(v)) needed = true;
    if (needed) break;
  }
  if (!needed) return p;
  Poly out;
  for (const auto& t : p.terms()) {
    Monomial m = t.monomial;
    Poly factor(1);
    for (const auto& [v, e] : t.monomial.factors()) {
      if (e < 2 || !is_extension(v)) continue;
      m = m.with_exponent(v, e % 2);
      factor = factor * symbols().info(v).radicand.pow(e / 2);
    }
    out += factor.times(m, t.coeff);
  }
  return out;
}

Expr sqrt(const Expr& radicand) {
  if (radicand.is_zero()) return Expr();
  if (auto c = radicand.constant_value()) {
    if (*c < 0) throw DomainError("square root of a negative constant");
    if (auto r = exact_root(*c, 2)) return Expr(*r);
  }
  // sqrt(N/D) = sqrt(N*D)/D
  const Poly& den = radicand.denominator();
  Poly q = radicand.numerator() * den;
  if (has_extension(q)) throw DomainError("nested square roots are not supported");
  Rational content = q.content();
  Expr scale(1);
  if (content > 0) {
    if (auto r = exact_root(content, 2)) {
      q = q.scaled(1 / content);
      scale = Expr(*r);
    }
  }
  Var s = symbols().extension(q);
  return scale * Expr::symbol(s) / Expr::from_poly(den);
}

Expr rational_power(const Expr& base, const Rational& exponent) {
  Integer whole;
  mpz_fdiv_q(whole.get_mpz_t(), exponent.get_num_mpz_t(), exponent.get_den_mpz_t());
  Rational frac = exponent - Rational(whole);
  if (!whole.fits_sint_p()) throw DomainError("exponent out of range");
  Expr integral = base.pow(static_cast<int>(whole.get_si()));
  if (frac == 0) return integral;
  if (base.is_zero()) return Expr();
  if (frac == Rational(1, 2)) return integral * sqrt(base);
  if (auto c = base.constant_value()) {
    if (*c > 0) {
      Rational powered;
      mpz_class num = frac.get_num();
      mpq_class b = *c;
      powered = 1;
      for (long i = 0; i < num.get_si(); ++i) powered *= b;
      if (auto r = exact_root(powered, static_cast<unsigned>(frac.get_den().get_ui()))) return integral * Expr(*r);
    }
  }
  return integral * Expr::symbol(symbols().power(base, frac));
}

Expr apply_function(const std::string& head, unsigned order, const Expr& argument) {
  return Expr::symbol(symbols().function(head, order, argument));
}

// ---------------------------------------------------------------------------
// Differentiation

namespace {

struct PairHash {
  std::size_t operator()(const std::pair<Var, Var>& p) const noexcept {
    return (static_cast<std::size_t>(p.first) << 32U) ^ p.second;
  }
};

Expr diff_atom(Var atom, Var symbol);

/// dN/dx for a polynomial in plain symbols and atoms.
Expr diff_poly(const Poly& p, Var symbol) {
  Expr result = Expr::from_poly(p.derivative(symbol));
  for (Var v : p.variables()) {
    if (kind_of(v) == SymbolKind::Plain || !symbols().depends_on(v, symbol)) continue;
    Expr inner = diff_atom(v, symbol);
    if (inner.is_zero()) continue;
    result += Expr::from_poly(p.derivative(v)) * inner;
  }
  return result;
}

Expr diff_atom(Var atom, Var symbol) {
  thread_local std::unordered_map<std::pair<Var, Var>, Expr, PairHash> cache;
  auto key = std::make_pair(atom, symbol);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  const SymbolInfo& info = symbols().info(atom);
  Expr d;
  switch (info.kind) {
    case SymbolKind::Plain:
      d = Expr(atom == symbol ? 1 : 0);
      break;
    case SymbolKind::Extension: {
      // s^2 = q  =>  ds/dx = (dq/dx) / (2 s) = (dq/dx) s / (2 q)
      Expr dq = diff_poly(info.radicand, symbol);
      if (!dq.is_zero()) d = dq * Expr::symbol(atom) / (Expr(2) * Expr::from_poly(info.radicand));
      break;
    }
    case SymbolKind::Function: {
      Expr du = diff(*info.argument, symbol);
      if (!du.is_zero()) d = apply_function(info.name, info.order + 1, *info.argument) * du;
      break;
    }
    case SymbolKind::Power: {
      Expr dw = diff(*info.argument, symbol);
      if (!dw.is_zero()) d = Expr(info.exponent) * Expr::symbol(atom) * dw / *info.argument;
      break;
    }
  }
  cache.emplace(key, d);
  return d;
}

}  // namespace

Expr diff(const Expr& e, Var symbol) {
  if (e.is_constant()) return Expr();
  Expr dn = diff_poly(e.numerator(), symbol);
  if (e.is_polynomial()) return dn;
  // (N/D)' = N'/D - N * sum_i e_i f_i' / (f_i D)
  Expr result = dn / Expr::from_poly(e.denominator());
  Expr correction;
  for (const auto& f : e.denominator_factors()) {
    Expr df = diff_poly(f.poly, symbol);
    if (df.is_zero()) continue;
    correction += Expr(static_cast<long>(f.exponent)) * df / Expr::from_poly(f.poly);
  }
  if (correction.is_zero()) return result;
  return result - e * correction;
}

// ---------------------------------------------------------------------------
// Substitution

namespace {

class Substituter {
public:
  explicit Substituter(const Bindings& b) : bindings_(b) {}

  bool affected(Var v) {
    if (auto it = affected_.find(v); it != affected_.end()) return it->second;
    bool result = false;
    if (bindings_.symbols.count(v)) {
      result = true;
    } else if (kind_of(v) != SymbolKind::Plain) {
      const SymbolInfo& info = symbols().info(v);
      if (info.kind == SymbolKind::Function && bindings_.functions.count(info.name)) result = true;
      for (Var d : info.depends_on)
        if (bindings_.symbols.count(d)) result = true;
    }
    affected_[v] = result;
    return result;
  }

  Expr value(Var v) {
    if (auto it = values_.find(v); it != values_.end()) return it->second;
    Expr result = compute(v);
    values_.emplace(v, result);
    return result;
  }

  Expr poly(const Poly& p) {
    bool any = false;
    for (Var v : p.variables()) any = any || affected(v);
    if (!any) return Expr::from_poly(p);
    // Group terms by their unaffected part so substituted values are combined
    // with polynomial coefficients before any rational arithmetic.
    std::map<Monomial, Poly, MonomialLess> groups;
    for (const auto& t : p.terms()) {
      Monomial fixed;
      Monomial moved;
      for (const auto& [v, e] : t.monomial.factors()) {
        if (affected(v))
          moved = moved * Monomial::variable(v, e);
        else
          fixed = fixed * Monomial::variable(v, e);
      }
      groups[moved] += Poly::monomial(fixed, t.coeff);
    }
    Expr out;
    for (const auto& [moved, coeff] : groups) {
      Expr term = Expr::from_poly(coeff);
      for (const auto& [v, e] : moved.factors()) term *= power(v, e);
      out += term;
    }
    return out;
  }

  Expr expr(const Expr& e) {
    bool any = false;
    for (Var v : e.atoms()) any = any || affected(v);
    if (!any) return e;
    Expr n = poly(e.numerator());
    if (e.is_polynomial()) return n;
    Expr d = poly(e.denominator());
    if (d.is_zero()) throw DivisionByZero("substitution makes a denominator vanish");
    return n / d;
  }

private:
  struct MonomialLess {
    bool operator()(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }
  };

  Expr power(Var v, std::uint32_t e) {
    auto key = std::make_pair(v, e);
    if (auto it = powers_.find(key); it != powers_.end()) return it->second;
    Expr r = e == 1 ? value(v) : value(v).pow(static_cast<int>(e));
    powers_.emplace(key, r);
    return r;
  }

  Expr compute(Var v) {
    if (auto it = bindings_.symbols.find(v); it != bindings_.symbols.end()) return it->second;
    const SymbolInfo& info = symbols().info(v);
    switch (info.kind) {
      case SymbolKind::Plain:
        return Expr::symbol(v);
      case SymbolKind::Extension: {
        Expr q = poly(info.radicand);
        if (q.is_polynomial() && q.numerator() == info.radicand) return Expr::symbol(v);
        return sqrt(q);
      }
      case SymbolKind::Function: {
        Expr arg = expr(*info.argument);
        auto it = bindings_.functions.find(info.name);
        if (it == bindings_.functions.end()) return apply_function(info.name, info.order, arg);
        Expr body = it->second.body;
        for (unsigned k = 0; k < info.order; ++k) body = diff(body, it->second.formal);
        return substitute(body, it->second.formal, arg);
      }
      case SymbolKind::Power:
        return rational_power(expr(*info.argument), info.exponent);
    }
    return Expr::symbol(v);
  }

  const Bindings& bindings_;
  std::map<Var, bool> affected_;
  std::map<Var, Expr> values_;
  std::map<std::pair<Var, std::uint32_t>, Expr> powers_;
};

}  // namespace

Expr substitute(const Expr& e, const Bindings& bindings) {
  Substituter s(bindings);
  return s.expr(e);
}

Expr substitute(const Expr& e, Var symbol, const Expr& value) {
  Bindings b;
  b.symbols.emplace(symbol, value);
  return substitute(e, b);
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

Rational eval_atom(Var v, const Point& point, std::map<Var, Rational>& memo);

Rational eval_poly(const Poly& p, const Point& point, std::map<Var, Rational>& memo) {
  std::map<Var, Rational> values;
  for (Var v : p.variables()) values[v] = eval_atom(v, point, memo);
  return p.evaluate(values).constant_value();
}

Rational eval_expr(const Expr& e, const Point& point, std::map<Var, Rational>& memo) {
  Rational d = eval_poly(e.denominator(), point, memo);
  if (d == 0) throw EvaluationError("pole: denominator vanishes at the point");
  return eval_poly(e.numerator(), point, memo) / d;
}

Rational eval_atom(Var v, const Point& point, std::map<Var, Rational>& memo) {
  if (auto it = memo.find(v); it != memo.end()) return it->second;
  const SymbolInfo& info = symbols().info(v);
  Rational value;
  switch (info.kind) {
    case SymbolKind::Plain: {
      auto it = point.values.find(v);
      if (it == point.values.end()) throw EvaluationError("unbound symbol " + info.name);
      value = it->second;
      break;
    }
    case SymbolKind::Extension: {
      Rational q = eval_poly(info.radicand, point, memo);
      auto it = point.extensions.find(v);
      if (it != point.extensions.end()) {
        if (it->second < 0 || it->second * it->second != q)
          throw EvaluationError("supplied value of " + symbols().display_name(v) + " is not the positive root");
        value = it->second;
      } else {
        auto r = exact_root(q, 2);
        if (!r) throw EvaluationError("irrational branch for " + symbols().display_name(v));
        value = *r;
      }
      break;
    }
    case SymbolKind::Function:
      throw EvaluationError("opaque function atom " + symbols().display_name(v));
    case SymbolKind::Power: {
      Rational b = eval_expr(*info.argument, point, memo);
      Rational raised = 1;
      for (long i = 0; i < info.exponent.get_num().get_si(); ++i) raised *= b;
      auto r = exact_root(raised, static_cast<unsigned>(info.exponent.get_den().get_ui()));
      if (!r) throw EvaluationError("irrational power " + symbols().display_name(v));
      value = *r;
      break;
    }
  }
  memo.emplace(v, value);
  return value;
}

}  // namespace

Rational eval_rational(const Expr& e, const Point& point) {
  std::map<Var, Rational> memo;
  return eval_expr(e, point, memo);
}

}  // namespace relcheck
