#include "relcheck/poly.hpp"

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <set>

namespace relcheck {

// ---------------------------------------------------------------------------
// Monomial

Monomial Monomial::variable(Var v, std::uint32_t exponent) {
  Monomial m;
  if (exponent > 0) {
    m.factors_.push_back({v, exponent});
    m.degree_ = exponent;
  }
  return m;
}

std::uint32_t Monomial::degree(Var v) const noexcept {
  for (const auto& [var, e] : factors_) {
    if (var == v) return e;
    if (var > v) break;
  }
  return 0;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial out;
  out.factors_.reserve(factors_.size() + other.factors_.size());
  std::size_t i = 0, j = 0;
  const auto& a = factors_;
  const auto& b = other.factors_;
  while (i < a.size() && j < b.size()) {
    if (a[i].first == b[j].first) {
      out.factors_.push_back({a[i].first, a[i].second + b[j].second});
      ++i;
      ++j;
    } else if (a[i].first < b[j].first) {
      out.factors_.push_back(a[i++]);
    } else {
      out.factors_.push_back(b[j++]);
    }
  }
  for (; i < a.size(); ++i) out.factors_.push_back(a[i]);
  for (; j < b.size(); ++j) out.factors_.push_back(b[j]);
  out.degree_ = degree_ + other.degree_;
  return out;
}

std::optional<Monomial> Monomial::divide(const Monomial& divisor) const {
  if (divisor.degree_ > degree_) return std::nullopt;
  Monomial out;
  std::size_t i = 0, j = 0;
  const auto& a = factors_;
  const auto& b = divisor.factors_;
  while (j < b.size()) {
    if (i == a.size() || a[i].first > b[j].first) return std::nullopt;
    if (a[i].first < b[j].first) {
      out.factors_.push_back(a[i++]);
      continue;
    }
    if (a[i].second < b[j].second) return std::nullopt;
    if (a[i].second > b[j].second) out.factors_.push_back({a[i].first, a[i].second - b[j].second});
    ++i;
    ++j;
  }
  for (; i < a.size(); ++i) out.factors_.push_back(a[i]);
  out.degree_ = degree_ - divisor.degree_;
  return out;
}

Monomial Monomial::without(Var v) const { return with_exponent(v, 0); }

Monomial Monomial::with_exponent(Var v, std::uint32_t exponent) const {
  Monomial out;
  bool placed = false;
  for (const auto& f : factors_) {
    if (!placed && f.first >= v) {
      if (exponent > 0) out.factors_.push_back({v, exponent});
      placed = true;
      if (f.first == v) continue;
    }
    out.factors_.push_back(f);
  }
  if (!placed && exponent > 0) out.factors_.push_back({v, exponent});
  out.degree_ = 0;
  for (const auto& f : out.factors_) out.degree_ += f.second;
  return out;
}

int compare(const Monomial& a, const Monomial& b) {
  if (a.degree_ != b.degree_) return a.degree_ < b.degree_ ? -1 : 1;
  std::size_t i = 0, j = 0;
  const auto& fa = a.factors_;
  const auto& fb = b.factors_;
  while (i < fa.size() && j < fb.size()) {
    if (fa[i].first == fb[j].first) {
      if (fa[i].second != fb[j].second) return fa[i].second < fb[j].second ? -1 : 1;
      ++i;
      ++j;
    } else {
      return fa[i].first < fb[j].first ? 1 : -1;
    }
  }
  if (i < fa.size()) return 1;
  if (j < fb.size()) return -1;
  return 0;
}

Monomial Monomial::gcd(const Monomial& a, const Monomial& b) {
  Monomial out;
  std::size_t i = 0, j = 0;
  while (i < a.factors_.size() && j < b.factors_.size()) {
    if (a.factors_[i].first == b.factors_[j].first) {
      auto e = std::min(a.factors_[i].second, b.factors_[j].second);
      out.factors_.push_back({a.factors_[i].first, e});
      out.degree_ += e;
      ++i;
      ++j;
    } else if (a.factors_[i].first < b.factors_[j].first) {
      ++i;
    } else {
      ++j;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Poly basics

namespace {
bool term_greater(const Term& a, const Term& b) { return compare(a.monomial, b.monomial) > 0; }
}  // namespace

Poly::Poly(const Rational& c) {
  if (c != 0) terms_.push_back({Monomial{}, c});
}

Poly Poly::variable(Var v) { return monomial(Monomial::variable(v), 1); }

Poly Poly::monomial(Monomial m, Rational c) {
  Poly p;
  if (c != 0) p.terms_.push_back({std::move(m), std::move(c)});
  return p;
}

Poly Poly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), term_greater);
  Poly p;
  p.terms_.reserve(terms.size());
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().monomial == t.monomial) {
      p.terms_.back().coeff += t.coeff;
    } else {
      if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
  return p;
}

Rational Poly::constant_value() const {
  if (terms_.empty()) return 0;
  assert(is_constant());
  return terms_[0].coeff;
}

std::uint32_t Poly::total_degree() const {
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.monomial.degree());
  return d;
}

std::uint32_t Poly::degree(Var v) const {
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.monomial.degree(v));
  return d;
}

std::vector<Var> Poly::variables() const {
  std::set<Var> vars;
  for (const auto& t : terms_)
    for (const auto& f : t.monomial.factors()) vars.insert(f.first);
  return {vars.begin(), vars.end()};
}

bool Poly::contains(Var v) const {
  for (const auto& t : terms_)
    if (t.monomial.degree(v) > 0) return true;
  return false;
}

Poly Poly::operator-() const {
  Poly p = *this;
  for (auto& t : p.terms_) t.coeff = -t.coeff;
  return p;
}

namespace {
template <bool Subtract>
std::vector<Term> merge(const std::vector<Term>& a, const std::vector<Term>& b) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    int c = compare(a[i].monomial, b[j].monomial);
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back(b[j++]);
      if constexpr (Subtract) out.back().coeff = -out.back().coeff;
    } else {
      Rational s = Subtract ? Rational(a[i].coeff - b[j].coeff) : Rational(a[i].coeff + b[j].coeff);
      if (s != 0) out.push_back({a[i].monomial, std::move(s)});
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  for (; j < b.size(); ++j) {
    out.push_back(b[j]);
    if constexpr (Subtract) out.back().coeff = -out.back().coeff;
  }
  return out;
}
}  // namespace

Poly& Poly::operator+=(const Poly& other) {
  if (other.terms_.empty()) return *this;
  if (terms_.empty()) return *this = other;
  terms_ = merge<false>(terms_, other.terms_);
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  if (other.terms_.empty()) return *this;
  terms_ = merge<true>(terms_, other.terms_);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.terms_.size() == 1) return b.times(a.terms_[0].monomial, a.terms_[0].coeff);
  if (b.terms_.size() == 1) return a.times(b.terms_[0].monomial, b.terms_[0].coeff);
  std::vector<Term> out;
  out.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& s : a.terms_)
    for (const auto& t : b.terms_) out.push_back({s.monomial * t.monomial, s.coeff * t.coeff});
  return Poly::from_terms(std::move(out));
}

Poly Poly::scaled(const Rational& c) const {
  if (c == 0) return {};
  Poly p = *this;
  for (auto& t : p.terms_) t.coeff *= c;
  return p;
}

Poly Poly::times(const Monomial& m, const Rational& c) const {
  if (c == 0) return {};
  Poly p;
  p.terms_.reserve(terms_.size());
  // Multiplying by a monomial preserves the order.
  for (const auto& t : terms_) p.terms_.push_back({t.monomial * m, t.coeff * c});
  return p;
}

Poly Poly::pow(unsigned k) const {
  Poly result(1);
  Poly base = *this;
  while (k > 0) {
    if (k & 1U) result = result * base;
    k >>= 1U;
    if (k > 0) base = base * base;
  }
  return result;
}

Poly Poly::derivative(Var v) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    auto e = t.monomial.degree(v);
    if (e == 0) continue;
    out.push_back({t.monomial.with_exponent(v, e - 1), t.coeff * e});
  }
  return from_terms(std::move(out));
}

std::vector<Poly> Poly::coefficients_in(Var v) const {
  std::vector<std::vector<Term>> buckets(degree(v) + 1);
  for (const auto& t : terms_) buckets[t.monomial.degree(v)].push_back({t.monomial.without(v), t.coeff});
  std::vector<Poly> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(from_terms(std::move(b)));
  return out;
}

Poly Poly::from_coefficients(const std::vector<Poly>& coeffs, Var v) {
  std::vector<Term> out;
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    for (const auto& t : coeffs[k].terms_)
      out.push_back({t.monomial * Monomial::variable(v, static_cast<std::uint32_t>(k)), t.coeff});
  return from_terms(std::move(out));
}

Poly Poly::evaluate(const std::map<Var, Rational>& values) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Monomial rest;
    Rational c = t.coeff;
    for (const auto& [v, e] : t.monomial.factors()) {
      auto it = values.find(v);
      if (it == values.end()) {
        rest = rest * Monomial::variable(v, e);
      } else {
        Rational p;
        mpz_pow_ui(p.get_num_mpz_t(), it->second.get_num_mpz_t(), e);
        mpz_pow_ui(p.get_den_mpz_t(), it->second.get_den_mpz_t(), e);
        c *= p;
      }
    }
    if (c != 0) out.push_back({std::move(rest), std::move(c)});
  }
  return from_terms(std::move(out));
}

Monomial Poly::monomial_content() const {
  if (terms_.empty()) return {};
  Monomial m = terms_[0].monomial;
  for (std::size_t i = 1; i < terms_.size() && !m.is_one(); ++i) m = Monomial::gcd(m, terms_[i].monomial);
  return m;
}

Rational Poly::content() const {
  if (terms_.empty()) return 1;
  Integer g = 0, l = 1;
  for (const auto& t : terms_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_num_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coeff.get_den_mpz_t());
  }
  Rational c(g, l);
  c.canonicalize();
  if (c < 0) c = -c;
  if (leading_coeff() < 0) c = -c;
  return c;
}

Poly Poly::primitive() const {
  if (terms_.empty()) return {};
  return scaled(1 / content());
}

Poly Poly::monic() const {
  if (terms_.empty()) return {};
  return scaled(1 / leading_coeff());
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (!(a.terms_[i].monomial == b.terms_[i].monomial)) return false;
    if (a.terms_[i].coeff != b.terms_[i].coeff) return false;
  }
  return true;
}

bool operator<(const Poly& a, const Poly& b) {
  if (a.terms_.size() != b.terms_.size()) return a.terms_.size() < b.terms_.size();
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    int c = compare(a.terms_[i].monomial, b.terms_[i].monomial);
    if (c != 0) return c < 0;
    if (a.terms_[i].coeff != b.terms_[i].coeff) return a.terms_[i].coeff < b.terms_[i].coeff;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Division

std::optional<Poly> divide_exact(const Poly& dividend, const Poly& divisor) {
  if (divisor.is_zero()) return std::nullopt;
  if (dividend.is_zero()) return Poly{};
  if (divisor.is_constant()) return dividend.scaled(1 / divisor.constant_value());
  if (dividend.total_degree() < divisor.total_degree()) return std::nullopt;
  for (const auto& [v, e] : divisor.leading().monomial.factors())
    if (dividend.degree(v) < e) return std::nullopt;

  const Term& lead = divisor.leading();
  Poly remainder = dividend;
  std::vector<Term> quotient;
  while (!remainder.is_zero()) {
    auto m = remainder.leading().monomial.divide(lead.monomial);
    if (!m) return std::nullopt;
    Rational c = remainder.leading_coeff() / lead.coeff;
    remainder -= divisor.times(*m, c);
    quotient.push_back({std::move(*m), std::move(c)});
  }
  return Poly::from_terms(std::move(quotient));
}

// ---------------------------------------------------------------------------
// GCD

namespace {

constexpr std::uint64_t kPrime = 2147483647ULL;  // 2^31 - 1

std::uint64_t mod_pow(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  b %= kPrime;
  while (e > 0) {
    if (e & 1U) r = r * b % kPrime;
    b = b * b % kPrime;
    e >>= 1U;
  }
  return r;
}

std::uint64_t mod_inv(std::uint64_t a) { return mod_pow(a, kPrime - 2); }

std::optional<std::uint64_t> rational_mod(const Rational& q) {
  unsigned long n = mpz_fdiv_ui(q.get_num_mpz_t(), kPrime);
  unsigned long d = mpz_fdiv_ui(q.get_den_mpz_t(), kPrime);
  if (d == 0) return std::nullopt;
  return static_cast<std::uint64_t>(n) * mod_inv(d) % kPrime;
}

using ModPoly = std::vector<std::uint64_t>;  // dense, index = power

void trim(ModPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

/// Image of `p` in Z_p[x] after fixing every other variable; nullopt if a
/// coefficient denominator vanishes mod p.
std::optional<ModPoly> modular_image(const Poly& p, Var x, const std::map<Var, std::uint64_t>& point) {
  ModPoly out(p.degree(x) + 1, 0);
  for (const auto& t : p.terms()) {
    auto c = rational_mod(t.coeff);
    if (!c) return std::nullopt;
    std::uint64_t v = *c;
    std::uint32_t k = 0;
    for (const auto& [var, e] : t.monomial.factors()) {
      if (var == x) {
        k = e;
      } else {
        v = v * mod_pow(point.at(var), e) % kPrime;
      }
    }
    out[k] = (out[k] + v) % kPrime;
  }
  return out;
}

std::size_t modular_gcd_degree(ModPoly a, ModPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    // a <- a mod b
    std::uint64_t inv = mod_inv(b.back());
    while (a.size() >= b.size() && !a.empty()) {
      std::uint64_t f = a.back() * inv % kPrime;
      std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i)
        a[i + shift] = (a[i + shift] + kPrime - f * b[i] % kPrime) % kPrime;
      trim(a);
    }
    std::swap(a, b);
  }
  return a.empty() ? 0 : a.size() - 1;
}

/// Upper bound on deg_x gcd(a, b) from a modular image; nullopt when no good
/// evaluation point was found.
std::optional<std::size_t> gcd_degree_bound(const Poly& a, const Poly& b, Var x, const std::vector<Var>& vars) {
  auto lca = a.coefficients_in(x).back();
  auto lcb = b.coefficients_in(x).back();
  for (std::uint64_t attempt = 0; attempt < 4; ++attempt) {
    std::map<Var, std::uint64_t> point;
    for (Var v : vars)
      if (v != x) point[v] = (static_cast<std::uint64_t>(v) * 7919ULL + attempt * 104729ULL + 12345ULL) % 1000003ULL + 2;
    auto la = modular_image(lca, x, point);
    auto lb = modular_image(lcb, x, point);
    if (!la || !lb || la->empty() || lb->empty() || (*la)[0] == 0 || (*lb)[0] == 0) continue;
    auto ia = modular_image(a, x, point);
    auto ib = modular_image(b, x, point);
    if (!ia || !ib) continue;
    return modular_gcd_degree(*ia, *ib);
  }
  return std::nullopt;
}

Poly gcd_primitive(const Poly& a, const Poly& b);

Poly gcd_of_all(const std::vector<Poly>& polys, Poly g) {
  for (const auto& p : polys) {
    if (g.is_constant() && !g.is_zero()) return Poly(1);
    if (p.is_zero()) continue;
    g = g.is_zero() ? p.primitive() : gcd(g, p);
  }
  return g.is_zero() ? Poly{} : g.primitive();
}

std::vector<Poly> trimmed(std::vector<Poly> v) {
  while (!v.empty() && v.back().is_zero()) v.pop_back();
  return v;
}

/// Pseudo-remainder of dense coefficient vectors in the main variable.
std::vector<Poly> pseudo_remainder(std::vector<Poly> r, const std::vector<Poly>& b) {
  const Poly& lcb = b.back();
  while (r.size() >= b.size() && !r.empty()) {
    Poly lcr = r.back();
    std::size_t shift = r.size() - b.size();
    for (auto& c : r) c = c * lcb;
    for (std::size_t i = 0; i < b.size(); ++i) r[i + shift] -= lcr * b[i];
    r = trimmed(std::move(r));
  }
  return r;
}

std::vector<Poly> primitive_part(std::vector<Poly> coeffs) {
  Poly c = gcd_of_all(coeffs, Poly{});
  if (!c.is_constant())
    for (auto& p : coeffs) p = *divide_exact(p, c);
  // Remove the integer content shared by all coefficients.
  Integer g = 0, l = 1;
  for (const auto& p : coeffs)
    for (const auto& t : p.terms()) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_num_mpz_t());
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coeff.get_den_mpz_t());
    }
  if (g != 0) {
    Rational scale(l, g);
    scale.canonicalize();
    if (scale != 1)
      for (auto& p : coeffs) p = p.scaled(scale);
  }
  return coeffs;
}

/// gcd of primitive polynomials without monomial content.
Poly gcd_primitive(const Poly& a, const Poly& b) {
  if (a.is_constant() || b.is_constant()) return Poly(1);
  if (a == b) return a.primitive();

  auto va = a.variables();
  auto vb = b.variables();
  // A variable present in only one argument cannot occur in the gcd.
  for (Var x : va)
    if (!std::binary_search(vb.begin(), vb.end(), x)) return gcd_of_all(a.coefficients_in(x), b);
  for (Var x : vb)
    if (!std::binary_search(va.begin(), va.end(), x)) return gcd_of_all(b.coefficients_in(x), a);

  // Degree bounds from modular images; a zero bound means the gcd is free of x.
  std::map<Var, std::size_t> bound;
  for (Var x : va) {
    auto d = gcd_degree_bound(a, b, x, va);
    if (!d) continue;
    if (*d == 0) {
      auto ca = a.coefficients_in(x);
      auto cb = b.coefficients_in(x);
      ca.insert(ca.end(), cb.begin(), cb.end());
      return gcd_of_all(ca, Poly{});
    }
    bound[x] = *d;
  }

  if (b.total_degree() <= a.total_degree()) {
    if (auto q = divide_exact(a, b)) return b.primitive();
  } else {
    if (auto q = divide_exact(b, a)) return a.primitive();
  }

  Var main = va.front();
  std::uint32_t best = UINT32_MAX;
  for (Var x : va) {
    auto d = std::max(a.degree(x), b.degree(x));
    if (d < best) {
      best = d;
      main = x;
    }
  }

  auto ca = a.coefficients_in(main);
  auto cb = b.coefficients_in(main);
  Poly conta = gcd_of_all(ca, Poly{});
  Poly contb = gcd_of_all(cb, Poly{});
  Poly cont = gcd(conta, contb);
  if (!conta.is_constant())
    for (auto& p : ca) p = *divide_exact(p, conta);
  if (!contb.is_constant())
    for (auto& p : cb) p = *divide_exact(p, contb);
  if (ca.size() < cb.size()) std::swap(ca, cb);

  std::vector<Poly> g;
  while (true) {
    auto r = pseudo_remainder(ca, cb);
    if (r.empty()) {
      g = cb;
      break;
    }
    if (r.size() == 1) {
      g = {Poly(1)};
      break;
    }
    ca = std::move(cb);
    cb = primitive_part(std::move(r));
  }
  g = primitive_part(std::move(g));
  Poly result = Poly::from_coefficients(g, main);
  return (result * cont).primitive();
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return b.primitive();
  if (b.is_zero()) return a.primitive();
  if (a.is_constant() || b.is_constant()) return Poly(1);
  Monomial ma = a.monomial_content();
  Monomial mb = b.monomial_content();
  Monomial mg = Monomial::gcd(ma, mb);
  Poly pa = a.primitive();
  Poly pb = b.primitive();
  if (!ma.is_one()) pa = *divide_exact(pa, Poly::monomial(ma, 1));
  if (!mb.is_one()) pb = *divide_exact(pb, Poly::monomial(mb, 1));
  Poly g = gcd_primitive(pa, pb);
  if (!mg.is_one()) g = g.times(mg, 1);
  return g.primitive();
}

}  // namespace relcheck
