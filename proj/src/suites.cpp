#include "relcheck/suites.hpp"

#include <chrono>

#include "relcheck/algebra.hpp"
#include "relcheck/errors.hpp"
#include "relcheck/frozen_phase.hpp"
#include "relcheck/instant_form.hpp"
#include "relcheck/lagrangian_form.hpp"
#include "relcheck/massshell_jacobi.hpp"

namespace relcheck {

namespace {

constexpr const char* kRefRelations = "Poincare commutation relations";

std::string vector_text(const std::vector<Rational>& v, const std::vector<std::string>& basis) {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k)
    if (v[k] != 0) out += (out.empty() ? "" : " + ") + ("(" + v[k].get_str() + ")*" + basis[k]);
  return out.empty() ? "0" : out;
}

std::vector<Rational> bracket_vec(const LieAlgebraSpec& spec, const std::vector<Rational>& u,
                                  const std::vector<Rational>& w) {
  std::size_t n = spec.dim();
  std::vector<Rational> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (u[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (w[j] == 0) continue;
      for (std::size_t k = 0; k < n; ++k) out[k] += u[i] * w[j] * spec.c(i, j, k);
    }
  }
  return out;
}

std::vector<Rational> unit(std::size_t n, std::size_t i) {
  std::vector<Rational> e(n);
  e[i] = 1;
  return e;
}

/// Antisymmetry per pair and the Jacobi identity per ordered triple.
void triple_checks(Report& report, const LieAlgebraSpec& spec, const std::string& label) {
  std::size_t n = spec.dim();
  std::size_t pair_defects = 0, triple_defects = 0, triples = 0;
  std::string first;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto a = spec.bracket(i, j), b = spec.bracket(j, i);
      for (std::size_t k = 0; k < n; ++k)
        if (a[k] + b[k] != 0) ++pair_defects;
      for (std::size_t k = 0; k < n; ++k) {
        ++triples;
        auto ei = unit(n, i), ej = unit(n, j), ek = unit(n, k);
        auto s1 = bracket_vec(spec, bracket_vec(spec, ei, ej), ek);
        auto s2 = bracket_vec(spec, bracket_vec(spec, ej, ek), ei);
        auto s3 = bracket_vec(spec, bracket_vec(spec, ek, ei), ej);
        for (std::size_t m = 0; m < n; ++m) s1[m] += s2[m] + s3[m];
        if (vector_text(s1, spec.basis()) != "0") {
          if (first.empty())
            first = spec.basis()[i] + "," + spec.basis()[j] + "," + spec.basis()[k] + ": " +
                    vector_text(s1, spec.basis());
          ++triple_defects;
        }
      }
    }
  report.expect(label + " antisymmetry", kRefRelations, pair_defects == 0, std::to_string(pair_defects),
                "defective c^k_ij entries over all pairs");
  report.expect(label + " Jacobi identity", kRefRelations, triple_defects == 0 && triples == n * n * n,
                triple_defects == 0 ? "0" : first, std::to_string(triples) + " basis triples");
}

Rational parse_mass(const std::string& text) {
  Rational m;
  try {
    m = parse_rational(text);
  } catch (const std::exception&) {
    throw DomainError("invalid mass '" + text + "'");
  }
  if (m <= 0) throw DomainError("mass must be positive, got " + text);
  return m;
}

std::vector<int> parse_signature(const std::string& text) {
  std::vector<int> sig;
  for (char ch : text) {
    if (ch == '+') sig.push_back(1);
    else if (ch == '-') sig.push_back(-1);
    else if (ch != ',' && ch != ' ' && ch != '(' && ch != ')') throw DomainError("invalid signature '" + text + "'");
  }
  if (sig.size() != 4) throw DomainError("signature needs four signs, got '" + text + "'");
  return sig;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"instant-form", "jacobi", "frozen", "lagrangian", "algebra", "all"};
  return names;
}

Report algebra_suite(Rng& rng) {
  Report report("algebra");
  for (const auto& sig : {std::vector<int>{1, -1, -1, -1}, std::vector<int>{-1, 1, 1, 1}}) {
    std::string label = sig[0] == 1 ? "(+,-,-,-)" : "(-,+,+,+)";
    LieAlgebraSpec spec = poincare_spec(sig);
    triple_checks(report, spec, "M basis " + label);
    LieAlgebraSpec round = LieAlgebraSpec::parse(spec.serialize());
    report.expect("serialization round trip " + label, "plumbing", round.serialize() == spec.serialize(),
                  round.serialize() == spec.serialize() ? "0" : "differs");
  }

  LieAlgebraSpec jk = poincare_jk_spec({-1, 1, 1, 1}, Convention::HalfEpsilon);
  triple_checks(report, jk, "JK basis");
  struct Entry {
    const char* a;
    const char* b;
    const char* result;
  };
  // Spot values of the (J, K) table computed from the M basis by hand.
  const Entry table[] = {{"J1", "J2", "(-1)*J3"}, {"K1", "K2", "(1)*J3"}, {"J3", "K1", "(-1)*K2"},
                         {"P1", "J3", "(1)*P2"},  {"P0", "K1", "(-1)*P1"}, {"P1", "K1", "(-1)*P0"},
                         {"P1", "P2", "0"}};
  for (const auto& e : table) {
    std::string got = vector_text(jk.bracket(jk.index(e.a), jk.index(e.b)), jk.basis());
    report.expect(std::string("[") + e.a + "," + e.b + "]", "rotations and boosts", got == e.result, got,
                  std::string("expected ") + e.result);
  }
  LieAlgebraSpec jk_conv = poincare_jk_spec({-1, 1, 1, 1}, Convention::Flipped);
  report.info("flipped [K1,K2]", "rotations and boosts",
              vector_text(jk_conv.bracket(jk_conv.index("K1"), jk_conv.index("K2")), jk_conv.basis()));

  report.append(check_elementary_solution(), "elementary/");

  // The Lie-Poisson bracket is bilinear and antisymmetric on random coefficient vectors.
  LieAlgebraSpec spec = poincare_spec({1, -1, -1, -1});
  std::size_t bad = 0;
  for (int t = 0; t < 25; ++t) {
    std::vector<Rational> u(10), w(10), z(10);
    for (std::size_t i = 0; i < 10; ++i) {
      u[i] = rng.small_rational();
      w[i] = rng.small_rational();
      z[i] = rng.small_rational();
    }
    auto uw = lie_poisson_bracket(u, w, spec), wu = lie_poisson_bracket(w, u, spec);
    std::vector<Rational> sum(10);
    for (std::size_t i = 0; i < 10; ++i) sum[i] = u[i] + z[i];
    auto lhs = lie_poisson_bracket(sum, w, spec), zw = lie_poisson_bracket(z, w, spec);
    for (std::size_t i = 0; i < 10; ++i)
      if (uw[i] + wu[i] != 0 || lhs[i] != uw[i] + zw[i]) {
        ++bad;
        break;
      }
  }
  report.expect("Lie-Poisson bilinear and antisymmetric", "Poisson algebra on the dual", bad == 0,
                std::to_string(bad), "25 random coefficient vectors");
  return report;
}

Report run_suite(const std::string& name, const SuiteOptions& options) {
  bool known = false;
  for (const auto& n : suite_names()) known = known || n == name;
  if (!known) throw DomainError("unknown suite '" + name + "'");
  Rational mass = parse_mass(options.mass);
  std::vector<int> signature = {1, -1, -1, -1};
  if (!options.signature.empty()) signature = parse_signature(options.signature);

  Report report(name, options.seed);
  Rng rng(options.seed);
  bool all = name == "all";
  auto run = [&](const std::string& module, auto&& body) {
    auto start = std::chrono::steady_clock::now();
    Report sub = body();
    report.append(sub, all ? module + "/" : std::string());
    if (options.timing) {
      auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
      report.info(module + " elapsed", "plumbing", std::to_string(ms.count()) + " ms").ms = ms.count();
    }
  };

  if (all || name == "algebra") run("algebra", [&] { return algebra_suite(rng); });
  if (all || name == "instant-form") {
    InstantOptions io{options.f, options.lagrangian};
    run("instant-form", [&] { return instant_form_suite(io, rng); });
  }
  if (all || name == "jacobi") {
    run("jacobi", [&] { return jacobi_suite(mass, rng); });
    if (all && mass != 3) run("jacobi-m3", [&] { return jacobi_suite(Rational(3), rng); });
  }
  if (all || name == "frozen") run("frozen", [&] { return frozen_suite(rng); });
  if (all || name == "lagrangian") {
    run("lagrangian", [&] { return lagrangian_suite(rng); });
    if (signature != std::vector<int>{1, -1, -1, -1})
      report.info("signature override", "plumbing", options.signature,
                  "the Lagrangian-form checks always use (+,-,-,-)");
  }
  return report;
}

}  // namespace relcheck
