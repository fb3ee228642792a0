#pragma once

#include <string>
#include <vector>

#include "relcheck/geometry.hpp"
#include "relcheck/rational.hpp"
#include "relcheck/report.hpp"
#include "relcheck/sampling.hpp"

namespace relcheck {

/// Finite-dimensional Lie algebra given by structure constants c^k_{ij}.
/// Antisymmetry and the Jacobi identity are checked on construction.
class LieAlgebraSpec {
public:
  /// constants[(i * n + j) * n + k] = c^k_{ij}. Throws DomainError if invalid.
  LieAlgebraSpec(std::vector<std::string> basis, std::vector<Rational> constants);

  std::size_t dim() const noexcept { return basis_.size(); }
  const std::vector<std::string>& basis() const noexcept { return basis_; }
  std::size_t index(const std::string& name) const;
  const Rational& c(std::size_t i, std::size_t j, std::size_t k) const { return constants_[(i * dim() + j) * dim() + k]; }
  /// Coefficient vector of [e_i, e_j].
  std::vector<Rational> bracket(std::size_t i, std::size_t j) const;

  /// Number of (i, j, k) entries violating c^k_{ij} = -c^k_{ji}.
  std::size_t antisymmetry_defects() const;
  /// Number of (i, j, k, n) entries where the cyclic sum of c^m_{ij} c^n_{mk} is nonzero.
  std::size_t jacobi_defects() const;

  /// New spec in the basis e'_a = sum_i change[a][i] e_i; change must be invertible.
  LieAlgebraSpec change_basis(std::vector<std::string> names, const std::vector<std::vector<Rational>>& change) const;
  /// Adjoins a central element.
  LieAlgebraSpec with_central(const std::string& name) const;

  /// "basis: a b c" followed by lines "[a,b] = 2 c - 1/2 a".
  std::string serialize() const;
  static LieAlgebraSpec parse(const std::string& text);

private:
  LieAlgebraSpec() = default;
  std::vector<std::string> basis_;
  std::vector<Rational> constants_;
};

/// Sign convention for the rotation generators in the (J, K) basis:
/// HalfEpsilon has J_l = 1/2 eps_ljk M_jk, so [K1, K2] = J3 under signature (-,+,+,+);
/// Flipped negates J, giving [K1, K2] = -J3.
enum class Convention { HalfEpsilon, Flipped };
Convention convention_from_string(const std::string& label);

/// Basis P0..P3, M01, M02, M03, M12, M13, M23 with
/// [M_mn, P_r] = g_nr P_m - g_mr P_n and
/// [M_mn, M_rs] = g_nr M_ms - g_mr M_ns + g_ns M_rm - g_ms M_rn.
LieAlgebraSpec poincare_spec(const std::vector<int>& signature);
/// Basis P0..P3, J1..J3, K1..K3 with K_j = M_0j and J_l = +-1/2 eps_ljk M_jk.
LieAlgebraSpec poincare_jk_spec(const std::vector<int>& signature, Convention convention = Convention::HalfEpsilon);

/// Coefficient vector of the Lie-Poisson bracket {u^, v^} = [u, v]^.
std::vector<Rational> lie_poisson_bracket(const std::vector<Rational>& u, const std::vector<Rational>& v,
                                          const LieAlgebraSpec& spec);

struct Realization {
  LieAlgebraSpec spec;
  std::vector<VectorField> fields;  ///< one per basis element, in basis order
  std::vector<VectorField> modulo;  ///< residuals in the span of these are accepted
};

/// One check per unordered pair (i < j): [X_i, X_j] - sum_k c^k_ij X_k is zero, or
/// lies in the span of the modulo fields (the coefficients are reported). With an
/// rng, failing pairs get a witness point where one residual component is nonzero.
Report check_realization(const Realization& r, const std::string& ref = "commutation relations", Rng* rng = nullptr);

/// Witness point for the first component of X that is nonzero somewhere; fills
/// c.witness and describes the value.
void attach_witness(Check& c, const VectorField& X, Rng& rng);

/// Canonical Poisson bracket on T*R^4 from omega = dp_mu ^ dx^mu with upper-index
/// coordinates x0..x3, p0..p3 of the offshell chart.
Expr canonical_poisson_bracket(const Expr& f, const Expr& g, const std::vector<int>& signature);
/// P_mu = p_mu, M_mn = x_m p_n - x_n p_m reproduce the structure constants.
Report check_elementary_solution();

}  // namespace relcheck
