#pragma once

#include <map>
#include <vector>

#include "gvb/derivation.hpp"
#include "gvb/form.hpp"

namespace gvb {

/// d_V φ = θ^A_Λ ∧ ∂^Λ_A φ.
GradedForm d_vertical(const GradedForm& phi);
/// d_H φ = dx^λ ∧ d_λ φ, with d_H θ^A_Λ = dx^λ ∧ θ^A_{λ+Λ}.
GradedForm d_horizontal(const GradedForm& phi);
/// d = d_V + d_H.
GradedForm exterior_derivative(const GradedForm& phi);

/// ρ̄(φ) = Σ (-1)^{|Λ|} θ^A ∧ d_Λ(∂^Λ_A⌋φ).
GradedForm rho_bar(const GradedForm& phi);
/// ρ = Σ_k (1/k) ρ̄ ∘ h_k ∘ h^n. Throws BidegreeError unless every term is (k>0, n).
GradedForm rho_projector(const GradedForm& phi);

/// 𝐋_ϑφ = ϑ⌋dφ + d(ϑ⌋φ).
GradedForm lie_derivative(const GradedDerivation& v, const GradedForm& phi);

/// Even density L = 𝓛ω over the fields of a model.
class Lagrangian {
 public:
  /// Throws Error when 𝓛 has an odd part.
  Lagrangian(FieldTablePtr table, GradedScalar density);

  const FieldTablePtr& table() const { return table_; }
  const GradedScalar& density() const { return density_; }
  int dim() const { return density_.dim(); }
  /// L = 𝓛ω.
  GradedForm form() const;
  /// Field variables s^A (kind field, empty multi-index) in declaration order.
  std::vector<Var> fields() const;

 private:
  FieldTablePtr table_;
  GradedScalar density_;
};

/// E = Σ (-1)^{|Λ|} d_Λ ∂^Λ_s 𝓛 for a single generator s (left derivatives by default).
GradedScalar variational_derivative(const GradedScalar& density, const Var& s, Side side = Side::left);

struct EulerLagrangeResult {
  std::map<Var, GradedScalar> components;
  /// δL = Σ θ^A ∧ E_A ω.
  GradedForm form;
};

EulerLagrangeResult euler_lagrange(const Lagrangian& lagrangian);
/// δ(𝓛ω) over the given generators.
EulerLagrangeResult euler_lagrange(const GradedScalar& density, const std::vector<Var>& generators);

/// Ξ_L = L + Σ θ^A_Λ ∧ F^{λΛ}_A ω_λ, with the F-recursion solved top-down and
/// split symmetrically across the indices of Λ.
GradedForm lepage_equivalent(const Lagrangian& lagrangian);

/// 𝐋_ϑL - υ_V⌋δL - d_H(h_0(ϑ⌋Ξ_L)) - d_V(υ_H⌋ω)𝓛 for the prolongation ϑ of υ.
GradedForm first_variational_residual(const Lagrangian& lagrangian, const GradedDerivation& upsilon);

}  // namespace gvb
