#pragma once

#include <string>

#include "gvb/form.hpp"
#include "gvb/variational.hpp"

namespace gvb {

/// A failed exactness precondition, carrying the obstruction (d_Hφ, δφ or ρ(σ)).
class HomotopyError : public NotExactError {
 public:
  HomotopyError(const std::string& message, GradedForm witness)
      : NotExactError(message), witness_(std::move(witness)) {}
  const GradedForm& witness() const { return witness_; }

 private:
  GradedForm witness_;
};

/// φ = φ₀ + φ̃: φ₀ collects the terms whose coefficients carry no jet variables.
struct FiberSplit {
  GradedForm base;
  GradedForm fiber;
};

FiberSplit fiber_decompose(const GradedForm& phi);

/// ξ with d_H ξ_fiber = φ̃ and d ξ_base = φ₀.
struct Antiderivative {
  GradedForm fiber;
  GradedForm base;
  GradedForm total() const { return fiber + base; }
};

/// D^ν = Σ (Λ_ν+1) s^A_Λ ∂^{Λ+ν}_A.
GradedScalar lowering(const GradedScalar& f, int nu);
/// D^{+ν} = D^ν ∘ N^{-1}, with N the jet-degree operator; [D^{+ν}, d_μ] = δ^ν_μ on jet-homogeneous input.
GradedScalar lowering_plus(const GradedScalar& f, int nu);

/// Radial homotopy for polynomial exterior forms on the base: x^a dx^I ↦ x^a Σ ±x^i dx^{I∖i} / (|a|+|I|).
GradedForm radial_antiderivative(const GradedForm& phi0);

/// Horizontal (0,m<n)-form with d_Hφ = 0; densities (m = n) go to homotopy_density.
Antiderivative homotopy_horizontal(const GradedForm& phi);
/// Density (0,n) with δφ = 0, by the weighted integration-by-parts sum.
Antiderivative homotopy_density(const GradedForm& phi);
/// Density (0,n) with δφ = 0, by the operator with per-index factorials.
Antiderivative homotopy_olver(const GradedForm& phi);
/// (1,m<n)-form with d_Hφ = 0, through the barred-variable reduction.
GradedForm homotopy_contact(const GradedForm& phi);
/// (1,n)-form with ρ(σ) = 0.
GradedForm homotopy_rho_kernel(const GradedForm& sigma);

}  // namespace gvb
