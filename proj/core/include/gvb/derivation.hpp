#pragma once

#include <map>
#include <vector>

#include "gvb/form.hpp"

namespace gvb {

/// Graded derivation of the jet form algebra, described by its contractions
/// with the basis one-forms: ϑ⌋dx^λ and ϑ⌋θ^A_Λ.
///
/// A generalized vector field υ = υ^λ∂_λ + υ^A∂_A is stored unprolonged; the
/// contact coefficients d_Λ(υ^A - s^A_μ υ^μ) are produced on demand, so the
/// prolongation never goes stale.
class GradedDerivation {
 public:
  explicit GradedDerivation(int dim = 0, Parity parity = Parity::even);

  /// Prolonged generalized vector field υ^λ∂_λ + υ^A∂_A. `vertical` is keyed by
  /// the field variable with empty multi-index.
  static GradedDerivation prolonged(int dim, Parity parity, std::vector<GradedScalar> horizontal,
                                    std::map<Var, GradedScalar> vertical);
  /// Coordinate basis vector ∂_λ (dual to dx^λ in the (dx, ds) coframe).
  static GradedDerivation coordinate_vector(int dim, int lambda);
  /// Basis vector ∂^Λ_A dual to θ^A_Λ.
  static GradedDerivation jet_vector(int dim, const Var& v);

  int dim() const { return dim_; }
  Parity parity() const { return parity_; }
  bool is_prolonged() const { return prolonged_; }

  /// ϑ⌋dx^λ.
  GradedScalar horizontal_coefficient(int lambda) const;
  /// ϑ⌋θ^A_Λ.
  GradedScalar contact_coefficient(const Var& v) const;
  /// υ^A - s^A_μ υ^μ for the field of `v` (prolonged derivations only).
  GradedScalar characteristic(const Var& v) const;
  /// Unprolonged components.
  const std::vector<GradedScalar>& upsilon_horizontal() const { return upsilon_h_; }
  const std::map<Var, GradedScalar>& upsilon_vertical() const { return upsilon_v_; }

  /// υ_H = υ^λ d_λ.
  GradedDerivation horizontal_part() const;
  /// υ_V, the contact part with coefficients d_Λ(υ^A - s^A_μ υ^μ).
  GradedDerivation vertical_part() const;

  /// Horizontal coefficients depend on base coordinates only.
  bool is_projectable() const;

  /// ϑ(f) = ϑ⌋df.
  GradedScalar apply(const GradedScalar& f) const;

 private:
  int dim_;
  Parity parity_;
  bool prolonged_ = false;
  bool horizontal_on_ = true;
  bool vertical_on_ = true;
  std::vector<GradedScalar> upsilon_h_;
  std::map<Var, GradedScalar> upsilon_v_;
  std::map<Var, GradedScalar> explicit_;
};

/// Graded contraction: u⌋(φ∧φ') = (u⌋φ)∧φ' + (-1)^{|φ|+[φ][u]} φ∧(u⌋φ').
GradedForm interior_product(const GradedDerivation& u, const GradedForm& phi);

}  // namespace gvb
