#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gvb/derivation.hpp"
#include "gvb/eta.hpp"
#include "gvb/symmetry.hpp"
#include "gvb/variational.hpp"

namespace gvb {

/// Tower whose identities need terms beyond the bilinear h-term.
class UnsupportedShapeError : public ModelError {
 public:
  using ModelError::ModelError;
};

/// Verification requested out of order (a lower stage is unverified).
class OrderingError : public Error {
 public:
  using Error::Error;
};

/// One Noether identity Δ_{r_k}, written as a density coefficient in the antifield ring:
/// Δ_r = Σ Δ^{A,Λ} s̄_{ΛA} at stage 0, and at stage k ≥ 1
/// Δ_{r_k} = Σ Δ^{r_{k-1},Λ} c̄_{Λ r_{k-1}} + Σ h c̄_{Σ r_{k-2}} s̄_{ΞA}.
struct NoetherOperator {
  std::string name;
  int stage = 0;
  /// Antifield c̄_{r_k} and ghost c^{r_k} attached to this identity.
  int antifield = -1;
  int ghost = -1;
  GradedScalar delta;

  /// Part linear in stage k-1 antifields.
  GradedScalar linear_part(const FieldTable& table) const;
  /// Remaining bilinear h-term (zero at stage 0).
  GradedScalar h_term(const FieldTable& table) const;
  /// Δ^{target,Λ} for a target generator of stage k-1 (an s̄ at stage 0).
  CoefficientTuple coefficients(const FieldTable& table, int target) const;
};

struct CheckResult {
  bool holds = false;
  GradedScalar witness;
};

/// Stages of Noether operators with their antifield and ghost declarations.
class NoetherTower {
 public:
  /// Declares the antifields s̄_A of every field (named bar_<field>) if absent.
  explicit NoetherTower(FieldTablePtr table);

  const FieldTablePtr& table() const { return table_; }
  int depth() const { return static_cast<int>(stages_.size()); }
  const std::vector<NoetherOperator>& stage(int k) const { return stages_.at(static_cast<std::size_t>(k)); }
  bool empty() const { return stages_.empty(); }

  /// Antifield s̄_A of a field.
  int antifield_of(int field) const;
  /// Stage of an antifield or ghost generator, -1 for s̄_A.
  int generator_stage(int id) const { return table_->decl(id).stage; }

  /// Declares bar_<name> and gh_<name> for a new identity; validates the shape.
  const NoetherOperator& add_identity(int stage, const std::string& name, const GradedScalar& delta);

  /// Regularity of the tower: asserted by the user, never checked.
  void assert_regularity(bool asserted) { regularity_asserted_ = asserted; }
  bool regularity_asserted() const { return regularity_asserted_; }

  /// Marks stage k as verified; verification itself lives in the free functions.
  void mark_verified(int k, bool ok);
  bool verified(int k) const;
  bool all_verified() const;

 private:
  void validate_shape(int stage, const GradedScalar& delta) const;

  FieldTablePtr table_;
  std::vector<std::vector<NoetherOperator>> stages_;
  std::vector<std::optional<bool>> verified_;
  bool regularity_asserted_ = false;
};

/// Odd right derivation δ_KT(f) = Σ ∂⃖_v f · d_Λ δ_KT(v).
class KoszulTate {
 public:
  KoszulTate(int dim, std::map<int, GradedScalar> images) : dim_(dim), images_(std::move(images)) {}
  GradedScalar apply(const GradedScalar& f) const;
  /// Image of a generator (zero for fields and ghosts).
  GradedScalar image(int id) const;
  const std::map<int, GradedScalar>& images() const { return images_; }

 private:
  int dim_;
  std::map<int, GradedScalar> images_;
};

/// δ̄ alone: s̄_A ↦ E_A.
KoszulTate delta_bar(const Lagrangian& lagrangian, const NoetherTower& tower);

/// Σ Δ^{A,Λ} d_Λ E_A.
CheckResult verify_noether(const Lagrangian& lagrangian, const NoetherTower& tower, const NoetherOperator& op);
/// Σ Δ^{r_{k-1},Λ} d_Λ(linear part of Δ_{r_{k-1}}) + δ̄(h-term); stage k-1 must be verified.
CheckResult verify_stage(const Lagrangian& lagrangian, const NoetherTower& tower, const NoetherOperator& op);
/// Verifies every stage in order, recording flags on the tower. Returns the first failure if any.
std::optional<std::pair<const NoetherOperator*, CheckResult>> verify_tower(const Lagrangian& lagrangian,
                                                                          NoetherTower& tower);

/// Full δ_KT; refuses an unverified tower.
KoszulTate koszul_tate(const Lagrangian& lagrangian, const NoetherTower& tower);
/// δ_KT(δ_KT(g)) for every generator g, keyed by generator id.
std::map<int, GradedScalar> koszul_tate_squares(const Lagrangian& lagrangian, const NoetherTower& tower,
                                                const KoszulTate& kt);

/// L_e = L + Σ c^{r_k} Δ_{r_k} ω.
GradedScalar extended_lagrangian(const Lagrangian& lagrangian, const NoetherTower& tower);

struct ExtendedCheck {
  /// δ_KT(𝓛_e) = 0.
  bool exact_symmetry = false;
  /// Density of the split first-variational identity and its antiderivative σ.
  GradedScalar density;
  GradedForm sigma;
  bool trivial = false;
};
ExtendedCheck check_extended_lagrangian(const Lagrangian& lagrangian, const NoetherTower& tower);

/// u^A = Σ c^r_Λ η(Δ^A_r)^Λ, keyed by field variable.
std::map<Var, GradedScalar> gauge_components(const NoetherTower& tower);
/// u^{r_{k-1}} = Σ c^{r_k}_Λ η(Δ^{r_{k-1}}_{r_k})^Λ, keyed by ghost variable of stage k-1.
std::map<Var, GradedScalar> higher_gauge_components(const NoetherTower& tower, int k);

/// The odd derivation u (k = 0) or u^{(k)}, prolonged.
GradedDerivation gauge_symmetry(const NoetherTower& tower, int k = 0);

struct GaugeCertificate {
  SymmetryVerdict verdict;
  /// u^A E_A ω = d_H σ_0.
  GradedScalar density;
  GradedForm sigma;
};
GaugeCertificate certify_gauge_symmetry(const Lagrangian& lagrangian, const NoetherTower& tower);

/// Σ d_Σ u^{r_{k-1}} ∂^Σ u^{r_{k-2}} - δ̄(α^{r_{k-2}}), keyed by the stage k-2 generator; all zero when it holds.
std::map<Var, GradedScalar> ascent_relation_residual(const Lagrangian& lagrangian, const NoetherTower& tower, int k);

/// Variational derivative of Σ u^{r_{k-1}} c̄_{r_{k-1}} with respect to the stage-k ghosts, keyed by antifield id.
std::map<int, GradedScalar> reproduce_identities(const NoetherTower& tower, const std::map<Var, GradedScalar>& u, int k);

}  // namespace gvb
