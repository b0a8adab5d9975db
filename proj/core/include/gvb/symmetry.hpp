#pragma once

#include <string>

#include "gvb/variational.hpp"

namespace gvb {

struct SymmetryVerdict {
  bool symmetric = false;
  std::string reason;
  /// 𝐋_ϑL.
  GradedForm lie;
  /// σ with d_Hσ = 𝐋_ϑL.
  GradedForm sigma;
  /// J = h_0(ϑ⌋Ξ_L) - σ, with d_HJ = -υ_V⌋δL.
  GradedForm current;
  /// δ(𝐋_ϑL) when it is not d_H-exact.
  GradedForm witness;
};

/// Decides whether 𝐋_ϑL is d_H-exact on the chart and, if so, extracts the
/// certificate σ and the conserved current.
SymmetryVerdict is_variational_symmetry(const Lagrangian& lagrangian, const GradedDerivation& upsilon);

}  // namespace gvb
