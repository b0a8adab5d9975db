#pragma once

#include <map>

#include "gvb/multi_index.hpp"
#include "gvb/scalar.hpp"

namespace gvb {

/// Finite tuple (f^Λ) of coefficient functions indexed by multi-indices.
using CoefficientTuple = std::map<MultiIndex, GradedScalar>;

/// How the combinatorial factor of the integration-by-parts involution is read.
enum class EtaConvention {
  /// ∏_μ C(Σ_μ+Λ_μ, Λ_μ): counts the ways the multiset Σ+Λ splits.
  per_index,
  /// |Σ+Λ|! / (|Σ|! |Λ|!): only lengths; agrees with per_index when n = 1.
  length_factorial,
};

/// η(f)^Λ = Σ_Σ (-1)^{|Σ+Λ|} c(Σ,Λ) d_Σ f^{Σ+Λ}, so that
/// Σ_Λ (-1)^{|Λ|} d_Λ(f^Λ φ) = Σ_Λ η(f)^Λ d_Λ φ.
CoefficientTuple eta_transform(const CoefficientTuple& f, int dim,
                               EtaConvention convention = EtaConvention::per_index);

/// Drops zero entries so tuples compare by content.
CoefficientTuple prune(const CoefficientTuple& f);

}  // namespace gvb
