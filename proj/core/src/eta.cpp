#include "gvb/eta.hpp"

namespace gvb {

CoefficientTuple prune(const CoefficientTuple& f) {
  CoefficientTuple out;
  for (const auto& [k, v] : f)
    if (!v.is_zero()) out.emplace(k, v);
  return out;
}

CoefficientTuple eta_transform(const CoefficientTuple& f, int dim, EtaConvention convention) {
  CoefficientTuple out;
  for (const auto& [top, value] : f) {
    if (value.is_zero()) continue;
    // Every entry f^{Σ+Λ} contributes to each Λ ⊆ top with Σ = top - Λ.
    for (const auto& lambda : top.submultisets()) {
      MultiIndex sigma = top - lambda;
      Rational c = convention == EtaConvention::per_index
                       ? merge_count(sigma, lambda)
                       : factorial(static_cast<unsigned>(top.order())) /
                             (factorial(static_cast<unsigned>(sigma.order())) *
                              factorial(static_cast<unsigned>(lambda.order())));
      if (top.order() & 1) c = -c;
      GradedScalar term = total_derivative(value, sigma) * c;
      auto [it, inserted] = out.try_emplace(lambda, GradedScalar(dim));
      it->second += term;
    }
  }
  return prune(out);
}

}  // namespace gvb
