#include "gvb/symmetry.hpp"

#include <set>

#include "gvb/homotopy.hpp"

namespace gvb {

SymmetryVerdict is_variational_symmetry(const Lagrangian& lagrangian, const GradedDerivation& upsilon) {
  const int dim = lagrangian.dim();
  SymmetryVerdict v{false, {}, GradedForm(dim), GradedForm(dim), GradedForm(dim), GradedForm(dim)};
  if (!upsilon.is_projectable()) {
    v.reason = "horizontal part depends on jet variables (not projectable)";
    return v;
  }
  v.lie = lie_derivative(upsilon, lagrangian.form());
  GradedForm density = project_contact(v.lie, 0);

  std::set<Var> bases;
  for (const auto& [w, c] : density.terms())
    for (const Var& s : c.variables()) bases.insert(s.with_jet({}));
  GradedScalar coefficient = density.is_zero() ? GradedScalar(dim) : density.terms().begin()->second;
  v.witness = euler_lagrange(coefficient, std::vector<Var>(bases.begin(), bases.end())).form;
  if (!v.witness.is_zero()) {
    v.reason = "Lie derivative of L is not variationally trivial";
    return v;
  }
  v.sigma = homotopy_density(density).total();
  v.current = project_contact(interior_product(upsilon, lepage_equivalent(lagrangian)), 0) - v.sigma;
  GradedForm balance = d_horizontal(v.current) +
                       interior_product(upsilon.vertical_part(), euler_lagrange(lagrangian).form);
  if (!balance.is_zero()) {
    v.witness = balance;
    v.reason = "conservation law fails";
    return v;
  }
  v.symmetric = true;
  v.reason = "Lie derivative is d_H-exact";
  return v;
}

}  // namespace gvb
