#include "gvb/variational.hpp"

#include <algorithm>
#include <set>

namespace gvb {

namespace {

std::set<Var> contact_vars(const GradedForm& phi) {
  std::set<Var> out;
  for (const auto& [w, c] : phi.terms())
    for (const auto& g : w)
      if (g.kind == Generator::contact) out.insert(g.var);
  return out;
}

}  // namespace

GradedForm d_vertical(const GradedForm& phi) {
  const int dim = phi.dim();
  GradedForm out(dim);
  for (const auto& [w, f] : phi.terms()) {
    GradedForm tail = GradedForm::word(dim, w, GradedScalar::constant(dim, Rational(1)));
    GradedForm df(dim);
    for (const Var& v : f.variables()) df += wedge(GradedForm::theta(dim, v), GradedForm(partial(f, v, Side::left)));
    out += wedge(df, tail);
  }
  return out;
}

GradedForm d_horizontal(const GradedForm& phi) {
  const int dim = phi.dim();
  GradedForm out(dim);
  for (int lambda = 0; lambda < dim; ++lambda)
    out += wedge(GradedForm::dx(dim, lambda), total_derivative(phi, lambda));
  return out;
}

GradedForm exterior_derivative(const GradedForm& phi) { return d_vertical(phi) + d_horizontal(phi); }

GradedForm rho_bar(const GradedForm& phi) {
  const int dim = phi.dim();
  GradedForm out(dim);
  for (const Var& v : contact_vars(phi)) {
    GradedForm inner = total_derivative(interior_product(GradedDerivation::jet_vector(dim, v), phi), v.jet);
    if (v.jet.order() & 1) inner *= Rational(-1);
    out += wedge(GradedForm::theta(dim, v.with_jet({})), inner);
  }
  return out;
}

GradedForm rho_projector(const GradedForm& phi) {
  const int dim = phi.dim();
  GradedForm out(dim);
  for (const auto& [w, c] : phi.terms())
    if (horizontal_degree(w) != dim || contact_degree(w) == 0)
      throw BidegreeError("ρ acts on (k>0, n)-forms");
  for (int k = 1; k <= phi.max_contact_degree(); ++k) {
    GradedForm part = project_contact(phi, k);
    if (part.is_zero()) continue;
    out += rho_bar(part) * ratio(1, k);
  }
  return out;
}

GradedForm lie_derivative(const GradedDerivation& v, const GradedForm& phi) {
  return interior_product(v, exterior_derivative(phi)) + exterior_derivative(interior_product(v, phi));
}

Lagrangian::Lagrangian(FieldTablePtr table, GradedScalar density) : table_(std::move(table)), density_(std::move(density)) {
  if (!table_) throw Error("Lagrangian requires a field table");
  if (density_.dim() != table_->dim()) throw DimensionError("density dimension differs from the model");
  if (!density_.parity_part(Parity::odd).is_zero()) throw Error("Lagrangian density must be even");
}

GradedForm Lagrangian::form() const { return wedge(GradedForm(density_), horizontal_volume(dim())); }

std::vector<Var> Lagrangian::fields() const {
  std::vector<Var> out;
  for (int id : table_->ids(FieldKind::field)) out.push_back(table_->var(id));
  return out;
}

GradedScalar variational_derivative(const GradedScalar& density, const Var& s, Side side) {
  const int dim = density.dim();
  GradedScalar e(dim);
  for (const Var& v : density.variables()) {
    if (v.field != s.field) continue;
    GradedScalar term = total_derivative(partial(density, v, side), v.jet);
    if (v.jet.order() & 1)
      e -= term;
    else
      e += term;
  }
  return e;
}

EulerLagrangeResult euler_lagrange(const GradedScalar& density, const std::vector<Var>& generators) {
  const int dim = density.dim();
  EulerLagrangeResult r{{}, GradedForm(dim)};
  GradedForm omega = horizontal_volume(dim);
  for (const Var& s : generators) {
    GradedScalar e = variational_derivative(density, s);
    if (!e.is_zero()) r.form += wedge(GradedForm::theta(dim, s), wedge(GradedForm(e), omega));
    r.components.emplace(s, std::move(e));
  }
  return r;
}

EulerLagrangeResult euler_lagrange(const Lagrangian& lagrangian) {
  return euler_lagrange(lagrangian.density(), lagrangian.fields());
}

GradedForm lepage_equivalent(const Lagrangian& lagrangian) {
  const int dim = lagrangian.dim();
  const GradedScalar& density = lagrangian.density();
  GradedForm xi = lagrangian.form();
  const int order = std::max(density.max_jet_order(), 0);
  std::vector<std::vector<MultiIndex>> by_order(order + 1);
  for (const MultiIndex& m : MultiIndex::all_up_to(dim, order)) by_order[m.order()].push_back(m);

  for (const Var& field : lagrangian.fields()) {
    // F[λ][Λ] = F^{λΛ}_A, filled from the top order down.
    std::vector<std::map<MultiIndex, GradedScalar>> f(dim);
    for (int level = order; level >= 1; --level) {
      for (const MultiIndex& big : by_order[level]) {
        GradedScalar g = partial(density, field.with_jet(big), Side::left);
        for (int lambda = 0; lambda < dim; ++lambda)
          if (auto it = f[lambda].find(big); it != f[lambda].end()) g -= total_derivative(it->second, lambda);
        if (g.is_zero()) continue;
        for (int lambda = 0; lambda < dim; ++lambda) {
          if (big.count(lambda) == 0) continue;
          f[lambda][big - MultiIndex::single(lambda)] += g * ratio(big.count(lambda), level);
        }
      }
    }
    for (int lambda = 0; lambda < dim; ++lambda) {
      GradedForm omega_l = horizontal_volume(dim, lambda);
      for (const auto& [small, coef] : f[lambda]) {
        if (coef.is_zero()) continue;
        xi += wedge(GradedForm::theta(dim, field.with_jet(small)), wedge(GradedForm(coef), omega_l));
      }
    }
  }
  return xi;
}

GradedForm first_variational_residual(const Lagrangian& lagrangian, const GradedDerivation& upsilon) {
  const int dim = lagrangian.dim();
  GradedForm l = lagrangian.form();
  GradedForm residual = lie_derivative(upsilon, l);
  residual -= interior_product(upsilon.vertical_part(), euler_lagrange(lagrangian).form);
  residual -= d_horizontal(project_contact(interior_product(upsilon, lepage_equivalent(lagrangian)), 0));
  GradedForm contracted = interior_product(upsilon.horizontal_part(), horizontal_volume(dim));
  residual -= wedge(d_vertical(contracted), GradedForm(lagrangian.density()));
  return residual;
}

}  // namespace gvb
