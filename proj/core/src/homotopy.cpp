#include "gvb/homotopy.hpp"

#include <set>

namespace gvb {

namespace {

/// Barred copies s̄^A_Λ live at field ids shifted by this offset.
constexpr int kBarOffset = 16384;

Var bar(const Var& v) {
  Var b = v;
  b.field = static_cast<std::int16_t>(v.field + kBarOffset);
  return b;
}
bool is_bar(const Var& v) { return v.field >= kBarOffset; }
Var unbar(const Var& v) {
  Var b = v;
  b.field = static_cast<std::int16_t>(v.field - kBarOffset);
  return b;
}

bool horizontal_only(const GradedForm& phi) { return phi.max_contact_degree() <= 0; }

/// Σ_{Ξ+Σ=Γ-μ} weight for the integration-by-parts antiderivative of a density.
Rational split_weight(const MultiIndex& gamma, const MultiIndex& xi, const MultiIndex& sigma) {
  Rational w = factorial(static_cast<unsigned>(xi.order())) * factorial(static_cast<unsigned>(sigma.order())) /
               (xi.factorial() * sigma.factorial());
  return w * gamma.factorial() / factorial(static_cast<unsigned>(gamma.order()));
}

GradedScalar volume_coefficient(const GradedForm& phi) {
  Word omega;
  for (int i = 0; i < phi.dim(); ++i) omega.push_back(Generator::dx(i));
  for (const auto& [w, c] : phi.terms())
    if (w != omega) throw BidegreeError("expected a horizontal density f·ω");
  return phi.coefficient(omega);
}

void require_density_trivial(const GradedForm& phi) {
  GradedScalar f = volume_coefficient(phi);
  std::set<Var> bases;
  for (const Var& v : f.variables()) bases.insert(v.with_jet({}));
  auto el = euler_lagrange(f, std::vector<Var>(bases.begin(), bases.end()));
  if (!el.form.is_zero()) throw HomotopyError("density is not variationally trivial", el.form);
}

}  // namespace

FiberSplit fiber_decompose(const GradedForm& phi) {
  FiberSplit split{GradedForm(phi.dim()), GradedForm(phi.dim())};
  for (const auto& [w, c] : phi.terms()) {
    GradedScalar base = jet_free_part(c);
    split.base.add_term(w, base);
    split.fiber.add_term(w, c - base);
  }
  return split;
}

GradedScalar lowering(const GradedScalar& f, int nu) {
  GradedScalar r(f.dim());
  for (const Var& w : f.variables()) {
    int count = w.jet.count(nu);
    if (count == 0) continue;
    GradedScalar s = GradedScalar::variable(f.dim(), w.with_jet(w.jet - MultiIndex::single(nu)));
    r += s * partial(f, w, Side::left) * Rational(count);
  }
  return r;
}

GradedScalar lowering_plus(const GradedScalar& f, int nu) { return lowering(divide_by_jet_degree(f), nu); }

GradedForm radial_antiderivative(const GradedForm& phi0) {
  const int dim = phi0.dim();
  GradedForm out(dim);
  for (const auto& [w, c] : phi0.terms()) {
    if (!horizontal_only(phi0)) throw BidegreeError("radial homotopy acts on base forms");
    if (c.depends_on_jets()) throw Error("radial homotopy requires jet-free coefficients");
    for (const auto& [m, q] : c.terms()) {
      int degree = 0;
      for (const auto& [v, p] : m.even) degree += p;
      int total = degree + static_cast<int>(w.size());
      if (total == 0) throw NotExactError("a nonzero constant 0-form is not exact");
      GradedScalar mono = monomial_scalar(dim, m, q * ratio(1, total));
      for (std::size_t j = 0; j < w.size(); ++j) {
        Word rest = w;
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(j));
        GradedScalar coef = mono * GradedScalar::coordinate(dim, w[j].coord);
        if (j & 1) coef = -coef;
        out += GradedForm::word(dim, rest, coef);
      }
    }
  }
  return out;
}

Antiderivative homotopy_horizontal(const GradedForm& phi) {
  const int dim = phi.dim();
  if (!horizontal_only(phi)) throw BidegreeError("horizontal homotopy needs a (0,m)-form");
  int m = phi.max_horizontal_degree();
  Antiderivative out{GradedForm(dim), GradedForm(dim)};
  if (phi.is_zero()) return out;
  for (const auto& [w, c] : phi.terms())
    if (static_cast<int>(w.size()) != m) throw BidegreeError("horizontal homotopy needs a homogeneous degree");
  if (m == 0) throw BidegreeError("horizontal homotopy needs m > 0");
  // Top degree: closedness is automatic and exactness is variational triviality.
  if (m == dim) return homotopy_density(phi);
  GradedForm closure = d_horizontal(phi);
  if (!closure.is_zero()) throw HomotopyError("form is not d_H-closed", closure);

  FiberSplit split = fiber_decompose(phi);
  out.base = radial_antiderivative(split.base);

  Rational numerator = factorial(static_cast<unsigned>(dim - m - 1));
  for (int nu = 0; nu < dim; ++nu) {
    GradedForm contracted = interior_product(GradedDerivation::coordinate_vector(dim, nu), split.fiber);
    for (int k = 0;; ++k) {
      // P_k = Σ_{|Λ|=k} (k!/Λ!) d_Λ D^{+Λ}
      GradedForm pk(dim);
      for (const MultiIndex& lam : MultiIndex::all_up_to(dim, k)) {
        if (lam.order() != k) continue;
        Rational mult = factorial(static_cast<unsigned>(k)) / lam.factorial();
        GradedForm term = contracted.map_coefficients([&](const GradedScalar& g) {
          GradedScalar h = g;
          for (int dir : lam.directions()) h = lowering_plus(h, dir);
          return total_derivative(h, lam) * mult;
        });
        pk += term;
      }
      if (pk.is_zero()) break;
      Rational weight = numerator / factorial(static_cast<unsigned>(dim - m + k));
      if (k & 1) weight = -weight;
      out.fiber += pk.map_coefficients([&](const GradedScalar& g) { return lowering_plus(g, nu) * weight; });
    }
  }
  return out;
}

Antiderivative homotopy_density(const GradedForm& phi) {
  const int dim = phi.dim();
  Antiderivative out{GradedForm(dim), GradedForm(dim)};
  if (phi.is_zero()) return out;
  require_density_trivial(phi);
  FiberSplit split = fiber_decompose(phi);
  out.base = radial_antiderivative(split.base);
  GradedScalar f = volume_coefficient(split.fiber);

  std::vector<GradedScalar> current(static_cast<std::size_t>(dim), GradedScalar(dim));
  for (const Var& v : f.variables()) {
    const MultiIndex& gamma = v.jet;
    GradedScalar dfv = partial(f, v, Side::left);
    for (int mu = 0; mu < dim; ++mu) {
      if (gamma.count(mu) == 0) continue;
      MultiIndex rest = gamma - MultiIndex::single(mu);
      for (const MultiIndex& sigma : rest.submultisets()) {
        MultiIndex xi = rest - sigma;
        Rational w = split_weight(gamma, xi, sigma);
        if (sigma.order() & 1) w = -w;
        current[static_cast<std::size_t>(mu)] +=
            GradedScalar::variable(dim, v.with_jet(xi)) * total_derivative(dfv, sigma) * w;
      }
    }
  }
  for (int mu = 0; mu < dim; ++mu)
    out.fiber += wedge(GradedForm(divide_by_jet_degree(current[static_cast<std::size_t>(mu)])),
                       horizontal_volume(dim, mu));
  return out;
}

Antiderivative homotopy_olver(const GradedForm& phi) {
  const int dim = phi.dim();
  Antiderivative out{GradedForm(dim), GradedForm(dim)};
  if (phi.is_zero()) return out;
  require_density_trivial(phi);
  FiberSplit split = fiber_decompose(phi);
  out.base = radial_antiderivative(split.base);
  // ∂_μ⌋(fω) = f ω_μ, so the inner contraction only contributes the coefficient.
  GradedScalar f = volume_coefficient(split.fiber);

  std::vector<GradedScalar> image(static_cast<std::size_t>(dim), GradedScalar(dim));
  for (const Var& v : f.variables()) {
    GradedScalar dfv = partial(f, v, Side::left);
    GradedScalar s = GradedScalar::variable(dim, v.with_jet({}));
    for (int mu = 0; mu < dim; ++mu) {
      if (v.jet.count(mu) == 0) continue;
      MultiIndex rest = v.jet - MultiIndex::single(mu);
      for (const MultiIndex& lam : rest.submultisets()) {
        MultiIndex xi = rest - lam;
        MultiIndex mu_lam = lam.plus(mu);
        Rational c = ratio(lam.count(mu) + 1, lam.order() + 1) * v.jet.factorial() / (mu_lam.factorial() * xi.factorial());
        if (xi.order() & 1) c = -c;
        image[static_cast<std::size_t>(mu)] += total_derivative(s * total_derivative(dfv, xi), lam) * c;
      }
    }
  }
  for (int mu = 0; mu < dim; ++mu)
    out.fiber += wedge(GradedForm(divide_by_jet_degree(image[static_cast<std::size_t>(mu)])),
                       horizontal_volume(dim, mu));
  return out;
}

GradedForm homotopy_contact(const GradedForm& phi) {
  const int dim = phi.dim();
  if (phi.is_zero()) return GradedForm(dim);
  GradedForm closure = d_horizontal(phi);
  if (!closure.is_zero()) throw HomotopyError("form is not d_H-closed", closure);

  // φ = Σ f w θ_v  ↦  φ̄ = Σ f s̄_v w
  GradedForm barred(dim);
  for (const auto& [w, c] : phi.terms()) {
    if (contact_degree(w) != 1) throw BidegreeError("contact homotopy needs a (1,m)-form");
    Word horizontal;
    Var contact;
    for (const auto& g : w) {
      if (g.kind == Generator::contact)
        contact = g.var;
      else
        horizontal.push_back(g);
    }
    barred.add_term(horizontal, c * GradedScalar::variable(dim, bar(contact)));
  }
  GradedForm xi_bar = homotopy_horizontal(barred).total();

  GradedForm xi(dim);
  for (const auto& [w, c] : xi_bar.terms()) {
    for (const Var& v : c.variables()) {
      if (!is_bar(v)) continue;
      GradedScalar coef = partial(c, v, Side::right);
      Word full = w;
      full.push_back(Generator::theta(unbar(v)));
      xi += GradedForm::word(dim, full, coef);
    }
  }
  return xi;
}

GradedForm homotopy_rho_kernel(const GradedForm& sigma) {
  const int dim = sigma.dim();
  GradedForm xi(dim);
  if (sigma.is_zero()) return xi;
  GradedForm image = rho_projector(sigma);
  if (!image.is_zero()) throw HomotopyError("form is not in the kernel of ρ", image);
  std::set<Var> contact;
  for (const auto& [w, c] : sigma.terms())
    for (const auto& g : w)
      if (g.kind == Generator::contact) contact.insert(g.var);
  for (const Var& v : contact) {
    const MultiIndex& gamma = v.jet;
    GradedScalar coef = volume_coefficient(interior_product(GradedDerivation::jet_vector(dim, v), sigma));
    for (int mu = 0; mu < dim; ++mu) {
      if (gamma.count(mu) == 0) continue;
      MultiIndex rest = gamma - MultiIndex::single(mu);
      for (const MultiIndex& sig : rest.submultisets()) {
        MultiIndex xi_index = rest - sig;
        Rational w = -split_weight(gamma, xi_index, sig);
        if (sig.order() & 1) w = -w;
        xi += wedge(GradedForm::theta(dim, v.with_jet(xi_index)),
                    wedge(GradedForm(total_derivative(coef, sig) * w), horizontal_volume(dim, mu)));
      }
    }
  }
  return xi;
}

}  // namespace gvb
