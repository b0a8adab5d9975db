#include "gvb/derivation.hpp"

namespace gvb {

GradedDerivation::GradedDerivation(int dim, Parity parity) : dim_(dim), parity_(parity) {}

GradedDerivation GradedDerivation::prolonged(int dim, Parity parity, std::vector<GradedScalar> horizontal,
                                             std::map<Var, GradedScalar> vertical) {
  GradedDerivation d(dim, parity);
  d.prolonged_ = true;
  if (horizontal.empty()) horizontal.assign(dim, GradedScalar(dim));
  if (static_cast<int>(horizontal.size()) != dim) throw DimensionError("horizontal coefficient count must equal base dimension");
  d.upsilon_h_ = std::move(horizontal);
  for (auto& [v, c] : vertical) {
    if (v.is_coordinate() || !v.jet.empty()) throw Error("vertical components are keyed by undifferentiated fields");
    if (!c.is_zero()) d.upsilon_v_.emplace(v, std::move(c));
  }
  return d;
}

GradedDerivation GradedDerivation::coordinate_vector(int dim, int lambda) {
  if (lambda < 0 || lambda >= dim) throw DimensionError("coordinate vector index out of range");
  std::vector<GradedScalar> h(dim, GradedScalar(dim));
  h[lambda] = GradedScalar::constant(dim, Rational(1));
  return prolonged(dim, Parity::even, std::move(h), {});
}

GradedDerivation GradedDerivation::jet_vector(int dim, const Var& v) {
  GradedDerivation d(dim, v.parity());
  d.upsilon_h_.assign(dim, GradedScalar(dim));
  d.explicit_.emplace(v, GradedScalar::constant(dim, Rational(1)));
  return d;
}

GradedScalar GradedDerivation::horizontal_coefficient(int lambda) const {
  if (!horizontal_on_ || upsilon_h_.empty()) return GradedScalar(dim_);
  return upsilon_h_.at(lambda);
}

GradedScalar GradedDerivation::characteristic(const Var& v) const {
  Var base = v.with_jet({});
  GradedScalar c(dim_);
  if (auto it = upsilon_v_.find(base); it != upsilon_v_.end()) c = it->second;
  for (int mu = 0; mu < dim_; ++mu) {
    if (upsilon_h_[mu].is_zero()) continue;
    c -= GradedScalar::variable(dim_, base.shifted(mu)) * upsilon_h_[mu];
  }
  return c;
}

GradedScalar GradedDerivation::contact_coefficient(const Var& v) const {
  if (!prolonged_) {
    auto it = explicit_.find(v);
    return it == explicit_.end() ? GradedScalar(dim_) : it->second;
  }
  if (!vertical_on_) return GradedScalar(dim_);
  return total_derivative(characteristic(v), v.jet);
}

GradedDerivation GradedDerivation::horizontal_part() const {
  GradedDerivation d(dim_, parity_);
  d.upsilon_h_ = horizontal_on_ ? upsilon_h_ : std::vector<GradedScalar>(dim_, GradedScalar(dim_));
  return d;
}

GradedDerivation GradedDerivation::vertical_part() const {
  if (!prolonged_) throw Error("vertical part is defined for prolonged derivations");
  GradedDerivation d = *this;
  d.horizontal_on_ = false;
  return d;
}

bool GradedDerivation::is_projectable() const {
  for (const auto& c : upsilon_h_)
    if (c.depends_on_jets()) return false;
  return true;
}

GradedScalar GradedDerivation::apply(const GradedScalar& f) const {
  GradedScalar r(dim_);
  for (int lambda = 0; lambda < dim_; ++lambda) {
    GradedScalar h = horizontal_coefficient(lambda);
    if (!h.is_zero()) r += h * total_derivative(f, lambda);
  }
  for (const Var& v : f.variables()) {
    GradedScalar k = contact_coefficient(v);
    if (!k.is_zero()) r += k * partial(f, v, Side::left);
  }
  return r;
}

GradedForm interior_product(const GradedDerivation& u, const GradedForm& phi) {
  const int dim = phi.dim();
  const bool u_odd = is_odd(u.parity());
  GradedForm out(dim);
  for (const auto& [w, f] : phi.terms()) {
    GradedForm contracted(dim);
    int sign = 1;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const Generator& g = w[i];
      GradedScalar c = g.kind == Generator::horizontal ? u.horizontal_coefficient(g.coord) : u.contact_coefficient(g.var);
      if (!c.is_zero()) {
        Word prefix(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
        Word suffix(w.begin() + static_cast<std::ptrdiff_t>(i) + 1, w.end());
        GradedScalar one = GradedScalar::constant(dim, Rational(1));
        GradedForm term = wedge(wedge(GradedForm::word(dim, prefix, one), GradedForm(c)), GradedForm::word(dim, suffix, one));
        if (sign < 0) term *= Rational(-1);
        contracted += term;
      }
      // Passing u⌋ across g costs (-1)^{1 + [g][u]}.
      if (!(u_odd && is_odd(g.parity()))) sign = -sign;
    }
    out += (u_odd ? parity_twist(f) : f) * contracted;
  }
  return out;
}

}  // namespace gvb
