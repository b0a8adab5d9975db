#include "gvb/form.hpp"

#include <algorithm>

namespace gvb {

Parity word_parity(const Word& w) {
  Parity p = Parity::even;
  for (const auto& g : w) p = p + g.parity();
  return p;
}

int contact_degree(const Word& w) {
  return static_cast<int>(std::count_if(w.begin(), w.end(), [](const Generator& g) { return g.kind == Generator::contact; }));
}

int horizontal_degree(const Word& w) { return static_cast<int>(w.size()) - contact_degree(w); }

int normalize_word(Word& w) {
  int sign = 1;
  // Swapping adjacent one-forms a,b costs (-1)^{1 + [a][b]}.
  for (std::size_t i = 1; i < w.size(); ++i) {
    for (std::size_t j = i; j > 0 && w[j] < w[j - 1]; --j) {
      if (!(is_odd(w[j].parity()) && is_odd(w[j - 1].parity()))) sign = -sign;
      std::swap(w[j], w[j - 1]);
    }
  }
  for (std::size_t i = 1; i < w.size(); ++i)
    if (w[i] == w[i - 1] && !is_odd(w[i].parity())) return 0;
  return sign;
}

GradedForm::GradedForm(const GradedScalar& f) : dim_(f.dim()) {
  if (!f.is_zero()) terms_.emplace(Word{}, f);
}

GradedForm GradedForm::dx(int dim, int lambda) {
  if (lambda < 0 || lambda >= dim) throw DimensionError("dx index out of range");
  return word(dim, Word{Generator::dx(lambda)}, GradedScalar::constant(dim, Rational(1)));
}

GradedForm GradedForm::theta(int dim, const Var& v) {
  if (v.is_coordinate()) throw Error("contact form requires a jet variable");
  return word(dim, Word{Generator::theta(v)}, GradedScalar::constant(dim, Rational(1)));
}

GradedForm GradedForm::word(int dim, const Word& w, const GradedScalar& coefficient) {
  GradedForm f(dim);
  Word canon = w;
  int sign = normalize_word(canon);
  if (sign == 0) return f;
  f.add_term(canon, sign < 0 ? -coefficient : coefficient);
  return f;
}

void GradedForm::check_dim(const GradedForm& other) const {
  if ((dim_ == 0 && terms_.empty()) || (other.dim_ == 0 && other.terms_.empty())) return;
  if (dim_ != other.dim_) throw DimensionError("base dimension mismatch between forms");
}

void GradedForm::add_term(const Word& w, const GradedScalar& coefficient) {
  if (coefficient.is_zero()) return;
  if (dim_ == 0 && terms_.empty()) dim_ = coefficient.dim();
  if (coefficient.dim() != dim_) throw DimensionError("coefficient dimension mismatch");
  auto [it, inserted] = terms_.try_emplace(w, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

GradedForm& GradedForm::operator+=(const GradedForm& other) {
  check_dim(other);
  if (dim_ == 0) dim_ = other.dim_;
  for (const auto& [w, c] : other.terms_) add_term(w, c);
  return *this;
}

GradedForm& GradedForm::operator-=(const GradedForm& other) {
  check_dim(other);
  if (dim_ == 0) dim_ = other.dim_;
  for (const auto& [w, c] : other.terms_) add_term(w, -c);
  return *this;
}

GradedForm& GradedForm::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, coef] : terms_) coef *= c;
  return *this;
}

GradedForm GradedForm::operator-() const {
  GradedForm r = *this;
  r *= Rational(-1);
  return r;
}

GradedForm operator*(const GradedScalar& g, const GradedForm& phi) {
  if (g.dim() != phi.dim()) throw DimensionError("base dimension mismatch");
  GradedForm r(phi.dim());
  for (const auto& [w, c] : phi.terms()) r.add_term(w, g * c);
  return r;
}

GradedScalar GradedForm::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? GradedScalar(dim_) : it->second;
}

int GradedForm::max_jet_order() const {
  int r = -1;
  for (const auto& [w, c] : terms_) {
    r = std::max(r, c.max_jet_order());
    for (const auto& g : w)
      if (g.kind == Generator::contact) r = std::max(r, g.var.jet.order());
  }
  return r;
}

int GradedForm::max_contact_degree() const {
  int r = -1;
  for (const auto& [w, c] : terms_) r = std::max(r, contact_degree(w));
  return r;
}

int GradedForm::max_horizontal_degree() const {
  int r = -1;
  for (const auto& [w, c] : terms_) r = std::max(r, horizontal_degree(w));
  return r;
}

GradedForm GradedForm::map_coefficients(const std::function<GradedScalar(const GradedScalar&)>& f) const {
  GradedForm r(dim_);
  for (const auto& [w, c] : terms_) r.add_term(w, f(c));
  return r;
}

GradedForm wedge(const GradedForm& a, const GradedForm& b) {
  if (a.dim() != b.dim()) throw DimensionError("base dimension mismatch in wedge");
  GradedForm r(a.dim());
  for (const auto& [wa, fa] : a.terms()) {
    bool odd_word = is_odd(word_parity(wa));
    for (const auto& [wb, fb] : b.terms()) {
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      int sign = normalize_word(w);
      if (sign == 0) continue;
      // (fa wa)(fb wb) = fa (wa fb) wb = (-1)^{[wa][fb]} fa fb wa wb
      GradedScalar moved = odd_word ? parity_twist(fb) : fb;
      GradedScalar coef = fa * moved;
      r.add_term(w, sign < 0 ? -coef : coef);
    }
  }
  return r;
}

GradedForm project_bidegree(const GradedForm& phi, int k, int m) {
  GradedForm r(phi.dim());
  for (const auto& [w, c] : phi.terms())
    if (contact_degree(w) == k && horizontal_degree(w) == m) r.add_term(w, c);
  return r;
}

GradedForm project_contact(const GradedForm& phi, int k) {
  GradedForm r(phi.dim());
  for (const auto& [w, c] : phi.terms())
    if (contact_degree(w) == k) r.add_term(w, c);
  return r;
}

GradedForm horizontal_volume(int dim, std::optional<int> lambda) {
  Word w;
  int sign = 1;
  for (int i = 0; i < dim; ++i) {
    if (lambda && *lambda == i) {
      // ∂_λ⌋ moves past i even one-forms before reaching dx^λ.
      sign = (i & 1) ? -1 : 1;
      continue;
    }
    w.push_back(Generator::dx(i));
  }
  if (lambda && (*lambda < 0 || *lambda >= dim)) throw DimensionError("volume index out of range");
  return GradedForm::word(dim, w, GradedScalar::constant(dim, Rational(sign)));
}

GradedForm total_derivative(const GradedForm& phi, int lambda) {
  GradedForm r(phi.dim());
  for (const auto& [w, c] : phi.terms()) {
    r.add_term(w, total_derivative(c, lambda));
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (w[i].kind != Generator::contact) continue;
      Word shifted = w;
      shifted[i].var = w[i].var.shifted(lambda);
      int sign = normalize_word(shifted);
      if (sign == 0) continue;
      r.add_term(shifted, sign < 0 ? -c : c);
    }
  }
  return r;
}

GradedForm total_derivative(const GradedForm& phi, const MultiIndex& multi) {
  GradedForm r = phi;
  for (int dir : multi.directions()) r = total_derivative(r, dir);
  return r;
}

}  // namespace gvb
