#pragma once

#include <compare>
#include <map>
#include <optional>
#include <vector>

#include "gvb/scalar.hpp"

namespace gvb {

/// A basis one-form: dx^λ (horizontal, even) or θ^A_Λ (contact, parity of s^A).
struct Generator {
  enum Kind : std::uint8_t { horizontal = 0, contact = 1 };

  Kind kind = horizontal;
  std::uint8_t coord = 0;
  Var var;

  static Generator dx(int lambda) {
    Generator g;
    g.coord = static_cast<std::uint8_t>(lambda);
    return g;
  }
  static Generator theta(const Var& v) {
    Generator g;
    g.kind = contact;
    g.var = v;
    return g;
  }
  Parity parity() const { return kind == contact ? var.parity() : Parity::even; }

  auto operator<=>(const Generator&) const = default;
  bool operator==(const Generator&) const = default;
};

/// Canonical wedge word: dx factors sorted by λ, then contact factors by Var
/// order. Even factors occur at most once; odd contact factors may repeat.
using Word = std::vector<Generator>;

Parity word_parity(const Word& w);
int contact_degree(const Word& w);
int horizontal_degree(const Word& w);
/// Sorts a word in place, returning the Koszul sign or 0 if an even factor repeats.
int normalize_word(Word& w);

/// Element of the bigraded form algebra, stored expanded as Σ f·w with the
/// scalar coefficient to the left of the wedge word.
class GradedForm {
 public:
  using TermMap = std::map<Word, GradedScalar>;

  explicit GradedForm(int dim = 0) : dim_(dim) {}
  GradedForm(const GradedScalar& f);  // NOLINT: scalars are 0-forms

  static GradedForm dx(int dim, int lambda);
  static GradedForm theta(int dim, const Var& v);
  static GradedForm word(int dim, const Word& w, const GradedScalar& coefficient);

  int dim() const { return dim_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Adds coefficient·w for an already-canonical word.
  void add_term(const Word& w, const GradedScalar& coefficient);

  GradedForm& operator+=(const GradedForm& other);
  GradedForm& operator-=(const GradedForm& other);
  GradedForm& operator*=(const Rational& c);
  GradedForm operator-() const;

  friend GradedForm operator+(GradedForm a, const GradedForm& b) { return a += b; }
  friend GradedForm operator-(GradedForm a, const GradedForm& b) { return a -= b; }
  friend GradedForm operator*(GradedForm a, const Rational& c) { return a *= c; }
  friend GradedForm operator*(const Rational& c, GradedForm a) { return a *= c; }
  /// g·φ: left multiplication by a 0-form.
  friend GradedForm operator*(const GradedScalar& g, const GradedForm& phi);
  friend bool operator==(const GradedForm& a, const GradedForm& b) {
    return a.terms_ == b.terms_ && (a.dim_ == b.dim_ || a.terms_.empty());
  }

  /// Coefficient of a canonical word (zero if absent).
  GradedScalar coefficient(const Word& w) const;
  /// Returns the 0-form part as a scalar.
  GradedScalar scalar_part() const { return coefficient(Word{}); }

  int max_jet_order() const;
  /// Largest contact / horizontal degree present (-1 for zero).
  int max_contact_degree() const;
  int max_horizontal_degree() const;

  /// Applies a coefficient map to every term.
  GradedForm map_coefficients(const std::function<GradedScalar(const GradedScalar&)>& f) const;

 private:
  void check_dim(const GradedForm& other) const;

  int dim_;
  TermMap terms_;
};

/// Graded wedge product: φ∧φ' = (-1)^{|φ||φ'|+[φ][φ']} φ'∧φ on homogeneous elements.
GradedForm wedge(const GradedForm& a, const GradedForm& b);

/// Projection h_k ∘ h^m onto contact degree k and horizontal degree m.
GradedForm project_bidegree(const GradedForm& phi, int k, int m);
/// Projection onto contact degree k (all horizontal degrees).
GradedForm project_contact(const GradedForm& phi, int k);

/// ω = dx^1∧…∧dx^n, or ω_λ = ∂_λ⌋ω when λ is given.
GradedForm horizontal_volume(int dim, std::optional<int> lambda = std::nullopt);

/// Lie derivative along the total derivative d_λ: acts on coefficients and
/// sends θ^A_Λ to θ^A_{λ+Λ}, dx to 0.
GradedForm total_derivative(const GradedForm& phi, int lambda);
GradedForm total_derivative(const GradedForm& phi, const MultiIndex& multi);

}  // namespace gvb
