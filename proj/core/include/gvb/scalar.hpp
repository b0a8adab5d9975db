#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "gvb/rational.hpp"
#include "gvb/symbols.hpp"

namespace gvb {

/// Product of even powers and an ordered word of distinct odd variables.
///
/// Even factors commute with everything, so they are kept as a sorted
/// exponent list. The odd word is kept strictly increasing in Var order;
/// any reordering sign lives in the owning coefficient.
struct Monomial {
  std::vector<std::pair<Var, std::uint16_t>> even;
  std::vector<Var> odd;

  Parity parity() const { return (odd.size() & 1) ? Parity::odd : Parity::even; }
  /// Total degree in jet variables (base coordinates excluded).
  int jet_degree() const;
  bool is_unit() const { return even.empty() && odd.empty(); }

  auto operator<=>(const Monomial&) const = default;
  bool operator==(const Monomial&) const = default;
};

enum class Side { left, right };

/// Exact polynomial in base coordinates and graded jet variables.
class GradedScalar {
 public:
  using TermMap = std::map<Monomial, Rational>;

  explicit GradedScalar(int dim = 0) : dim_(dim) {}

  static GradedScalar constant(int dim, const Rational& c);
  static GradedScalar variable(int dim, const Var& v);
  static GradedScalar coordinate(int dim, int lambda) { return variable(dim, Var::coordinate(lambda)); }

  int dim() const { return dim_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Parity if every monomial agrees, nullopt for mixed (zero counts as even).
  std::optional<Parity> parity() const;
  /// Constant term (coefficient of the unit monomial).
  Rational constant_term() const;
  int max_jet_order() const;
  /// Set of jet variables (not coordinates) occurring in the scalar.
  std::set<Var> variables() const;
  bool depends_on_jets() const;

  /// Adds c·m, where m's odd word is already canonical.
  void add_term(const Monomial& m, const Rational& c);

  GradedScalar& operator+=(const GradedScalar& other);
  GradedScalar& operator-=(const GradedScalar& other);
  GradedScalar& operator*=(const Rational& c);
  GradedScalar operator-() const;

  friend GradedScalar operator+(GradedScalar a, const GradedScalar& b) { return a += b; }
  friend GradedScalar operator-(GradedScalar a, const GradedScalar& b) { return a -= b; }
  friend GradedScalar operator*(const GradedScalar& a, const GradedScalar& b);
  friend GradedScalar operator*(GradedScalar a, const Rational& c) { return a *= c; }
  friend GradedScalar operator*(const Rational& c, GradedScalar a) { return a *= c; }
  friend bool operator==(const GradedScalar& a, const GradedScalar& b) {
    return a.terms_ == b.terms_ && (a.dim_ == b.dim_ || a.terms_.empty());
  }

  /// Keeps only monomials of the given parity.
  GradedScalar parity_part(Parity p) const;
  /// Applies `f` to every (monomial, coefficient) and sums the results.
  GradedScalar map_terms(const std::function<GradedScalar(const Monomial&, const Rational&)>& f) const;

 private:
  void check_dim(const GradedScalar& other) const;

  int dim_;
  TermMap terms_;
};

/// Multiplies two monomials; returns the sign (0 when an odd square appears).
int multiply_monomials(const Monomial& a, const Monomial& b, Monomial& out);

/// Single-monomial scalar.
GradedScalar monomial_scalar(int dim, const Monomial& m, const Rational& c);

/// Left (or right) graded partial derivative with respect to `v`.
GradedScalar partial(const GradedScalar& f, const Var& v, Side side = Side::left);

/// Total derivative d_λ = ∂_λ + Σ s^A_{λ+Λ} ∂^Λ_A.
GradedScalar total_derivative(const GradedScalar& f, int lambda);
/// d_Λ = d_{λ1} ∘ ... ∘ d_{λk}.
GradedScalar total_derivative(const GradedScalar& f, const MultiIndex& multi);

/// Multiplies each monomial of jet degree k by weight(k).
GradedScalar scale_by_jet_degree(const GradedScalar& f, const std::function<Rational(int)>& weight);
/// Weight 1/k, the value of ∫₀¹ λ^{k-1} dλ. Throws DivisionByZeroError on a jet-free part.
GradedScalar divide_by_jet_degree(const GradedScalar& f);
/// Part with no jet variables (depends on base coordinates only).
GradedScalar jet_free_part(const GradedScalar& f);

/// Negates the odd monomials: the sign picked up when f moves past an odd factor.
GradedScalar parity_twist(const GradedScalar& f);

/// Replaces each base coordinate by zero.
GradedScalar at_origin(const GradedScalar& f);

}  // namespace gvb
