#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "gvb/form.hpp"

namespace gvb {

/// Bounded random generators for property tests.
class Sampler {
 public:
  Sampler(int dim, std::uint64_t seed) : dim_(dim), rng_(seed) {}

  int dim() const { return dim_; }

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin() { return uniform(0, 1) == 1; }
  Rational rational() {
    int num = uniform(-4, 4);
    if (num == 0) num = 1;
    return ratio(num, uniform(1, 3));
  }
  MultiIndex multi_index(int max_order) {
    int order = uniform(0, max_order);
    std::vector<int> dirs;
    for (int i = 0; i < order; ++i) dirs.push_back(uniform(0, dim_ - 1));
    return MultiIndex::from_directions(dirs);
  }
  Var jet_var(const std::vector<Var>& fields, int max_order) {
    return fields[static_cast<std::size_t>(uniform(0, static_cast<int>(fields.size()) - 1))].with_jet(multi_index(max_order));
  }

  /// Random polynomial in the given fields' jets and (optionally) base coordinates.
  GradedScalar scalar(const std::vector<Var>& fields, int max_order, int max_degree, int max_terms,
                      bool coordinates = true) {
    GradedScalar r(dim_);
    int terms = uniform(1, max_terms);
    for (int t = 0; t < terms; ++t) {
      GradedScalar mono = GradedScalar::constant(dim_, rational());
      int degree = uniform(0, max_degree);
      for (int k = 0; k < degree; ++k) {
        if (coordinates && uniform(0, 4) == 0)
          mono = mono * GradedScalar::coordinate(dim_, uniform(0, dim_ - 1));
        else
          mono = mono * GradedScalar::variable(dim_, jet_var(fields, max_order));
      }
      r += mono;
    }
    return r;
  }

  /// Scalar of fixed parity (terms of the wrong parity are dropped).
  GradedScalar scalar_of(Parity p, const std::vector<Var>& fields, int max_order, int max_degree, int max_terms,
                         bool coordinates = true) {
    for (int attempt = 0; attempt < 20; ++attempt) {
      GradedScalar s = scalar(fields, max_order, max_degree, max_terms, coordinates).parity_part(p);
      if (!s.is_zero()) return s;
    }
    return p == Parity::even ? GradedScalar::constant(dim_, Rational(1)) : GradedScalar::variable(dim_, odd_var(fields));
  }

  /// Random form with up to `max_contact` contact and `max_horizontal` horizontal factors per term.
  GradedForm form(const std::vector<Var>& fields, int max_order, int max_degree, int max_terms, int max_contact,
                  int max_horizontal) {
    GradedForm r(dim_);
    int terms = uniform(1, max_terms);
    for (int t = 0; t < terms; ++t) {
      GradedForm term(scalar(fields, max_order, max_degree, 2));
      int k = uniform(0, max_contact);
      for (int i = 0; i < k; ++i) term = wedge(term, GradedForm::theta(dim_, jet_var(fields, max_order)));
      int h = uniform(0, std::min(max_horizontal, dim_));
      for (int i = 0; i < h; ++i) term = wedge(term, GradedForm::dx(dim_, uniform(0, dim_ - 1)));
      r += term;
    }
    return r;
  }

  /// Form of exact bidegree (k, m), if the random draw does not cancel.
  GradedForm form_bidegree(const std::vector<Var>& fields, int max_order, int max_degree, int max_terms, int k, int m) {
    GradedForm r(dim_);
    int terms = uniform(1, max_terms);
    for (int t = 0; t < terms; ++t) {
      GradedForm term(scalar(fields, max_order, max_degree, 2));
      for (int i = 0; i < k; ++i) term = wedge(term, GradedForm::theta(dim_, jet_var(fields, max_order)));
      std::vector<int> dirs(static_cast<std::size_t>(dim_));
      for (int i = 0; i < dim_; ++i) dirs[static_cast<std::size_t>(i)] = i;
      std::shuffle(dirs.begin(), dirs.end(), rng_);
      for (int i = 0; i < m; ++i) term = wedge(term, GradedForm::dx(dim_, dirs[static_cast<std::size_t>(i)]));
      r += term;
    }
    return r;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  Var odd_var(const std::vector<Var>& fields) {
    for (const Var& v : fields)
      if (v.odd) return v;
    return fields.front();
  }

  int dim_;
  std::mt19937_64 rng_;
};

}  // namespace gvb
