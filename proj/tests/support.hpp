#pragma once

#include <memory>
#include <random>
#include <string>
#include <vector>

#include "gvb/derivation.hpp"
#include "gvb/form.hpp"
#include "gvb/sampling.hpp"
#include "gvb/scalar.hpp"
#include "gvb/symbols.hpp"

namespace gvb::testing {

/// Small builder so tests read close to the math.
class Model {
 public:
  explicit Model(std::vector<std::string> coords) : table(std::make_shared<FieldTable>(std::move(coords))) {}

  Var add(const std::string& name, Parity p, FieldKind kind = FieldKind::field, int stage = -1) {
    FieldDecl d;
    d.name = name;
    d.parity = p;
    d.kind = kind;
    d.stage = stage;
    return table->var(table->add(d));
  }
  int dim() const { return table->dim(); }

  MultiIndex jet(const std::vector<std::string>& dirs) const {
    std::vector<int> idx;
    for (const auto& d : dirs) idx.push_back(*table->find_coordinate(d));
    return MultiIndex::from_directions(idx);
  }
  Var var(const std::string& name, const std::vector<std::string>& dirs = {}) const { return table->var(name, jet(dirs)); }
  GradedScalar s(const std::string& name, const std::vector<std::string>& dirs = {}) const {
    return GradedScalar::variable(dim(), var(name, dirs));
  }
  GradedScalar x(const std::string& coord) const { return GradedScalar::coordinate(dim(), *table->find_coordinate(coord)); }
  GradedScalar c(long num, long den = 1) const { return GradedScalar::constant(dim(), ratio(num, den)); }
  GradedForm dx(const std::string& coord) const { return GradedForm::dx(dim(), *table->find_coordinate(coord)); }
  GradedForm theta(const std::string& name, const std::vector<std::string>& dirs = {}) const {
    return GradedForm::theta(dim(), var(name, dirs));
  }
  GradedForm omega() const { return horizontal_volume(dim()); }

  FieldTablePtr table;
};

/// Sampler bound to a test model.
class Random : public Sampler {
 public:
  Random(const Model& m, std::uint64_t seed) : Sampler(m.dim(), seed) {}
};

}  // namespace gvb::testing
