#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gvb/derivation.hpp"
#include "gvb/expression.hpp"
#include "gvb/noether.hpp"
#include "gvb/variational.hpp"

namespace gvb {

/// Declared generalized vector field; components keyed by coordinate or field name.
struct SymmetryDecl {
  std::string name;
  Parity parity = Parity::even;
  SourcePos pos;
  std::vector<std::pair<std::string, GradedScalar>> components;
  GradedDerivation derivation;
};

struct FormDecl {
  std::string name;
  SourcePos pos;
  GradedForm value;
};

/// A parsed `.model` file.
///
///     base t x
///     field even A[1]
///     field even B[2] antisymmetric
///     lagrangian = 1/2*(d(A1,t) - d(A0,x))^2
///     identity 0 r = d(bar_A0,t) + d(bar_A1,x)
///     symmetry odd gauge
///     vector gauge A0 = -d(c,t)
///     form phi = d(u,x)*dx(t) - d(u,t)*dx(x)
///     hypothesis regularity
///
/// Lines starting with whitespace continue the previous statement; '#' starts a comment.
struct Model {
  FieldTablePtr table;
  std::unique_ptr<Scope> scope;
  /// Expanded field names in declaration order.
  std::vector<std::string> fields;
  std::optional<Lagrangian> lagrangian;
  std::unique_ptr<NoetherTower> tower;
  std::vector<SymmetryDecl> symmetries;
  std::vector<FormDecl> forms;
  bool regularity = false;

  int dim() const { return table->dim(); }
  const Lagrangian& require_lagrangian() const;
};

struct ModelOptions {
  int max_jet_order = 8;
};

/// Throws ParseError (with line:column) or ModelError.
Model parse_model(const std::string& text, const ModelOptions& options = {});
Model load_model(const std::string& path, const ModelOptions& options = {});

}  // namespace gvb
