#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "gvb/form.hpp"

namespace gvb {

struct SourcePos {
  int line = 1;
  int column = 1;
};

/// Parse or validation failure; what() is prefixed with "line:column: ".
class ParseError : public ModelError {
 public:
  ParseError(const std::string& message, SourcePos pos);
  SourcePos pos() const { return pos_; }
  const std::string& message() const { return message_; }

 private:
  SourcePos pos_;
  std::string message_;
};

/// Syntax tree. '^' is kept as a caret node until evaluation decides between
/// a power (scalar base, integer exponent) and a wedge product.
struct Expr {
  enum class Kind { number, symbol, jet, dx, theta, negate, sum, product, caret };

  Kind kind = Kind::number;
  SourcePos pos;
  Rational value;
  std::string name;
  std::vector<std::string> indices;
  std::vector<std::unique_ptr<Expr>> children;
  /// For sums: +1/-1 per child.
  std::vector<int> signs;
};

using ExprPtr = std::unique_ptr<Expr>;

/// Text with a source position per character, so statements joined from
/// several lines still report accurate positions.
struct SourceText {
  std::string text;
  std::vector<SourcePos> positions;

  static SourceText from_line(const std::string& line, int line_number, int first_column = 1);
  void append(const SourceText& more, char separator = ' ');
  SourcePos at(std::size_t offset) const;
};

/// expr := term (('+'|'-') term)*
/// term := unary ('*' unary)*
/// unary := '-' unary | power
/// power := factor ('^' factor)*
/// factor := rational | ident | 'd(' ident (',' ident)+ ')' | 'dx(' ident ')'
///         | 'theta(' ident (',' ident)* ')' | '(' expr ')'
ExprPtr parse_expression(const SourceText& source);
ExprPtr parse_expression(const std::string& text);

/// Resolves identifiers against a field table. Index families may register
/// aliases such as B10 = -B01 or B00 = 0.
class Scope {
 public:
  explicit Scope(FieldTablePtr table, int max_jet_order = 8) : table_(std::move(table)), max_jet_order_(max_jet_order) {}

  const FieldTablePtr& table() const { return table_; }
  int max_jet_order() const { return max_jet_order_; }

  /// `name` refers to sign·`target` (sign 0: identically zero).
  void add_alias(const std::string& name, const std::string& target, int sign);

  struct Resolved {
    int id = -1;
    int sign = 1;
  };
  /// Field or alias lookup; nullopt if unknown. Names bar_<alias> follow the alias.
  std::optional<Resolved> resolve(const std::string& name) const;

 private:
  FieldTablePtr table_;
  int max_jet_order_;
  std::map<std::string, std::pair<std::string, int>> aliases_;
};

/// Evaluates and validates: undeclared symbols, odd squares, jet order bound,
/// '*' between two forms of positive degree.
GradedForm evaluate(const Expr& expr, const Scope& scope);
GradedScalar evaluate_scalar(const Expr& expr, const Scope& scope);

GradedForm parse_form(const std::string& text, const Scope& scope);
GradedScalar parse_scalar(const std::string& text, const Scope& scope);

std::string var_name(const FieldTable& table, const Var& v);
std::string to_string(const FieldTable& table, const GradedScalar& f);
std::string to_string(const FieldTable& table, const GradedForm& phi);

}  // namespace gvb
