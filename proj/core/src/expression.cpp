#include "gvb/expression.hpp"

#include <cctype>

namespace gvb {

ParseError::ParseError(const std::string& message, SourcePos pos)
    : ModelError(std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " + message),
      pos_(pos),
      message_(message) {}

SourceText SourceText::from_line(const std::string& line, int line_number, int first_column) {
  SourceText s;
  s.text = line;
  for (std::size_t i = 0; i < line.size(); ++i)
    s.positions.push_back({line_number, first_column + static_cast<int>(i)});
  return s;
}

void SourceText::append(const SourceText& more, char separator) {
  SourcePos sep = more.positions.empty() ? at(text.size()) : more.positions.front();
  text.push_back(separator);
  positions.push_back(sep);
  text += more.text;
  positions.insert(positions.end(), more.positions.begin(), more.positions.end());
}

SourcePos SourceText::at(std::size_t offset) const {
  if (offset < positions.size()) return positions[offset];
  if (positions.empty()) return {};
  SourcePos p = positions.back();
  p.column += static_cast<int>(offset - positions.size()) + 1;
  return p;
}

namespace {

struct Token {
  enum class Kind { ident, number, op, end };
  Kind kind = Kind::end;
  std::string text;
  SourcePos pos;
};

std::vector<Token> lex(const SourceText& src) {
  std::vector<Token> out;
  const std::string& s = src.text;
  std::size_t i = 0;
  while (i < s.size()) {
    unsigned char ch = static_cast<unsigned char>(s[i]);
    if (std::isspace(ch)) {
      ++i;
      continue;
    }
    Token t;
    t.pos = src.at(i);
    if (std::isalpha(ch) || ch == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      t.kind = Token::Kind::ident;
      t.text = s.substr(i, j - i);
      i = j;
    } else if (std::isdigit(ch)) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      t.kind = Token::Kind::number;
      t.text = s.substr(i, j - i);
      i = j;
    } else if (std::string("+-*^/(),").find(static_cast<char>(ch)) != std::string::npos) {
      t.kind = Token::Kind::op;
      t.text = std::string(1, static_cast<char>(ch));
      ++i;
    } else {
      throw ParseError(std::string("unexpected character '") + static_cast<char>(ch) + "'", t.pos);
    }
    out.push_back(t);
  }
  Token end;
  end.pos = src.at(s.size());
  out.push_back(end);
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  ExprPtr parse() {
    ExprPtr e = expr();
    if (peek().kind != Token::Kind::end) throw ParseError("unexpected '" + peek().text + "'", peek().pos);
    return e;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  Token next() { return tokens_[pos_++]; }
  bool is_op(const char* op) const { return peek().kind == Token::Kind::op && peek().text == op; }
  void expect(const char* op, SourcePos open) {
    if (is_op(op)) {
      ++pos_;
      return;
    }
    if (std::string(op) == ")" && peek().kind == Token::Kind::end)
      throw ParseError("unbalanced parentheses: '(' opened at column " + std::to_string(open.column) + " is not closed",
                       peek().pos);
    throw ParseError(std::string("expected '") + op + "'", peek().pos);
  }
  std::string ident(const char* what) {
    if (peek().kind != Token::Kind::ident) throw ParseError(std::string("expected ") + what, peek().pos);
    return next().text;
  }

  static ExprPtr node(Expr::Kind kind, SourcePos pos) {
    auto e = std::make_unique<Expr>();
    e->kind = kind;
    e->pos = pos;
    return e;
  }

  ExprPtr expr() {
    SourcePos start = peek().pos;
    ExprPtr first = term();
    if (!is_op("+") && !is_op("-")) return first;
    ExprPtr sum = node(Expr::Kind::sum, start);
    sum->children.push_back(std::move(first));
    sum->signs.push_back(1);
    while (is_op("+") || is_op("-")) {
      int sign = next().text == "+" ? 1 : -1;
      sum->children.push_back(term());
      sum->signs.push_back(sign);
    }
    return sum;
  }

  ExprPtr term() {
    SourcePos start = peek().pos;
    ExprPtr first = unary();
    if (!is_op("*")) return first;
    ExprPtr prod = node(Expr::Kind::product, start);
    prod->children.push_back(std::move(first));
    while (is_op("*")) {
      ++pos_;
      prod->children.push_back(unary());
    }
    return prod;
  }

  ExprPtr unary() {
    if (is_op("-")) {
      SourcePos at = next().pos;
      ExprPtr neg = node(Expr::Kind::negate, at);
      neg->children.push_back(unary());
      return neg;
    }
    return power();
  }

  ExprPtr power() {
    ExprPtr base = factor();
    while (is_op("^")) {
      SourcePos at = next().pos;
      ExprPtr caret = node(Expr::Kind::caret, at);
      caret->children.push_back(std::move(base));
      caret->children.push_back(factor());
      base = std::move(caret);
    }
    return base;
  }

  ExprPtr factor() {
    const Token& t = peek();
    if (t.kind == Token::Kind::number) {
      Token num = next();
      ExprPtr e = node(Expr::Kind::number, num.pos);
      mpz_class n(num.text);
      mpz_class d(1);
      if (is_op("/")) {
        ++pos_;
        if (peek().kind != Token::Kind::number) throw ParseError("expected a denominator", peek().pos);
        Token den = next();
        d = mpz_class(den.text);
        if (d == 0) throw ParseError("zero denominator", den.pos);
      }
      e->value = Rational(n, d);
      e->value.canonicalize();
      return e;
    }
    if (t.kind == Token::Kind::ident) {
      Token id = next();
      if (is_op("(") && (id.text == "d" || id.text == "dx" || id.text == "theta")) {
        SourcePos open = next().pos;
        Expr::Kind kind = id.text == "d" ? Expr::Kind::jet : id.text == "dx" ? Expr::Kind::dx : Expr::Kind::theta;
        ExprPtr e = node(kind, id.pos);
        e->name = ident(kind == Expr::Kind::dx ? "a coordinate name" : "a field name");
        while (is_op(",")) {
          ++pos_;
          e->indices.push_back(ident("a coordinate name"));
        }
        if (kind == Expr::Kind::jet && e->indices.empty())
          throw ParseError("d(...) needs at least one coordinate", peek().pos);
        if (kind == Expr::Kind::dx && !e->indices.empty()) throw ParseError("dx(...) takes one coordinate", id.pos);
        expect(")", open);
        return e;
      }
      ExprPtr e = node(Expr::Kind::symbol, id.pos);
      e->name = id.text;
      return e;
    }
    if (is_op("(")) {
      SourcePos open = next().pos;
      ExprPtr e = expr();
      expect(")", open);
      return e;
    }
    if (is_op(")")) throw ParseError("unbalanced parentheses: unexpected ')'", t.pos);
    if (t.kind == Token::Kind::end) throw ParseError("unexpected end of expression", t.pos);
    throw ParseError("unexpected '" + t.text + "'", t.pos);
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

bool is_zero_form(const GradedForm& phi) { return phi.max_contact_degree() + phi.max_horizontal_degree() <= 0; }

/// Rejects products that would silently drop an odd square.
void check_odd_squares(const GradedForm& a, const GradedForm& b, SourcePos pos) {
  Monomial scratch;
  for (const auto& [wa, fa] : a.terms())
    for (const auto& [wb, fb] : b.terms())
      for (const auto& [ma, ca] : fa.terms())
        for (const auto& [mb, cb] : fb.terms())
          if (multiply_monomials(ma, mb, scratch) == 0)
            throw ParseError("product contains the square of an odd variable (identically zero)", pos);
}

GradedForm checked_wedge(const GradedForm& a, const GradedForm& b, SourcePos pos) {
  check_odd_squares(a, b, pos);
  return wedge(a, b);
}

int coordinate_of(const FieldTable& table, const std::string& name, SourcePos pos) {
  auto c = table.find_coordinate(name);
  if (!c) throw ParseError("undeclared coordinate '" + name + "'", pos);
  return *c;
}

Var jet_var(const Expr& e, const Scope& scope, int& sign) {
  const FieldTable& table = *scope.table();
  auto r = scope.resolve(e.name);
  if (!r) throw ParseError("undeclared identifier '" + e.name + "'", e.pos);
  std::vector<int> dirs;
  for (const auto& idx : e.indices) dirs.push_back(coordinate_of(table, idx, e.pos));
  if (static_cast<int>(dirs.size()) > scope.max_jet_order())
    throw ParseError("jet order " + std::to_string(dirs.size()) + " exceeds the bound " +
                         std::to_string(scope.max_jet_order()),
                     e.pos);
  sign = r->sign;
  if (r->id < 0) return Var{};
  return table.var(r->id, MultiIndex::from_directions(dirs));
}

std::string rational_text(const Rational& q) { return to_string(q); }

std::string monomial_text(const FieldTable& table, const Monomial& m) {
  std::string out;
  auto add = [&](const std::string& s) {
    if (!out.empty()) out += "*";
    out += s;
  };
  for (const auto& [v, p] : m.even) add(p == 1 ? var_name(table, v) : var_name(table, v) + "^" + std::to_string(p));
  for (const auto& v : m.odd) add(var_name(table, v));
  return out;
}

/// Appends one signed term "± c*m" to `out`.
void append_term(std::string& out, const Rational& c, const std::string& body) {
  Rational a = abs(c);
  std::string text;
  if (body.empty())
    text = rational_text(a);
  else if (a == 1)
    text = body;
  else
    text = rational_text(a) + "*" + body;
  if (out.empty())
    out = (c < 0 ? "-" : "") + text;
  else
    out += (c < 0 ? " - " : " + ") + text;
}

std::string generator_text(const FieldTable& table, const Generator& g) {
  if (g.kind == Generator::horizontal) return "dx(" + table.coordinate_name(g.coord) + ")";
  std::string s = "theta(" + table.decl(g.var.field).name;
  for (int d : g.var.jet.directions()) s += "," + table.coordinate_name(d);
  return s + ")";
}

}  // namespace

ExprPtr parse_expression(const SourceText& source) { return Parser(lex(source)).parse(); }

ExprPtr parse_expression(const std::string& text) { return parse_expression(SourceText::from_line(text, 1)); }

void Scope::add_alias(const std::string& name, const std::string& target, int sign) {
  aliases_[name] = {target, sign};
}

std::optional<Scope::Resolved> Scope::resolve(const std::string& name) const {
  if (auto id = table_->find(name)) {
    if (table_->decl(*id).kind == FieldKind::auxiliary) return std::nullopt;
    return Resolved{*id, 1};
  }
  std::string key = name;
  std::string prefix;
  if (name.rfind("bar_", 0) == 0 && !aliases_.count(name)) {
    prefix = "bar_";
    key = name.substr(4);
  }
  auto it = aliases_.find(key);
  if (it == aliases_.end()) return std::nullopt;
  if (it->second.second == 0) return Resolved{-1, 0};
  auto id = table_->find(prefix + it->second.first);
  if (!id) return std::nullopt;
  return Resolved{*id, it->second.second};
}

GradedForm evaluate(const Expr& e, const Scope& scope) {
  const FieldTable& table = *scope.table();
  const int dim = table.dim();
  switch (e.kind) {
    case Expr::Kind::number:
      return GradedForm(GradedScalar::constant(dim, e.value));
    case Expr::Kind::symbol: {
      if (auto c = table.find_coordinate(e.name)) return GradedForm(GradedScalar::coordinate(dim, *c));
      int sign = 1;
      Var v = jet_var(e, scope, sign);
      if (sign == 0) return GradedForm(dim);
      return GradedForm(GradedScalar::variable(dim, v)) * Rational(sign);
    }
    case Expr::Kind::jet: {
      int sign = 1;
      Var v = jet_var(e, scope, sign);
      if (sign == 0) return GradedForm(dim);
      return GradedForm(GradedScalar::variable(dim, v)) * Rational(sign);
    }
    case Expr::Kind::dx:
      return GradedForm::dx(dim, coordinate_of(table, e.name, e.pos));
    case Expr::Kind::theta: {
      int sign = 1;
      Var v = jet_var(e, scope, sign);
      if (sign == 0) return GradedForm(dim);
      return GradedForm::theta(dim, v) * Rational(sign);
    }
    case Expr::Kind::negate:
      return -evaluate(*e.children.front(), scope);
    case Expr::Kind::sum: {
      GradedForm r(dim);
      for (std::size_t i = 0; i < e.children.size(); ++i) {
        GradedForm t = evaluate(*e.children[i], scope);
        if (e.signs[i] < 0)
          r -= t;
        else
          r += t;
      }
      return r;
    }
    case Expr::Kind::product: {
      GradedForm r = evaluate(*e.children.front(), scope);
      for (std::size_t i = 1; i < e.children.size(); ++i) {
        GradedForm t = evaluate(*e.children[i], scope);
        if (!is_zero_form(r) && !is_zero_form(t))
          throw ParseError("'*' between forms of positive degree; use '^' for the wedge product", e.children[i]->pos);
        r = checked_wedge(r, t, e.children[i]->pos);
      }
      return r;
    }
    case Expr::Kind::caret: {
      GradedForm base = evaluate(*e.children[0], scope);
      const Expr& rhs = *e.children[1];
      if (is_zero_form(base) && rhs.kind == Expr::Kind::number) {
        if (rhs.value.get_den() != 1 || rhs.value < 0)
          throw ParseError("exponent must be a non-negative integer", rhs.pos);
        if (!rhs.value.get_num().fits_uint_p()) throw ParseError("exponent too large", rhs.pos);
        unsigned long k = rhs.value.get_num().get_ui();
        if (k > 1 && !base.scalar_part().parity_part(Parity::odd).is_zero())
          throw ParseError("odd-parity base raised to a power greater than 1 (identically zero)", e.pos);
        GradedForm r(GradedScalar::constant(dim, Rational(1)));
        for (unsigned long i = 0; i < k; ++i) r = wedge(r, base);
        return r;
      }
      GradedForm rhs_value = evaluate(rhs, scope);
      if (is_zero_form(base) && is_zero_form(rhs_value))
        throw ParseError("exponent must be a non-negative integer literal", rhs.pos);
      return checked_wedge(base, rhs_value, e.pos);
    }
  }
  return GradedForm(dim);
}

GradedScalar evaluate_scalar(const Expr& expr, const Scope& scope) {
  GradedForm phi = evaluate(expr, scope);
  if (!is_zero_form(phi)) throw ParseError("expected a scalar expression, got a form", expr.pos);
  GradedScalar s = phi.scalar_part();
  return s.is_zero() ? GradedScalar(scope.table()->dim()) : s;
}

GradedForm parse_form(const std::string& text, const Scope& scope) { return evaluate(*parse_expression(text), scope); }

GradedScalar parse_scalar(const std::string& text, const Scope& scope) {
  return evaluate_scalar(*parse_expression(text), scope);
}

std::string var_name(const FieldTable& table, const Var& v) {
  if (v.is_coordinate()) return table.coordinate_name(v.coord);
  const std::string& name = table.decl(v.field).name;
  if (v.jet.order() == 0) return name;
  std::string s = "d(" + name;
  for (int d : v.jet.directions()) s += "," + table.coordinate_name(d);
  return s + ")";
}

std::string to_string(const FieldTable& table, const GradedScalar& f) {
  std::string out;
  for (const auto& [m, c] : f.terms()) append_term(out, c, monomial_text(table, m));
  return out.empty() ? "0" : out;
}

std::string to_string(const FieldTable& table, const GradedForm& phi) {
  std::string out;
  for (const auto& [w, coef] : phi.terms()) {
    std::string word;
    for (const Generator& g : w) word += (word.empty() ? "" : "^") + generator_text(table, g);
    if (coef.size() == 1) {
      const auto& [m, c] = *coef.terms().begin();
      std::string body = monomial_text(table, m);
      if (!word.empty()) body = body.empty() ? word : body + "*" + word;
      append_term(out, c, body);
    } else {
      std::string body = "(" + to_string(table, coef) + ")";
      if (!word.empty()) body += "*" + word;
      append_term(out, Rational(1), body);
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace gvb
