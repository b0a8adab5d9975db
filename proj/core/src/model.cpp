#include "gvb/model.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace gvb {

namespace {

struct Statement {
  SourceText text;
};

/// Splits the file into statements: comments removed, indented lines joined
/// to the statement above.
std::vector<Statement> split_statements(const std::string& text) {
  std::vector<Statement> out;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    bool blank = std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); });
    if (blank) continue;
    SourceText src = SourceText::from_line(line, number);
    bool continuation = std::isspace(static_cast<unsigned char>(line.front()));
    if (continuation) {
      if (out.empty()) throw ParseError("continuation line without a statement", {number, 1});
      out.back().text.append(src);
    } else {
      out.push_back({src});
    }
  }
  return out;
}

SourceText slice(const SourceText& s, std::size_t begin, std::size_t end) {
  SourceText r;
  r.text = s.text.substr(begin, end - begin);
  r.positions.assign(s.positions.begin() + static_cast<std::ptrdiff_t>(begin),
                     s.positions.begin() + static_cast<std::ptrdiff_t>(end));
  return r;
}

struct HeadWord {
  std::string text;
  SourcePos pos;
};

std::vector<HeadWord> words(const SourceText& s) {
  std::vector<HeadWord> out;
  std::size_t i = 0;
  while (i < s.text.size()) {
    if (std::isspace(static_cast<unsigned char>(s.text[i]))) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < s.text.size() && !std::isspace(static_cast<unsigned char>(s.text[j]))) ++j;
    out.push_back({s.text.substr(i, j - i), s.at(i)});
    i = j;
  }
  return out;
}

bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isalnum(c) || c == '_'; });
}

void check_name(const std::string& name, SourcePos pos) {
  if (!is_identifier(name)) throw ParseError("invalid name '" + name + "'", pos);
  if (name == "d" || name == "dx" || name == "theta") throw ParseError("'" + name + "' is reserved", pos);
  if (name.rfind("bar_", 0) == 0 || name.rfind("gh_", 0) == 0)
    throw ParseError("names starting with bar_ or gh_ are reserved for antifields and ghosts", pos);
}

Parity parse_parity(const HeadWord& w) {
  if (w.text == "even") return Parity::even;
  if (w.text == "odd") return Parity::odd;
  throw ParseError("expected 'even' or 'odd', got '" + w.text + "'", w.pos);
}

enum class IndexSymmetry { none, symmetric, antisymmetric };

/// Enumerates index tuples in {0..n-1}^rank in lexicographic order.
std::vector<std::vector<int>> index_tuples(int n, int rank) {
  std::vector<std::vector<int>> out;
  std::vector<int> t(static_cast<std::size_t>(rank), 0);
  while (true) {
    out.push_back(t);
    int k = rank - 1;
    while (k >= 0 && t[static_cast<std::size_t>(k)] == n - 1) t[static_cast<std::size_t>(k--)] = 0;
    if (k < 0) break;
    ++t[static_cast<std::size_t>(k)];
  }
  return out;
}

std::string indexed_name(const std::string& base, const std::vector<int>& idx) {
  std::string s = base;
  for (int i : idx) s += std::to_string(i);
  return s;
}

class ModelParser {
 public:
  explicit ModelParser(const ModelOptions& options) : options_(options) {}

  Model run(const std::string& text) {
    for (const Statement& st : split_statements(text)) statement(st.text);
    if (!model_.table) throw ParseError("missing 'base' declaration", {1, 1});
    ensure_tower();
    finish_symmetries();
    return std::move(model_);
  }

 private:
  void statement(const SourceText& src) {
    auto eq = src.text.find('=');
    SourceText head = eq == std::string::npos ? src : slice(src, 0, eq);
    std::vector<HeadWord> w = words(head);
    if (w.empty()) throw ParseError("missing statement keyword", src.at(0));
    const HeadWord& key = w.front();
    auto body = [&]() {
      if (eq == std::string::npos) throw ParseError("expected '=' in '" + key.text + "' statement", key.pos);
      SourceText b = slice(src, eq + 1, src.text.size());
      if (words(b).empty()) throw ParseError("empty expression", src.at(eq + 1));
      return b;
    };
    auto no_body = [&]() {
      if (eq != std::string::npos) throw ParseError("unexpected '='", src.at(eq));
    };
    auto arity = [&](std::size_t n, const char* usage) {
      if (w.size() != n) throw ParseError(std::string("usage: ") + usage, key.pos);
    };

    if (key.text != "base" && !model_.table) throw ParseError("the first statement must be 'base'", key.pos);
    if (key.text == "base") {
      no_body();
      base(w);
    } else if (key.text == "field") {
      no_body();
      field(w);
    } else if (key.text == "lagrangian") {
      arity(1, "lagrangian = <expression>");
      lagrangian(key, body());
    } else if (key.text == "identity") {
      arity(3, "identity <stage> <name> = <expression>");
      identity(w, body());
    } else if (key.text == "symmetry") {
      no_body();
      arity(3, "symmetry even|odd <name>");
      symmetry(w);
    } else if (key.text == "vector") {
      arity(3, "vector <symmetry> <coordinate or field> = <expression>");
      vector(w, body());
    } else if (key.text == "form") {
      arity(2, "form <name> = <expression>");
      form(w, body());
    } else if (key.text == "hypothesis") {
      no_body();
      arity(2, "hypothesis regularity");
      if (w[1].text != "regularity") throw ParseError("unknown hypothesis '" + w[1].text + "'", w[1].pos);
      ensure_tower();
      model_.regularity = true;
      model_.tower->assert_regularity(true);
    } else {
      throw ParseError("unknown statement '" + key.text + "'", key.pos);
    }
  }

  void base(const std::vector<HeadWord>& w) {
    if (model_.table) throw ParseError("duplicate 'base' declaration", w.front().pos);
    if (w.size() < 2) throw ParseError("usage: base <coordinate>...", w.front().pos);
    if (w.size() - 1 > static_cast<std::size_t>(kMaxBaseDim))
      throw ParseError("at most " + std::to_string(kMaxBaseDim) + " base coordinates", w.front().pos);
    std::vector<std::string> coords;
    for (std::size_t i = 1; i < w.size(); ++i) {
      check_name(w[i].text, w[i].pos);
      if (std::find(coords.begin(), coords.end(), w[i].text) != coords.end())
        throw ParseError("duplicate coordinate '" + w[i].text + "'", w[i].pos);
      coords.push_back(w[i].text);
    }
    model_.table = std::make_shared<FieldTable>(coords);
    model_.scope = std::make_unique<Scope>(model_.table, options_.max_jet_order);
  }

  void field(const std::vector<HeadWord>& w) {
    if (model_.tower) throw ParseError("fields must be declared before expressions", w.front().pos);
    if (w.size() < 3) throw ParseError("usage: field even|odd <name>[rank]... [symmetric|antisymmetric]", w.front().pos);
    Parity parity = parse_parity(w[1]);
    std::size_t last = w.size();
    IndexSymmetry sym = IndexSymmetry::none;
    if (w.back().text == "symmetric" || w.back().text == "antisymmetric") {
      sym = w.back().text == "symmetric" ? IndexSymmetry::symmetric : IndexSymmetry::antisymmetric;
      --last;
    }
    if (last < 3) throw ParseError("missing field name", w.back().pos);
    for (std::size_t i = 2; i < last; ++i) declare(w[i], parity, sym);
  }

  void add_field(const std::string& name, Parity parity, SourcePos pos) {
    check_name(name, pos);
    if (model_.table->find(name) || model_.table->find_coordinate(name) || model_.scope->resolve(name))
      throw ParseError("duplicate symbol '" + name + "'", pos);
    FieldDecl d;
    d.name = name;
    d.parity = parity;
    model_.table->add(d);
    model_.fields.push_back(name);
  }

  void declare(const HeadWord& w, Parity parity, IndexSymmetry sym) {
    auto open = w.text.find('[');
    if (open == std::string::npos) {
      if (sym != IndexSymmetry::none) throw ParseError("index symmetry needs an indexed family", w.pos);
      add_field(w.text, parity, w.pos);
      return;
    }
    std::string base = w.text.substr(0, open);
    std::string rank_text = w.text.substr(open + 1);
    if (rank_text.size() < 2 || rank_text.back() != ']' ||
        !std::all_of(rank_text.begin(), rank_text.end() - 1, [](unsigned char c) { return std::isdigit(c); }))
      throw ParseError("expected <name>[rank]", w.pos);
    int rank = std::stoi(rank_text.substr(0, rank_text.size() - 1));
    if (rank < 1 || rank > 3) throw ParseError("family rank must be 1, 2 or 3", w.pos);
    if (sym != IndexSymmetry::none && rank < 2) throw ParseError("index symmetry needs rank >= 2", w.pos);
    check_name(base, w.pos);
    const int n = model_.table->dim();
    for (const auto& idx : index_tuples(n, rank)) {
      std::vector<int> sorted = idx;
      int sign = 1;
      for (std::size_t i = 1; i < sorted.size(); ++i)
        for (std::size_t j = i; j > 0 && sorted[j] < sorted[j - 1]; --j) {
          std::swap(sorted[j], sorted[j - 1]);
          sign = -sign;
        }
      bool repeated = std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
      std::string name = indexed_name(base, idx);
      if (sym == IndexSymmetry::none || (sorted == idx && !(sym == IndexSymmetry::antisymmetric && repeated))) {
        add_field(name, parity, w.pos);
      } else if (sym == IndexSymmetry::symmetric) {
        model_.scope->add_alias(name, indexed_name(base, sorted), 1);
      } else {
        model_.scope->add_alias(name, indexed_name(base, sorted), repeated ? 0 : sign);
      }
    }
  }

  void ensure_tower() {
    if (!model_.tower) model_.tower = std::make_unique<NoetherTower>(model_.table);
  }

  GradedForm expression(const SourceText& src) {
    ensure_tower();
    return evaluate(*parse_expression(src), *model_.scope);
  }

  void lagrangian(const HeadWord& key, const SourceText& src) {
    if (model_.lagrangian) throw ParseError("duplicate 'lagrangian' statement", key.pos);
    ExprPtr e = parse_expression(src);
    ensure_tower();
    GradedForm value = evaluate(*e, *model_.scope);
    GradedScalar density(model_.dim());
    GradedForm omega = horizontal_volume(model_.dim());
    if (value.max_contact_degree() <= 0 && value.max_horizontal_degree() <= 0) {
      density = value.scalar_part();
    } else if (value.terms().size() == 1 && value.terms().begin()->first == omega.terms().begin()->first) {
      density = value.terms().begin()->second;
    } else {
      throw ParseError("the Lagrangian must be a scalar density or a multiple of the volume form", e->pos);
    }
    try {
      model_.lagrangian.emplace(model_.table, density);
    } catch (const Error& err) {
      throw ParseError(err.what(), e->pos);
    }
  }

  void identity(const std::vector<HeadWord>& w, const SourceText& src) {
    const HeadWord& stage_word = w[1];
    if (!std::all_of(stage_word.text.begin(), stage_word.text.end(), [](unsigned char c) { return std::isdigit(c); }))
      throw ParseError("identity stage must be a non-negative integer", stage_word.pos);
    check_name(w[2].text, w[2].pos);
    ExprPtr e = parse_expression(src);
    ensure_tower();
    GradedScalar delta = evaluate_scalar(*e, *model_.scope);
    try {
      model_.tower->add_identity(std::stoi(stage_word.text), w[2].text, delta);
    } catch (const Error& err) {
      throw ParseError(err.what(), w[2].pos);
    }
  }

  void symmetry(const std::vector<HeadWord>& w) {
    check_name(w[2].text, w[2].pos);
    for (const auto& s : model_.symmetries)
      if (s.name == w[2].text) throw ParseError("duplicate symmetry '" + w[2].text + "'", w[2].pos);
    SymmetryDecl decl;
    decl.name = w[2].text;
    decl.parity = parse_parity(w[1]);
    decl.pos = w[0].pos;
    model_.symmetries.push_back(std::move(decl));
  }

  void vector(const std::vector<HeadWord>& w, const SourceText& src) {
    auto it = std::find_if(model_.symmetries.begin(), model_.symmetries.end(),
                           [&](const SymmetryDecl& s) { return s.name == w[1].text; });
    if (it == model_.symmetries.end()) throw ParseError("undeclared symmetry '" + w[1].text + "'", w[1].pos);
    const std::string& target = w[2].text;
    bool coordinate = model_.table->find_coordinate(target).has_value();
    auto field = model_.table->find(target);
    if (!coordinate && !(field && model_.table->decl(*field).kind == FieldKind::field))
      throw ParseError("'" + target + "' is neither a coordinate nor a field", w[2].pos);
    for (const auto& [name, value] : it->components)
      if (name == target) throw ParseError("duplicate component '" + target + "'", w[2].pos);
    ExprPtr e = parse_expression(src);
    ensure_tower();
    it->components.emplace_back(target, evaluate_scalar(*e, *model_.scope));
  }

  void form(const std::vector<HeadWord>& w, const SourceText& src) {
    check_name(w[1].text, w[1].pos);
    for (const auto& f : model_.forms)
      if (f.name == w[1].text) throw ParseError("duplicate form '" + w[1].text + "'", w[1].pos);
    FormDecl decl;
    decl.name = w[1].text;
    decl.pos = w[0].pos;
    decl.value = expression(src);
    model_.forms.push_back(std::move(decl));
  }

  void finish_symmetries() {
    const int dim = model_.dim();
    for (SymmetryDecl& s : model_.symmetries) {
      std::vector<GradedScalar> horizontal(static_cast<std::size_t>(dim), GradedScalar(dim));
      std::map<Var, GradedScalar> vertical;
      for (const auto& [target, value] : s.components) {
        if (auto c = model_.table->find_coordinate(target))
          horizontal[static_cast<std::size_t>(*c)] = value;
        else
          vertical.emplace(model_.table->var(target), value);
      }
      s.derivation = GradedDerivation::prolonged(dim, s.parity, std::move(horizontal), std::move(vertical));
    }
  }

  ModelOptions options_;
  Model model_;
};

}  // namespace

const Lagrangian& Model::require_lagrangian() const {
  if (!lagrangian) throw ModelError("the model declares no Lagrangian");
  return *lagrangian;
}

Model parse_model(const std::string& text, const ModelOptions& options) { return ModelParser(options).run(text); }

Model load_model(const std::string& path, const ModelOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ModelError("cannot open model file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_model(buffer.str(), options);
}

}  // namespace gvb
