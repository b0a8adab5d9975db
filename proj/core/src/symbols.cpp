#include "gvb/symbols.hpp"

namespace gvb {

int FieldDecl::antifield_number() const {
  switch (kind) {
    case FieldKind::antifield: return stage + 2;
    case FieldKind::ghost: return -(stage + 1);
    default: return 0;
  }
}

int FieldDecl::ghost_number() const { return kind == FieldKind::ghost ? stage + 1 : 0; }

FieldTable::FieldTable(std::vector<std::string> coordinates) : coords_(std::move(coordinates)) {
  if (coords_.empty() || dim() > kMaxBaseDim)
    throw DimensionError("base dimension must be between 1 and " + std::to_string(kMaxBaseDim));
}

std::optional<int> FieldTable::find_coordinate(const std::string& name) const {
  for (int i = 0; i < dim(); ++i)
    if (coords_[i] == name) return i;
  return std::nullopt;
}

int FieldTable::add(FieldDecl decl) {
  if (find(decl.name) || find_coordinate(decl.name))
    throw ModelError("duplicate symbol '" + decl.name + "'");
  fields_.push_back(std::move(decl));
  return size() - 1;
}

std::optional<int> FieldTable::find(const std::string& name) const {
  for (int i = 0; i < size(); ++i)
    if (fields_[i].name == name) return i;
  return std::nullopt;
}

int FieldTable::require(const std::string& name) const {
  if (auto id = find(name)) return *id;
  throw UnknownSymbolError("unknown symbol '" + name + "'");
}

Var FieldTable::var(int id, const MultiIndex& jet) const {
  if (id < 0 || id >= size()) throw UnknownSymbolError("unknown field id " + std::to_string(id));
  Var v;
  v.field = static_cast<std::int16_t>(id);
  v.odd = is_odd(fields_[id].parity);
  v.jet = jet;
  return v;
}

std::vector<int> FieldTable::ids(FieldKind kind, std::optional<int> stage) const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i)
    if (fields_[i].kind == kind && (!stage || fields_[i].stage == *stage)) out.push_back(i);
  return out;
}

}  // namespace gvb
