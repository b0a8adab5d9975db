#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gvb/errors.hpp"
#include "gvb/multi_index.hpp"

namespace gvb {

enum class Parity : std::uint8_t { even = 0, odd = 1 };

inline Parity operator+(Parity a, Parity b) {
  return static_cast<Parity>((static_cast<int>(a) + static_cast<int>(b)) & 1);
}
inline bool is_odd(Parity p) { return p == Parity::odd; }
inline int sign_of(bool negative) { return negative ? -1 : 1; }

/// Role of a generator in the local generating basis.
enum class FieldKind : std::uint8_t {
  field,      // s^A, even or odd
  antifield,  // s̄_A (stage -1) or c̄_{r_k} (stage k)
  ghost,      // c^{r_k}
  auxiliary,  // internal helper variables (barred copies used by homotopies)
};

struct FieldDecl {
  std::string name;
  Parity parity = Parity::even;
  FieldKind kind = FieldKind::field;
  int stage = -1;
  /// Field or identity this generator is attached to (-1 if none).
  int source = -1;

  int antifield_number() const;
  int ghost_number() const;
};

/// A jet variable s^A_Λ or a base coordinate x^λ.
///
/// Base coordinates carry field == -1 and sort before every jet variable.
struct Var {
  std::int16_t field = -1;
  std::uint8_t coord = 0;
  bool odd = false;
  MultiIndex jet;

  static Var coordinate(int lambda) {
    Var v;
    v.coord = static_cast<std::uint8_t>(lambda);
    return v;
  }
  bool is_coordinate() const { return field < 0; }
  Parity parity() const { return odd ? Parity::odd : Parity::even; }
  Var shifted(int lambda) const {
    Var v = *this;
    v.jet = jet.plus(lambda);
    return v;
  }
  Var with_jet(const MultiIndex& m) const {
    Var v = *this;
    v.jet = m;
    return v;
  }

  auto operator<=>(const Var&) const = default;
  bool operator==(const Var&) const = default;
};

/// Declarations of base coordinates and generators shared by all values of a model.
class FieldTable {
 public:
  explicit FieldTable(std::vector<std::string> coordinates);

  int dim() const { return static_cast<int>(coords_.size()); }
  const std::vector<std::string>& coordinates() const { return coords_; }
  const std::string& coordinate_name(int lambda) const { return coords_.at(lambda); }
  std::optional<int> find_coordinate(const std::string& name) const;

  int add(FieldDecl decl);
  int size() const { return static_cast<int>(fields_.size()); }
  const FieldDecl& decl(int id) const { return fields_.at(id); }
  std::optional<int> find(const std::string& name) const;
  /// Throws UnknownSymbolError.
  int require(const std::string& name) const;

  Var var(int id, const MultiIndex& jet = {}) const;
  Var var(const std::string& name, const MultiIndex& jet = {}) const { return var(require(name), jet); }

  /// Ids of generators of the given kind (and stage, when given), in declaration order.
  std::vector<int> ids(FieldKind kind, std::optional<int> stage = std::nullopt) const;

 private:
  std::vector<std::string> coords_;
  std::vector<FieldDecl> fields_;
};

using FieldTablePtr = std::shared_ptr<FieldTable>;

}  // namespace gvb
