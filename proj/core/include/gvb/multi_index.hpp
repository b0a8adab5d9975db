#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <vector>

#include "gvb/rational.hpp"

namespace gvb {

/// Largest supported number of base coordinates.
inline constexpr int kMaxBaseDim = 6;

/// Symmetric multi-index: occurrence counts per base direction.
class MultiIndex {
 public:
  MultiIndex() { counts_.fill(0); }

  static MultiIndex single(int lambda) {
    MultiIndex m;
    m.counts_[lambda] = 1;
    return m;
  }
  static MultiIndex from_directions(const std::vector<int>& dirs);

  int count(int lambda) const { return counts_[lambda]; }
  int order() const;
  bool empty() const { return order() == 0; }

  MultiIndex plus(int lambda) const {
    MultiIndex m = *this;
    ++m.counts_[lambda];
    return m;
  }
  MultiIndex operator+(const MultiIndex& other) const;
  /// Returns false when `other` is not contained in *this.
  bool contains(const MultiIndex& other) const;
  MultiIndex operator-(const MultiIndex& other) const;

  /// Λ! = ∏ Λ_μ!
  Rational factorial() const;

  /// Directions in nondecreasing order, each repeated by its count.
  std::vector<int> directions() const;

  /// All sub-multi-indices Σ ⊆ *this.
  std::vector<MultiIndex> submultisets() const;

  /// All multi-indices of order <= max_order in `dim` directions.
  static std::vector<MultiIndex> all_up_to(int dim, int max_order);

  auto operator<=>(const MultiIndex&) const = default;
  bool operator==(const MultiIndex&) const = default;

 private:
  std::array<std::uint8_t, kMaxBaseDim> counts_;
};

/// ∏_μ C(a_μ + b_μ, b_μ): the number of ways a multiset a+b splits as (a, b).
Rational merge_count(const MultiIndex& a, const MultiIndex& b);

}  // namespace gvb
