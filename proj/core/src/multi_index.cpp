#include "gvb/multi_index.hpp"

#include <stdexcept>

namespace gvb {

MultiIndex MultiIndex::from_directions(const std::vector<int>& dirs) {
  MultiIndex m;
  for (int d : dirs) {
    if (d < 0 || d >= kMaxBaseDim) throw std::out_of_range("multi-index direction out of range");
    ++m.counts_[d];
  }
  return m;
}

int MultiIndex::order() const {
  int s = 0;
  for (auto c : counts_) s += c;
  return s;
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
  MultiIndex m;
  for (int i = 0; i < kMaxBaseDim; ++i) m.counts_[i] = counts_[i] + other.counts_[i];
  return m;
}

bool MultiIndex::contains(const MultiIndex& other) const {
  for (int i = 0; i < kMaxBaseDim; ++i)
    if (other.counts_[i] > counts_[i]) return false;
  return true;
}

MultiIndex MultiIndex::operator-(const MultiIndex& other) const {
  if (!contains(other)) throw std::logic_error("multi-index subtraction underflow");
  MultiIndex m;
  for (int i = 0; i < kMaxBaseDim; ++i) m.counts_[i] = counts_[i] - other.counts_[i];
  return m;
}

Rational MultiIndex::factorial() const {
  Rational r(1);
  for (auto c : counts_) r *= gvb::factorial(c);
  return r;
}

std::vector<int> MultiIndex::directions() const {
  std::vector<int> out;
  for (int i = 0; i < kMaxBaseDim; ++i)
    for (int k = 0; k < counts_[i]; ++k) out.push_back(i);
  return out;
}

std::vector<MultiIndex> MultiIndex::submultisets() const {
  std::vector<MultiIndex> out{MultiIndex{}};
  for (int i = 0; i < kMaxBaseDim; ++i) {
    if (counts_[i] == 0) continue;
    std::vector<MultiIndex> next;
    for (const auto& base : out)
      for (int k = 0; k <= counts_[i]; ++k) {
        MultiIndex m = base;
        m.counts_[i] = static_cast<std::uint8_t>(k);
        next.push_back(m);
      }
    out = std::move(next);
  }
  return out;
}

std::vector<MultiIndex> MultiIndex::all_up_to(int dim, int max_order) {
  std::vector<MultiIndex> out{MultiIndex{}};
  std::vector<MultiIndex> frontier{MultiIndex{}};
  for (int k = 1; k <= max_order; ++k) {
    std::vector<MultiIndex> next;
    for (const auto& m : frontier) {
      // Extend only in directions >= the last used one to enumerate each multiset once.
      int last = 0;
      for (int i = 0; i < dim; ++i)
        if (m.count(i) > 0) last = i;
      for (int i = last; i < dim; ++i) next.push_back(m.plus(i));
    }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

Rational merge_count(const MultiIndex& a, const MultiIndex& b) {
  Rational r(1);
  for (int i = 0; i < kMaxBaseDim; ++i)
    r *= binomial(static_cast<unsigned>(a.count(i) + b.count(i)), static_cast<unsigned>(b.count(i)));
  return r;
}

}  // namespace gvb
