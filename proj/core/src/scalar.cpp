#include "gvb/scalar.hpp"

#include <algorithm>

namespace gvb {

namespace {

/// Sorts the odd word (tracking the permutation sign) and merges even powers.
/// Returns 0 when an odd variable repeats.
int normalize(Monomial& m) {
  int sign = 1;
  auto& w = m.odd;
  for (std::size_t i = 1; i < w.size(); ++i) {
    for (std::size_t j = i; j > 0 && w[j] < w[j - 1]; --j) {
      std::swap(w[j], w[j - 1]);
      sign = -sign;
    }
  }
  for (std::size_t i = 1; i < w.size(); ++i)
    if (w[i] == w[i - 1]) return 0;

  auto& e = m.even;
  std::sort(e.begin(), e.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::pair<Var, std::uint16_t>> merged;
  for (const auto& [v, p] : e) {
    if (p == 0) continue;
    if (!merged.empty() && merged.back().first == v)
      merged.back().second = static_cast<std::uint16_t>(merged.back().second + p);
    else
      merged.emplace_back(v, p);
  }
  e = std::move(merged);
  return sign;
}

void insert_even(Monomial& m, const Var& v, std::uint16_t power) {
  auto it = std::lower_bound(m.even.begin(), m.even.end(), v,
                             [](const auto& a, const Var& key) { return a.first < key; });
  if (it != m.even.end() && it->first == v)
    it->second = static_cast<std::uint16_t>(it->second + power);
  else
    m.even.insert(it, {v, power});
}

}  // namespace

int Monomial::jet_degree() const {
  int d = static_cast<int>(odd.size());
  for (const auto& [v, p] : even)
    if (!v.is_coordinate()) d += p;
  return d;
}

GradedScalar GradedScalar::constant(int dim, const Rational& c) {
  GradedScalar s(dim);
  s.add_term(Monomial{}, c);
  return s;
}

GradedScalar GradedScalar::variable(int dim, const Var& v) {
  GradedScalar s(dim);
  Monomial m;
  if (v.odd)
    m.odd.push_back(v);
  else
    m.even.emplace_back(v, 1);
  s.add_term(m, Rational(1));
  return s;
}

std::optional<Parity> GradedScalar::parity() const {
  if (terms_.empty()) return Parity::even;
  Parity p = terms_.begin()->first.parity();
  for (const auto& [m, c] : terms_)
    if (m.parity() != p) return std::nullopt;
  return p;
}

Rational GradedScalar::constant_term() const {
  auto it = terms_.find(Monomial{});
  return it == terms_.end() ? Rational(0) : it->second;
}

int GradedScalar::max_jet_order() const {
  int r = -1;
  for (const auto& [m, c] : terms_) {
    for (const auto& [v, p] : m.even)
      if (!v.is_coordinate()) r = std::max(r, v.jet.order());
    for (const auto& v : m.odd) r = std::max(r, v.jet.order());
  }
  return r;
}

std::set<Var> GradedScalar::variables() const {
  std::set<Var> out;
  for (const auto& [m, c] : terms_) {
    for (const auto& [v, p] : m.even)
      if (!v.is_coordinate()) out.insert(v);
    for (const auto& v : m.odd) out.insert(v);
  }
  return out;
}

bool GradedScalar::depends_on_jets() const {
  for (const auto& [m, c] : terms_)
    if (m.jet_degree() > 0) return true;
  return false;
}

void GradedScalar::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void GradedScalar::check_dim(const GradedScalar& other) const {
  // A default-constructed zero carries no dimension and is compatible with anything.
  if ((dim_ == 0 && terms_.empty()) || (other.dim_ == 0 && other.terms_.empty())) return;
  if (dim_ != other.dim_)
    throw DimensionError("base dimension mismatch: " + std::to_string(dim_) + " vs " +
                         std::to_string(other.dim_));
}

GradedScalar& GradedScalar::operator+=(const GradedScalar& other) {
  check_dim(other);
  if (dim_ == 0) dim_ = other.dim_;
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

GradedScalar& GradedScalar::operator-=(const GradedScalar& other) {
  check_dim(other);
  if (dim_ == 0) dim_ = other.dim_;
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

GradedScalar& GradedScalar::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coef] : terms_) coef *= c;
  return *this;
}

GradedScalar GradedScalar::operator-() const {
  GradedScalar r = *this;
  r *= Rational(-1);
  return r;
}

int multiply_monomials(const Monomial& a, const Monomial& b, Monomial& out) {
  out.even.clear();
  out.odd.clear();
  // even parts: sorted merge
  std::size_t i = 0, j = 0;
  while (i < a.even.size() || j < b.even.size()) {
    if (j == b.even.size() || (i < a.even.size() && a.even[i].first < b.even[j].first)) {
      out.even.push_back(a.even[i++]);
    } else if (i == a.even.size() || b.even[j].first < a.even[i].first) {
      out.even.push_back(b.even[j++]);
    } else {
      out.even.emplace_back(a.even[i].first, static_cast<std::uint16_t>(a.even[i].second + b.even[j].second));
      ++i;
      ++j;
    }
  }
  // odd words: merge counting inversions
  int inversions = 0;
  i = j = 0;
  while (i < a.odd.size() || j < b.odd.size()) {
    if (j == b.odd.size()) {
      out.odd.push_back(a.odd[i++]);
    } else if (i == a.odd.size()) {
      out.odd.push_back(b.odd[j++]);
    } else if (a.odd[i] == b.odd[j]) {
      return 0;
    } else if (a.odd[i] < b.odd[j]) {
      out.odd.push_back(a.odd[i++]);
    } else {
      inversions += static_cast<int>(a.odd.size() - i);
      out.odd.push_back(b.odd[j++]);
    }
  }
  return (inversions & 1) ? -1 : 1;
}

GradedScalar operator*(const GradedScalar& a, const GradedScalar& b) {
  a.check_dim(b);
  GradedScalar r(std::max(a.dim_, b.dim_));
  Monomial prod;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) {
      int s = multiply_monomials(ma, mb, prod);
      if (s == 0) continue;
      Rational c = ca * cb;
      if (s < 0) c = -c;
      r.add_term(prod, c);
    }
  return r;
}

GradedScalar GradedScalar::parity_part(Parity p) const {
  GradedScalar r(dim_);
  for (const auto& [m, c] : terms_)
    if (m.parity() == p) r.terms_.emplace(m, c);
  return r;
}

GradedScalar GradedScalar::map_terms(
    const std::function<GradedScalar(const Monomial&, const Rational&)>& f) const {
  GradedScalar r(dim_);
  for (const auto& [m, c] : terms_) r += f(m, c);
  return r;
}

GradedScalar monomial_scalar(int dim, const Monomial& m, const Rational& c) {
  GradedScalar s(dim);
  Monomial copy = m;
  int sign = normalize(copy);
  if (sign != 0) s.add_term(copy, sign < 0 ? Rational(-c) : c);
  return s;
}

GradedScalar partial(const GradedScalar& f, const Var& v, Side side) {
  GradedScalar r(f.dim());
  for (const auto& [m, c] : f.terms()) {
    if (!v.odd) {
      auto it = std::find_if(m.even.begin(), m.even.end(), [&](const auto& e) { return e.first == v; });
      if (it == m.even.end()) continue;
      Monomial d = m;
      auto& entry = d.even[static_cast<std::size_t>(it - m.even.begin())];
      Rational coef = c * Rational(entry.second);
      if (--entry.second == 0) d.even.erase(d.even.begin() + (it - m.even.begin()));
      r.add_term(d, coef);
    } else {
      auto it = std::find(m.odd.begin(), m.odd.end(), v);
      if (it == m.odd.end()) continue;
      auto pos = static_cast<std::size_t>(it - m.odd.begin());
      std::size_t passes = side == Side::left ? pos : m.odd.size() - 1 - pos;
      Monomial d = m;
      d.odd.erase(d.odd.begin() + static_cast<std::ptrdiff_t>(pos));
      r.add_term(d, (passes & 1) ? Rational(-c) : c);
    }
  }
  return r;
}

GradedScalar total_derivative(const GradedScalar& f, int lambda) {
  if (lambda < 0 || lambda >= f.dim()) throw DimensionError("total derivative direction out of range");
  GradedScalar r(f.dim());
  for (const auto& [m, c] : f.terms()) {
    for (std::size_t k = 0; k < m.even.size(); ++k) {
      const auto& [v, p] = m.even[k];
      if (v.is_coordinate() && v.coord != lambda) continue;
      Monomial d = m;
      Rational coef = c * Rational(p);
      if (--d.even[k].second == 0) d.even.erase(d.even.begin() + static_cast<std::ptrdiff_t>(k));
      if (!v.is_coordinate()) insert_even(d, v.shifted(lambda), 1);
      r.add_term(d, coef);
    }
    for (std::size_t k = 0; k < m.odd.size(); ++k) {
      Monomial d = m;
      d.odd[k] = m.odd[k].shifted(lambda);
      int sign = normalize(d);
      if (sign == 0) continue;
      r.add_term(d, sign < 0 ? Rational(-c) : c);
    }
  }
  return r;
}

GradedScalar total_derivative(const GradedScalar& f, const MultiIndex& multi) {
  GradedScalar r = f;
  for (int dir : multi.directions()) r = total_derivative(r, dir);
  return r;
}

GradedScalar scale_by_jet_degree(const GradedScalar& f, const std::function<Rational(int)>& weight) {
  GradedScalar r(f.dim());
  for (const auto& [m, c] : f.terms()) r.add_term(m, c * weight(m.jet_degree()));
  return r;
}

GradedScalar divide_by_jet_degree(const GradedScalar& f) {
  return scale_by_jet_degree(f, [](int k) {
    if (k == 0) throw DivisionByZeroError("jet-degree weight 1/k applied to a jet-free term");
    return ratio(1, k);
  });
}

GradedScalar parity_twist(const GradedScalar& f) {
  GradedScalar r(f.dim());
  for (const auto& [m, c] : f.terms()) r.add_term(m, is_odd(m.parity()) ? Rational(-c) : c);
  return r;
}

GradedScalar jet_free_part(const GradedScalar& f) {
  GradedScalar r(f.dim());
  for (const auto& [m, c] : f.terms())
    if (m.jet_degree() == 0) r.add_term(m, c);
  return r;
}

GradedScalar at_origin(const GradedScalar& f) {
  GradedScalar r(f.dim());
  for (const auto& [m, c] : f.terms()) {
    bool has_coord = std::any_of(m.even.begin(), m.even.end(), [](const auto& e) { return e.first.is_coordinate(); });
    if (!has_coord) r.add_term(m, c);
  }
  return r;
}

}  // namespace gvb
