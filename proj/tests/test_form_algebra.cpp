#include "doctest.h"

#include "gvb/derivation.hpp"
#include "support.hpp"

using namespace gvb;
using gvb::testing::Model;
using gvb::testing::Random;

namespace {

/// (-1)^{|a||b| + [a][b]} for homogeneous forms.
int commutation_sign(const GradedForm& a, const GradedForm& b) {
  const auto& [wa, fa] = *a.terms().begin();
  const auto& [wb, fb] = *b.terms().begin();
  int deg = static_cast<int>(wa.size() * wb.size());
  bool pa = is_odd(word_parity(wa) + *fa.parity());
  bool pb = is_odd(word_parity(wb) + *fb.parity());
  return ((deg + (pa && pb ? 1 : 0)) & 1) ? -1 : 1;
}

}  // namespace

TEST_CASE("wedge sign rules") {
  Model m({"x"});
  m.add("u", Parity::even);
  m.add("c", Parity::odd);
  CHECK(wedge(m.dx("x"), m.dx("x")).is_zero());
  GradedForm cc = wedge(m.theta("c"), m.theta("c"));
  CHECK(!cc.is_zero());
  CHECK(wedge(m.theta("u"), m.dx("x")) == -wedge(m.dx("x"), m.theta("u")));
  CHECK(wedge(m.theta("u"), m.theta("u")).is_zero());
}

TEST_CASE("bigraded commutation and associativity on random forms") {
  Model m({"x", "y"});
  std::vector<Var> fields{m.add("u", Parity::even), m.add("c", Parity::odd)};
  Random rnd(m, 23);
  int checked = 0;
  for (int i = 0; i < 200; ++i) {
    // homogeneous single terms
    GradedForm a = rnd.form_bidegree(fields, 1, 2, 1, rnd.uniform(0, 2), rnd.uniform(0, 1));
    GradedForm b = rnd.form_bidegree(fields, 1, 2, 1, rnd.uniform(0, 2), rnd.uniform(0, 1));
    if (a.terms().size() != 1 || b.terms().size() != 1) continue;
    if (!a.terms().begin()->second.parity() || !b.terms().begin()->second.parity()) continue;
    if (a.terms().begin()->second.size() != 1 || b.terms().begin()->second.size() != 1) continue;
    GradedForm ba = wedge(b, a);
    if (commutation_sign(a, b) < 0) ba = -ba;
    CHECK(wedge(a, b) == ba);
    ++checked;
  }
  CHECK(checked > 20);
  for (int i = 0; i < 50; ++i) {
    GradedForm a = rnd.form(fields, 1, 2, 2, 2, 1);
    GradedForm b = rnd.form(fields, 1, 2, 2, 2, 1);
    GradedForm c = rnd.form(fields, 1, 2, 2, 2, 1);
    CHECK(wedge(wedge(a, b), c) == wedge(a, wedge(b, c)));
  }
}

TEST_CASE("bidegree projections partition a form") {
  Model m({"x"});
  std::vector<Var> fields{m.add("u", Parity::even), m.add("f", Parity::even)};
  GradedForm phi = m.s("u") * m.dx("x") + m.s("f") * m.theta("u");
  CHECK(project_bidegree(phi, 0, 1) == m.s("u") * m.dx("x"));
  GradedForm t = wedge(m.theta("u"), m.dx("x"));
  CHECK(project_bidegree(t, 1, 1) == t);
  CHECK(project_bidegree(t, 0, 2).is_zero());
  Random rnd(m, 2);
  for (int i = 0; i < 20; ++i) {
    GradedForm r = rnd.form(fields, 2, 2, 4, 2, 1);
    GradedForm sum(m.dim());
    for (int k = 0; k <= 2; ++k)
      for (int h = 0; h <= 1; ++h) sum += project_bidegree(r, k, h);
    CHECK(sum == r);
  }
}

TEST_CASE("interior product duality") {
  Model m({"x"});
  m.add("u", Parity::even);
  m.add("c", Parity::odd);
  auto du = GradedDerivation::jet_vector(m.dim(), m.var("u"));
  auto dc = GradedDerivation::jet_vector(m.dim(), m.var("c"));
  CHECK(interior_product(du, m.theta("u")) == GradedForm(m.c(1)));
  CHECK(interior_product(du, m.dx("x")).is_zero());
  CHECK(interior_product(dc, wedge(m.theta("c"), m.theta("c"))) == m.c(2) * m.theta("c"));
  auto dx = GradedDerivation::coordinate_vector(m.dim(), 0);
  CHECK(interior_product(dx, m.dx("x")) == GradedForm(m.c(1)));
}

TEST_CASE("interior product is a graded derivation of the wedge product") {
  Model m({"x", "y"});
  std::vector<Var> fields{m.add("u", Parity::even), m.add("c", Parity::odd)};
  Random rnd(m, 31);
  for (int i = 0; i < 100; ++i) {
    Var v = rnd.jet_var(fields, 1);
    auto u = GradedDerivation::jet_vector(m.dim(), v);
    GradedForm a = rnd.form_bidegree(fields, 1, 2, 1, rnd.uniform(0, 2), rnd.uniform(0, 1));
    GradedForm b = rnd.form(fields, 1, 2, 2, 2, 1);
    if (a.terms().size() != 1 || a.terms().begin()->second.size() != 1) continue;
    const auto& [wa, fa] = *a.terms().begin();
    bool pa = is_odd(word_parity(wa) + *fa.parity());
    int sign = (static_cast<int>(wa.size()) + (pa && v.odd ? 1 : 0)) & 1 ? -1 : 1;
    GradedForm rhs = wedge(interior_product(u, a), b) + wedge(a, interior_product(u, b)) * Rational(sign);
    CHECK(interior_product(u, wedge(a, b)) == rhs);
  }
}

TEST_CASE("horizontal volume forms") {
  Model one({"x"});
  CHECK(horizontal_volume(1) == one.dx("x"));
  CHECK(horizontal_volume(1, 0) == GradedForm(one.c(1)));
  Model two({"x", "y"});
  CHECK(horizontal_volume(2) == wedge(two.dx("x"), two.dx("y")));
  auto d1 = GradedDerivation::coordinate_vector(2, 0);
  auto d2 = GradedDerivation::coordinate_vector(2, 1);
  CHECK(horizontal_volume(2, 0) == interior_product(d1, horizontal_volume(2)));
  CHECK(horizontal_volume(2, 0) == two.dx("y"));
  CHECK(horizontal_volume(2, 1) == interior_product(d2, horizontal_volume(2)));
  CHECK(horizontal_volume(2, 1) == -two.dx("x"));
}
