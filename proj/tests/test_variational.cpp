#include "doctest.h"

#include "gvb/symmetry.hpp"
#include "gvb/variational.hpp"
#include "support.hpp"

using namespace gvb;
using gvb::testing::Model;
using gvb::testing::Random;

namespace {

GradedForm as_form(const GradedScalar& f) { return GradedForm(f); }

}  // namespace

TEST_CASE("vertical differential") {
  Model m({"x"});
  m.add("u", Parity::even);
  m.add("c", Parity::odd);
  CHECK(d_vertical(as_form(m.s("u"))) == m.theta("u"));
  GradedScalar ux = m.s("u", {"x"});
  CHECK(d_vertical(as_form(ux * ux)) == m.c(2) * ux * m.theta("u", {"x"}));
  // graded Leibniz: d_V(c c_x) = d_V(c) c_x + c d_V(c_x)
  GradedForm lhs = d_vertical(as_form(m.s("c") * m.s("c", {"x"})));
  CHECK(lhs == wedge(m.theta("c"), as_form(m.s("c", {"x"}))) + wedge(as_form(m.s("c")), m.theta("c", {"x"})));
  CHECK(lhs == wedge(m.theta("c"), as_form(m.s("c", {"x"}))) - wedge(m.theta("c", {"x"}), as_form(m.s("c"))));
}

TEST_CASE("horizontal differential") {
  Model m({"x"});
  m.add("u", Parity::even);
  CHECK(d_horizontal(as_form(m.s("u"))) == m.s("u", {"x"}) * m.dx("x"));
  CHECK(d_horizontal(m.theta("u")) == wedge(m.dx("x"), m.theta("u", {"x"})));
}

TEST_CASE("bicomplex relations on random forms") {
  Model m({"x", "y"});
  std::vector<Var> fields{m.add("u", Parity::even), m.add("c", Parity::odd)};
  Random rnd(m, 41);
  for (int i = 0; i < 40; ++i) {
    GradedForm phi = rnd.form(fields, 2, 2, 3, 2, 1);
    CHECK(d_horizontal(d_horizontal(phi)).is_zero());
    CHECK(d_vertical(d_vertical(phi)).is_zero());
    CHECK((d_horizontal(d_vertical(phi)) + d_vertical(d_horizontal(phi))).is_zero());
    CHECK(exterior_derivative(exterior_derivative(phi)).is_zero());
  }
}

TEST_CASE("rho projector") {
  Model m({"x"});
  std::vector<Var> fields{m.add("u", Parity::even), m.add("f", Parity::even)};
  GradedForm fixed = wedge(m.s("f") * m.theta("u"), m.omega());
  CHECK(rho_projector(fixed) == fixed);
  GradedForm shifted = wedge(m.s("f") * m.theta("u", {"x"}), m.omega());
  CHECK(rho_projector(shifted) == -wedge(m.s("f", {"x"}) * m.theta("u"), m.omega()));
  CHECK_THROWS_AS(rho_projector(m.theta("u")), BidegreeError);
  CHECK_THROWS_AS(rho_projector(GradedForm(m.s("u")) * Rational(1) + m.s("u") * m.omega()), BidegreeError);

  Model m2({"x", "y"});
  std::vector<Var> f2{m2.add("u", Parity::even), m2.add("c", Parity::odd)};
  Random rnd(m2, 43);
  for (int i = 0; i < 30; ++i) {
    GradedForm phi = rnd.form_bidegree(f2, 2, 2, 3, rnd.uniform(1, 2), 2);
    if (phi.is_zero()) continue;
    GradedForm r = rho_projector(phi);
    if (!r.is_zero()) CHECK(rho_projector(r) == r);
    GradedForm psi = rnd.form_bidegree(f2, 2, 2, 3, 1, 1);
    GradedForm dpsi = d_horizontal(psi);
    if (!dpsi.is_zero()) CHECK(rho_projector(dpsi).is_zero());
  }
}

TEST_CASE("Euler-Lagrange operator") {
  Model m({"x"});
  m.add("u", Parity::even);
  m.add("c", Parity::odd);
  GradedScalar ux = m.s("u", {"x"});
  auto el = [&](const GradedScalar& density, const std::string& field) {
    return euler_lagrange(Lagrangian(m.table, density)).components.at(m.var(field));
  };
  CHECK(el(m.c(1, 2) * ux * ux, "u") == -m.s("u", {"x", "x"}));
  CHECK(el(m.s("u"), "u") == m.c(1));
  CHECK(el(m.s("c") * m.s("c", {"x"}), "c") == m.c(2) * m.s("c", {"x"}));
  CHECK(el(total_derivative(m.s("u") * ux, 0), "u").is_zero());
  CHECK_THROWS(Lagrangian(m.table, m.s("c")));
}

TEST_CASE("delta L equals rho of dL") {
  Model m({"x", "y"});
  std::vector<Var> fields{m.add("u", Parity::even), m.add("c", Parity::odd), m.add("e", Parity::odd)};
  Random rnd(m, 47);
  for (int i = 0; i < 30; ++i) {
    Lagrangian l(m.table, rnd.scalar_of(Parity::even, fields, 2, 3, 3));
    auto el = euler_lagrange(l);
    GradedForm dl = exterior_derivative(l.form());
    if (dl.is_zero()) {
      CHECK(el.form.is_zero());
      continue;
    }
    CHECK(rho_projector(dl) == el.form);
  }
}

TEST_CASE("Lepage equivalent") {
  Model m({"x"});
  std::vector<Var> fields{m.add("u", Parity::even), m.add("c", Parity::odd)};
  GradedScalar ux = m.s("u", {"x"});
  Lagrangian free(m.table, m.c(1, 2) * ux * ux);
  CHECK(lepage_equivalent(free) == m.c(1, 2) * ux * ux * m.dx("x") + ux * m.theta("u"));
  Lagrangian linear(m.table, m.s("u"));
  CHECK(lepage_equivalent(linear) == m.s("u") * m.dx("x"));

  Model m2({"x", "y"});
  std::vector<Var> f2{m2.add("u", Parity::even), m2.add("c", Parity::odd), m2.add("e", Parity::odd)};
  Random rnd(m2, 53);
  for (int i = 0; i < 30; ++i) {
    Lagrangian l(m2.table, rnd.scalar_of(Parity::even, f2, 2, 3, 3));
    GradedForm dl = exterior_derivative(l.form());
    CHECK(dl == euler_lagrange(l).form - d_horizontal(lepage_equivalent(l)));
  }
}

TEST_CASE("prolongation") {
  Model m({"x"});
  m.add("u", Parity::even);
  Var u = m.var("u");
  auto du = GradedDerivation::prolonged(1, Parity::even, {}, {{u, m.c(1)}});
  CHECK(du.contact_coefficient(m.var("u", {"x"})).is_zero());
  auto xdu = GradedDerivation::prolonged(1, Parity::even, {}, {{u, m.x("x")}});
  CHECK(xdu.contact_coefficient(m.var("u", {"x"})) == m.c(1));
  auto dx = GradedDerivation::prolonged(1, Parity::even, {m.c(1)}, {});
  CHECK(dx.contact_coefficient(u) == -m.s("u", {"x"}));
  CHECK(dx.contact_coefficient(m.var("u", {"x"})) == -m.s("u", {"x", "x"}));
}

TEST_CASE("prolonged derivations preserve the contact ideal") {
  Model m({"x", "y"});
  std::vector<Var> fields{m.add("u", Parity::even), m.add("v", Parity::even)};
  Random rnd(m, 59);
  for (int i = 0; i < 20; ++i) {
    std::vector<GradedScalar> h{rnd.scalar(fields, 1, 2, 2), rnd.scalar(fields, 1, 2, 2)};
    std::map<Var, GradedScalar> v{{fields[0], rnd.scalar(fields, 1, 2, 2)}};
    auto ups = GradedDerivation::prolonged(2, Parity::even, h, v);
    Var target = rnd.jet_var(fields, 2);
    GradedForm image = lie_derivative(ups, GradedForm::theta(2, target));
    // the image has no purely horizontal part: it lies in the contact ideal
    CHECK(project_contact(image, 0).is_zero());
  }
}

TEST_CASE("Lie derivative") {
  Model m({"x"});
  Var u = m.add("u", Parity::even);
  GradedScalar ux = m.s("u", {"x"});
  Lagrangian l(m.table, m.c(1, 2) * ux * ux);
  auto du = GradedDerivation::prolonged(1, Parity::even, {}, {{u, m.c(1)}});
  CHECK(lie_derivative(du, l.form()).is_zero());
  auto scale = GradedDerivation::prolonged(1, Parity::even, {}, {{u, m.s("u")}});
  CHECK(lie_derivative(scale, l.form()) == ux * ux * m.omega());
}

TEST_CASE("first variational formula") {
  Model m({"x", "y"});
  std::vector<Var> fields{m.add("u", Parity::even), m.add("c", Parity::odd)};
  Random rnd(m, 61);
  for (int i = 0; i < 20; ++i) {
    Lagrangian l(m.table, rnd.scalar_of(Parity::even, fields, 1, 3, 3));
    Parity p = rnd.coin() ? Parity::odd : Parity::even;
    std::vector<GradedScalar> h;
    if (rnd.coin()) h = {rnd.scalar_of(p, fields, 1, 2, 2), rnd.scalar_of(p, fields, 1, 2, 2)};
    std::map<Var, GradedScalar> v{{fields[0], rnd.scalar_of(p, fields, 1, 2, 2)},
                                  {fields[1], rnd.scalar_of(p + Parity::odd, fields, 1, 2, 2)}};
    auto ups = GradedDerivation::prolonged(2, p, h, v);
    CHECK(first_variational_residual(l, ups).is_zero());
  }
  Lagrangian zero(m.table, GradedScalar(2));
  CHECK(first_variational_residual(zero, GradedDerivation::coordinate_vector(2, 0)).is_zero());
}

TEST_CASE("variational symmetries and currents") {
  Model m({"x"});
  Var u = m.add("u", Parity::even);
  GradedScalar ux = m.s("u", {"x"});
  Lagrangian l(m.table, m.c(1, 2) * ux * ux);

  auto shift = is_variational_symmetry(l, GradedDerivation::prolonged(1, Parity::even, {}, {{u, m.c(1)}}));
  CHECK(shift.symmetric);
  CHECK(shift.current == GradedForm(ux));

  auto scale = is_variational_symmetry(l, GradedDerivation::prolonged(1, Parity::even, {}, {{u, m.s("u")}}));
  CHECK(!scale.symmetric);
  CHECK(scale.witness == wedge(m.theta("u"), m.c(-2) * m.s("u", {"x", "x"}) * m.dx("x")));

  auto none = is_variational_symmetry(l, GradedDerivation::prolonged(1, Parity::even, {}, {}));
  CHECK(none.symmetric);
  CHECK(none.sigma.is_zero());

  auto translation = is_variational_symmetry(l, GradedDerivation::coordinate_vector(1, 0));
  CHECK(translation.symmetric);
  CHECK(translation.current == GradedForm(m.c(-1, 2) * ux * ux));

  auto bad = is_variational_symmetry(l, GradedDerivation::prolonged(1, Parity::even, {ux}, {}));
  CHECK(!bad.symmetric);
  CHECK(bad.reason.find("projectable") != std::string::npos);
}
