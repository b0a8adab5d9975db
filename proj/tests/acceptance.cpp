// Acceptance suite: one PASS/FAIL line per criterion, all checks exact.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "commands.hpp"
#include "gvb/eta.hpp"
#include "gvb/homotopy.hpp"
#include "gvb/model.hpp"
#include "gvb/noether.hpp"
#include "gvb/sampling.hpp"
#include "gvb/symmetry.hpp"

using namespace gvb;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

/// Base of dimension n with two even and two odd fields.
struct Space {
  FieldTablePtr table;
  std::vector<Var> fields;

  explicit Space(int n) {
    std::vector<std::string> coords;
    for (int i = 0; i < n; ++i) coords.push_back("x" + std::to_string(i + 1));
    table = std::make_shared<FieldTable>(coords);
    for (auto [name, parity] : {std::pair{"u", Parity::even}, {"v", Parity::even}, {"c", Parity::odd}, {"e", Parity::odd}}) {
      FieldDecl d;
      d.name = name;
      d.parity = parity;
      fields.push_back(table->var(table->add(d)));
    }
  }
  int dim() const { return table->dim(); }
};

class Spaces {
 public:
  Spaces() : spaces_{Space(1), Space(2), Space(3)} {}
  const Space& operator[](int n) const { return spaces_[static_cast<std::size_t>(n - 1)]; }

 private:
  std::vector<Space> spaces_;
};

const Spaces& spaces() {
  static const Spaces s;
  return s;
}

/// Counts failures and keeps the first witness.
struct Tally {
  int cases = 0;
  int failures = 0;
  std::string first;

  void check(bool ok, const std::string& what) {
    ++cases;
    if (ok) return;
    if (failures++ == 0) first = what;
  }
  Outcome outcome(const std::string& summary) const {
    Outcome o;
    o.pass = failures == 0;
    o.detail = summary;
    if (!o.pass) o.detail += "; " + std::to_string(failures) + " failing, first: " + first;
    return o;
  }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Outcome nilpotency() {
  auto start = std::chrono::steady_clock::now();
  Tally t;
  for (int i = 0; i < 200; ++i) {
    const Space& s = spaces()[1 + i % 3];
    Sampler rnd(s.dim(), 1000 + static_cast<std::uint64_t>(i));
    GradedForm phi = rnd.form(s.fields, 3, 3, 3, 2, s.dim());
    GradedForm dh = d_horizontal(phi), dv = d_vertical(phi);
    bool ok = d_horizontal(dh).is_zero() && d_vertical(dv).is_zero() && (d_horizontal(dv) + d_vertical(dh)).is_zero() &&
              exterior_derivative(phi) == dh + dv;
    t.check(ok, to_string(*s.table, phi));
  }
  double secs = seconds_since(start);
  Outcome o = t.outcome("200 random forms, n = 1..3, " + std::to_string(static_cast<int>(secs * 1000)) + " ms");
  if (secs >= 60) {
    o.pass = false;
    o.detail += "; exceeded 60 s";
  }
  return o;
}

Outcome projector() {
  Tally t;
  for (int i = 0; i < 100; ++i) {
    const Space& s = spaces()[1 + i % 3];
    Sampler rnd(s.dim(), 2000 + static_cast<std::uint64_t>(i));
    int k = 1 + i % 2;
    GradedForm sigma = rnd.form_bidegree(s.fields, 3, 3, 3, k, s.dim());
    GradedForm r = rho_projector(sigma);
    t.check(rho_projector(r) == r, "rho(rho) on " + to_string(*s.table, sigma));
    GradedForm psi = rnd.form_bidegree(s.fields, 2, 3, 3, k, s.dim() - 1);
    GradedForm exact = d_horizontal(psi);
    t.check(exact.is_zero() || rho_projector(exact).is_zero(), "rho(d_H) on " + to_string(*s.table, psi));
  }
  return t.outcome("100 forms for rho^2 = rho and 100 for rho d_H = 0, contact degree 1..2");
}

Outcome lepage() {
  Tally t;
  int with_odd = 0;
  for (int i = 0; i < 100; ++i) {
    const Space& s = spaces()[1 + i % 3];
    Sampler rnd(s.dim(), 3000 + static_cast<std::uint64_t>(i));
    GradedScalar density = rnd.scalar_of(Parity::even, s.fields, 2, 3, 4);
    for (const Var& v : density.variables())
      if (v.odd) {
        ++with_odd;
        break;
      }
    Lagrangian l(s.table, density);
    GradedForm residual = exterior_derivative(l.form()) - euler_lagrange(l).form + d_horizontal(lepage_equivalent(l));
    t.check(residual.is_zero(), to_string(*s.table, density));
  }
  return t.outcome("100 Lagrangians of jet order <= 2, " + std::to_string(with_odd) + " with odd fields");
}

Outcome first_variation() {
  Tally t;
  int non_vertical = 0, odd = 0;
  for (int i = 0; i < 100; ++i) {
    const Space& s = spaces()[1 + i % 3];
    const int n = s.dim();
    Sampler rnd(n, 4000 + static_cast<std::uint64_t>(i));
    Lagrangian l(s.table, rnd.scalar_of(Parity::even, s.fields, 2, 3, 3));
    Parity p = i % 4 == 3 ? Parity::odd : Parity::even;
    std::vector<GradedScalar> h(static_cast<std::size_t>(n), GradedScalar(n));
    bool horizontal = i % 3 != 0;
    if (horizontal)
      for (auto& c : h) c = rnd.scalar_of(p, s.fields, 1, 2, 2);
    std::map<Var, GradedScalar> vert;
    for (const Var& f : s.fields) vert.emplace(f, rnd.scalar_of(f.parity() + p, s.fields, 1, 2, 2));
    auto ups = GradedDerivation::prolonged(n, p, h, vert);
    non_vertical += horizontal;
    odd += is_odd(p);
    t.check(first_variational_residual(l, ups).is_zero(), to_string(*s.table, l.density()));
  }
  return t.outcome("100 pairs, " + std::to_string(non_vertical) + " non-vertical, " + std::to_string(odd) + " odd");
}

Outcome eta_involution() {
  Tally t;
  int length_reading_failures = 0;
  for (int i = 0; i < 200; ++i) {
    const Space& s = spaces()[1 + i % 3];
    const int n = s.dim();
    Sampler rnd(n, 5000 + static_cast<std::uint64_t>(i));
    CoefficientTuple f;
    for (const MultiIndex& lam : MultiIndex::all_up_to(n, 3))
      if (rnd.uniform(0, 2) == 0) f.emplace(lam, rnd.scalar(s.fields, 2, 2, 2));
    t.check(prune(eta_transform(eta_transform(f, n), n)) == prune(f), "tuple with " + std::to_string(f.size()) + " entries");
    if (n > 1) {
      auto g = eta_transform(eta_transform(f, n, EtaConvention::length_factorial), n, EtaConvention::length_factorial);
      length_reading_failures += prune(g) != prune(f);
    }
  }
  return t.outcome("200 tuples, |Lambda| <= 3; per-index factorials; the length-factorial reading fails on " +
                   std::to_string(length_reading_failures) + " of the n > 1 tuples");
}

Outcome homotopies() {
  struct Counter {
    int cases = 0;
    int failures = 0;
  };
  std::map<std::string, Counter> counts;
  auto record = [&](const std::string& op, bool ok) {
    ++counts[op].cases;
    counts[op].failures += !ok;
  };
  auto guarded = [&](const std::string& op, const std::function<bool()>& check) {
    try {
      record(op, check());
    } catch (const Error&) {
      record(op, false);
    }
  };

  std::uint64_t seed = 6000;
  auto done = [&](const std::string& op) { return counts[op].cases >= 50; };
  for (int attempt = 0; attempt < 2000 && !(done("horizontal") && done("contact")); ++attempt) {
    const Space& s = spaces()[2 + attempt % 2];
    const int n = s.dim();
    Sampler rnd(n, seed++);
    int m = rnd.uniform(1, n - 1);
    if (!done("horizontal")) {
      GradedForm phi = d_horizontal(rnd.form_bidegree(s.fields, 2, 3, 3, 0, m - 1));
      if (!phi.is_zero()) guarded("horizontal", [&] { return d_horizontal(homotopy_horizontal(phi).total()) == phi; });
    }
    if (!done("contact")) {
      GradedForm phi = d_horizontal(rnd.form_bidegree(s.fields, 2, 2, 3, 1, m - 1));
      if (!phi.is_zero()) guarded("contact", [&] { return d_horizontal(homotopy_contact(phi)) == phi; });
    }
  }
  for (int attempt = 0; attempt < 2000 && !(done("density") && done("rho_kernel")); ++attempt) {
    const Space& s = spaces()[1 + attempt % 3];
    const int n = s.dim();
    Sampler rnd(n, seed++);
    if (!done("density")) {
      GradedForm phi = d_horizontal(rnd.form_bidegree(s.fields, 2, 3, 3, 0, n - 1));
      if (!phi.is_zero()) {
        GradedForm a, b;
        guarded("density", [&] {
          a = homotopy_density(phi).total();
          return d_horizontal(a) == phi;
        });
        guarded("olver", [&] {
          b = homotopy_olver(phi).total();
          return d_horizontal(b) == phi;
        });
        record("density_vs_olver", d_horizontal(a) == d_horizontal(b));
      }
    }
    if (!done("rho_kernel")) {
      GradedForm sigma = d_horizontal(rnd.form_bidegree(s.fields, 2, 2, 3, 1, n - 1));
      if (!sigma.is_zero()) guarded("rho_kernel", [&] { return d_horizontal(homotopy_rho_kernel(sigma)) == sigma; });
    }
  }

  Outcome o;
  for (const auto& [op, c] : counts) {
    o.detail += (o.detail.empty() ? "" : ", ") + op + " " + std::to_string(c.cases - c.failures) + "/" +
                std::to_string(c.cases);
    if (c.failures > 0 || c.cases < 50) o.pass = false;
  }
  return o;
}

/// Programmatic fixtures, built without the parser.
struct Fixture {
  FieldTablePtr table;
  std::unique_ptr<Lagrangian> lagrangian;
  std::unique_ptr<NoetherTower> tower;

  explicit Fixture(std::vector<std::string> coords) : table(std::make_shared<FieldTable>(std::move(coords))) {}
  int dim() const { return table->dim(); }
  void field(const std::string& name) {
    FieldDecl d;
    d.name = name;
    table->add(d);
  }
  GradedScalar s(const std::string& name, std::vector<int> dirs = {}) const {
    return GradedScalar::variable(dim(), table->var(name, MultiIndex::from_directions(dirs)));
  }
};

Fixture maxwell(int flip = 1) {
  Fixture f({"t", "x"});
  f.field("A0");
  f.field("A1");
  GradedScalar F = f.s("A1", {0}) - f.s("A0", {1});
  f.lagrangian = std::make_unique<Lagrangian>(f.table, Rational(1, 2) * F * F);
  f.tower = std::make_unique<NoetherTower>(f.table);
  f.tower->add_identity(0, "r", f.s("bar_A0", {0}) + Rational(flip) * f.s("bar_A1", {1}));
  return f;
}

Outcome maxwell_fixture() {
  Fixture f = maxwell();
  const int n = f.dim();
  Tally t;
  // E_A = Σ (-1)^{|Λ|} d_Λ ∂L/∂A_Λ by hand: E^{A0} = d_x F, E^{A1} = -d_t F
  auto el = euler_lagrange(*f.lagrangian);
  t.check(el.components.at(f.table->var("A0")) == f.s("A1", {0, 1}) - f.s("A0", {1, 1}), "E^A0");
  t.check(el.components.at(f.table->var("A1")) == f.s("A0", {0, 1}) - f.s("A1", {0, 0}), "E^A1");

  t.check(verify_noether(*f.lagrangian, *f.tower, f.tower->stage(0).front()).holds, "Noether identity");
  t.check(!verify_tower(*f.lagrangian, *f.tower).has_value(), "tower");

  auto u = gauge_components(*f.tower);
  t.check(u.at(f.table->var("A0")) == -f.s("gh_r", {0}) && u.at(f.table->var("A1")) == -f.s("gh_r", {1}),
          "gauge components");
  GaugeCertificate cert = certify_gauge_symmetry(*f.lagrangian, *f.tower);
  t.check(cert.verdict.symmetric, "is_variational_symmetry");
  t.check(!cert.sigma.is_zero() && d_horizontal(cert.sigma) == wedge(GradedForm(cert.density), horizontal_volume(n)),
          "certificate d_H sigma = u^A E_A omega");
  GradedDerivation gauge = gauge_symmetry(*f.tower);
  t.check(d_horizontal(cert.verdict.current) ==
              -interior_product(gauge.vertical_part(), euler_lagrange(*f.lagrangian).form),
          "conserved current");

  KoszulTate kt = koszul_tate(*f.lagrangian, *f.tower);
  auto squares = koszul_tate_squares(*f.lagrangian, *f.tower, kt);
  bool nilpotent = true;
  for (const auto& [id, sq] : squares) nilpotent = nilpotent && sq.is_zero();
  t.check(nilpotent && squares.size() == 6, "delta_KT^2");

  const NoetherOperator& op = f.tower->stage(0).front();
  t.check(reproduce_identities(*f.tower, u, 0).at(op.antifield) == op.delta, "second-Noether round trip");
  return t.outcome("EL, identity, gauge symmetry with certificate, delta_KT^2 = 0 on " + std::to_string(squares.size()) +
                   " generators, round trip");
}

Fixture two_form(int flip0 = 1, int flip1 = 1) {
  Fixture f({"x1", "x2", "x3"});
  for (const char* b : {"B12", "B13", "B23"}) f.field(b);
  GradedScalar H = f.s("B23", {0}) - f.s("B13", {1}) + f.s("B12", {2});
  f.lagrangian = std::make_unique<Lagrangian>(f.table, Rational(1, 2) * H * H);
  f.tower = std::make_unique<NoetherTower>(f.table);
  f.tower->add_identity(0, "r1", -f.s("bar_B12", {1}) - f.s("bar_B13", {2}));
  f.tower->add_identity(0, "r2", f.s("bar_B12", {0}) - Rational(flip0) * f.s("bar_B23", {2}));
  f.tower->add_identity(0, "r3", f.s("bar_B13", {0}) + f.s("bar_B23", {1}));
  f.tower->add_identity(1, "q", f.s("bar_r1", {0}) + Rational(flip1) * f.s("bar_r2", {1}) + f.s("bar_r3", {2}));
  return f;
}

Outcome two_form_fixture() {
  Tally t;
  Fixture f = two_form();
  auto failure = verify_tower(*f.lagrangian, *f.tower);
  t.check(!failure && f.tower->verified(0) && f.tower->verified(1), "stage 0 and stage 1 identities");

  KoszulTate kt = koszul_tate(*f.lagrangian, *f.tower);
  bool nilpotent = true;
  for (const auto& [id, sq] : koszul_tate_squares(*f.lagrangian, *f.tower, kt)) nilpotent = nilpotent && sq.is_zero();
  t.check(nilpotent, "two-stage delta_KT^2");

  auto u1 = higher_gauge_components(*f.tower, 1);
  for (int nu = 0; nu < 3; ++nu) {
    std::string ghost = "gh_r" + std::to_string(nu + 1);
    t.check(u1.at(f.table->var(ghost)) == -f.s("gh_q", {nu}), "u^(1) for " + ghost);
  }
  for (const auto& [target, r] : ascent_relation_residual(*f.lagrangian, *f.tower, 1))
    t.check(r.is_zero(), "ascent relation residual");

  Fixture bad0 = two_form(-1, 1);
  auto fail0 = verify_tower(*bad0.lagrangian, *bad0.tower);
  t.check(fail0 && fail0->first->stage == 0 && !fail0->second.witness.is_zero(), "stage-0 mutation");
  Fixture bad1 = two_form(1, -1);
  auto fail1 = verify_tower(*bad1.lagrangian, *bad1.tower);
  t.check(fail1 && fail1->first->stage == 1 && !fail1->second.witness.is_zero(), "stage-1 mutation");
  return t.outcome("identities verified, delta_KT^2 = 0, u^(1) synthesized, ascent residual 0, both mutations caught");
}

int run_cli(const std::vector<std::string>& args, std::string& out) {
  std::vector<const char*> argv{"gvb"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream o, e;
  int code = cli::main_entry(static_cast<int>(argv.size()), argv.data(), o, e);
  out = o.str() + e.str();
  return code;
}

Outcome parser_printer() {
  Tally t;
  const Space& s = spaces()[3];
  Scope scope(s.table);
  for (int i = 0; i < 100; ++i) {
    Sampler rnd(3, 7000 + static_cast<std::uint64_t>(i));
    GradedScalar f = rnd.scalar(s.fields, 3, 3, 5);
    t.check(parse_scalar(to_string(*s.table, f), scope) == f, to_string(*s.table, f));
    GradedForm phi = rnd.form(s.fields, 3, 3, 4, 2, 3);
    t.check(parse_form(to_string(*s.table, phi), scope) == phi, to_string(*s.table, phi));
  }

  const std::string dir = GVB_MODELS_DIR;
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"build-kt", dir + "/maxwell.model"},
           {"gauge-symmetry", "--format", "kv", dir + "/two_form.model"},
           {"homotopy", dir + "/scalar_field.model"}}) {
    std::string a, b;
    run_cli(args, a);
    run_cli(args, b);
    t.check(a == b && !a.empty(), "repeatable report for " + args.front());
  }

  std::string out;
  t.check(run_cli({"check-noether", dir + "/maxwell.model"}, out) == 0, "exit 0");
  t.check(run_cli({"check-noether", dir + "/broken.model"}, out) == 1 && out.find("witness") != std::string::npos,
          "exit 1 with witness");
  t.check(run_cli({"lepage", dir + "/invalid.model"}, out) == 2 && out.find(":3:16:") != std::string::npos,
          "exit 2 with position");
  t.check(run_cli({"euler-lagrange", dir + "/missing.model"}, out) == 2, "exit 2 for a missing file");
  return t.outcome("200 values round-tripped, byte-identical reports, exit codes 0/1/2");
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {"nilpotency suite", nilpotency},
      {"projector suite", projector},
      {"Lepage identity", lepage},
      {"first variational formula", first_variation},
      {"eta involution", eta_involution},
      {"homotopy round trips", homotopies},
      {"Maxwell fixture", maxwell_fixture},
      {"reducible 2-form fixture", two_form_fixture},
      {"parser and printer", parser_printer},
  };
  int failed = 0;
  int index = 0;
  for (const Criterion& c : criteria) {
    ++index;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << index << "] " << c.name << ": " << o.detail << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
