#include "gvb/noether.hpp"

#include <set>

#include "gvb/homotopy.hpp"

namespace gvb {

namespace {

struct FactorCount {
  /// Antifield factors per stage (stage -1 for s̄).
  std::map<int, int> by_stage;
  int ghosts = 0;
  int total() const {
    int t = 0;
    for (const auto& [s, c] : by_stage) t += c;
    return t;
  }
};

FactorCount count_factors(const FieldTable& table, const Monomial& m) {
  FactorCount fc;
  auto visit = [&](const Var& v, int power) {
    if (v.is_coordinate()) return;
    const FieldDecl& d = table.decl(v.field);
    if (d.kind == FieldKind::antifield) fc.by_stage[d.stage] += power;
    if (d.kind == FieldKind::ghost) fc.ghosts += power;
  };
  for (const auto& [v, p] : m.even) visit(v, p);
  for (const auto& v : m.odd) visit(v, 1);
  return fc;
}

GradedScalar filter_terms(const GradedScalar& f, const std::function<bool(const Monomial&)>& keep) {
  GradedScalar r(f.dim());
  for (const auto& [m, c] : f.terms())
    if (keep(m)) r.add_term(m, c);
  return r;
}

Var ghost_var(const FieldTable& table, const NoetherOperator& op) { return table.var(op.ghost); }

GradedScalar euler(const Lagrangian& lagrangian, const Var& field) {
  return variational_derivative(lagrangian.density(), field);
}

std::vector<Var> all_generators(const FieldTable& table) {
  std::vector<Var> out;
  for (int id = 0; id < table.size(); ++id)
    if (table.decl(id).kind != FieldKind::auxiliary) out.push_back(table.var(id));
  return out;
}

}  // namespace

GradedScalar NoetherOperator::linear_part(const FieldTable& table) const {
  return filter_terms(delta, [&](const Monomial& m) { return count_factors(table, m).total() == 1; });
}

GradedScalar NoetherOperator::h_term(const FieldTable& table) const {
  return filter_terms(delta, [&](const Monomial& m) { return count_factors(table, m).total() != 1; });
}

CoefficientTuple NoetherOperator::coefficients(const FieldTable& table, int target) const {
  CoefficientTuple out;
  GradedScalar linear = linear_part(table);
  for (const Var& v : linear.variables()) {
    if (v.field != target) continue;
    out.try_emplace(v.jet, linear.dim()).first->second += partial(linear, v, Side::right);
  }
  return prune(out);
}

NoetherTower::NoetherTower(FieldTablePtr table) : table_(std::move(table)) {
  for (int id : table_->ids(FieldKind::field)) {
    bool present = false;
    for (int a : table_->ids(FieldKind::antifield, -1))
      if (table_->decl(a).source == id) present = true;
    if (present) continue;
    FieldDecl d;
    d.name = "bar_" + table_->decl(id).name;
    d.parity = table_->decl(id).parity + Parity::odd;
    d.kind = FieldKind::antifield;
    d.stage = -1;
    d.source = id;
    table_->add(d);
  }
}

int NoetherTower::antifield_of(int field) const {
  for (int a : table_->ids(FieldKind::antifield, -1))
    if (table_->decl(a).source == field) return a;
  throw UnknownSymbolError("field '" + table_->decl(field).name + "' has no antifield");
}

void NoetherTower::validate_shape(int stage, const GradedScalar& delta) const {
  for (const auto& [m, c] : delta.terms()) {
    FactorCount fc = count_factors(*table_, m);
    if (fc.ghosts > 0) throw UnsupportedShapeError("Noether operators may not contain ghosts");
    bool linear = fc.total() == 1 && fc.by_stage.count(stage - 1) == 1;
    bool bilinear = false;
    if (stage >= 1 && fc.total() == 2) {
      if (stage == 1)
        bilinear = fc.by_stage.count(-1) == 1 && fc.by_stage.at(-1) == 2;
      else
        bilinear = fc.by_stage.count(stage - 2) == 1 && fc.by_stage.count(-1) == 1;
    }
    if (!linear && !bilinear)
      throw UnsupportedShapeError("stage-" + std::to_string(stage) +
                                  " identity term is neither linear in stage-" + std::to_string(stage - 1) +
                                  " antifields nor a bilinear h-term");
  }
}

const NoetherOperator& NoetherTower::add_identity(int stage, const std::string& name, const GradedScalar& delta) {
  if (stage < 0 || stage > depth()) throw OrderingError("identities must be declared stage by stage");
  auto parity = delta.parity();
  if (!parity) throw ModelError("identity '" + name + "' has mixed parity");
  validate_shape(stage, delta);

  FieldDecl bar;
  bar.name = "bar_" + name;
  bar.parity = *parity + Parity::odd;
  bar.kind = FieldKind::antifield;
  bar.stage = stage;
  NoetherOperator op;
  op.name = name;
  op.stage = stage;
  op.delta = delta;
  op.antifield = table_->add(bar);
  FieldDecl gh;
  gh.name = "gh_" + name;
  gh.parity = bar.parity + Parity::odd;
  gh.kind = FieldKind::ghost;
  gh.stage = stage;
  gh.source = op.antifield;
  op.ghost = table_->add(gh);

  if (stage == depth()) {
    stages_.emplace_back();
    verified_.emplace_back();
  }
  stages_[static_cast<std::size_t>(stage)].push_back(op);
  verified_[static_cast<std::size_t>(stage)].reset();
  return stages_[static_cast<std::size_t>(stage)].back();
}

void NoetherTower::mark_verified(int k, bool ok) { verified_.at(static_cast<std::size_t>(k)) = ok; }

bool NoetherTower::verified(int k) const {
  const auto& v = verified_.at(static_cast<std::size_t>(k));
  return v.has_value() && *v;
}

bool NoetherTower::all_verified() const {
  for (int k = 0; k < depth(); ++k)
    if (!verified(k)) return false;
  return true;
}

GradedScalar KoszulTate::apply(const GradedScalar& f) const {
  GradedScalar r(dim_);
  for (const Var& v : f.variables()) {
    auto it = images_.find(v.field);
    if (it == images_.end() || it->second.is_zero()) continue;
    r += partial(f, v, Side::right) * total_derivative(it->second, v.jet);
  }
  return r;
}

GradedScalar KoszulTate::image(int id) const {
  auto it = images_.find(id);
  return it == images_.end() ? GradedScalar(dim_) : it->second;
}

KoszulTate delta_bar(const Lagrangian& lagrangian, const NoetherTower& tower) {
  std::map<int, GradedScalar> images;
  for (const Var& field : lagrangian.fields()) images.emplace(tower.antifield_of(field.field), euler(lagrangian, field));
  return KoszulTate(lagrangian.dim(), std::move(images));
}

CheckResult verify_noether(const Lagrangian& lagrangian, const NoetherTower& tower, const NoetherOperator& op) {
  if (op.stage != 0) throw OrderingError("verify_noether expects a stage-0 identity");
  GradedScalar residual = delta_bar(lagrangian, tower).apply(op.delta);
  return {residual.is_zero(), residual};
}

CheckResult verify_stage(const Lagrangian& lagrangian, const NoetherTower& tower, const NoetherOperator& op) {
  if (op.stage == 0) return verify_noether(lagrangian, tower, op);
  if (!tower.verified(op.stage - 1))
    throw OrderingError("stage " + std::to_string(op.stage - 1) + " must be verified before stage " +
                        std::to_string(op.stage));
  KoszulTate kt = delta_bar(lagrangian, tower);
  std::map<int, GradedScalar> images = kt.images();
  for (const NoetherOperator& lower : tower.stage(op.stage - 1))
    images[lower.antifield] = lower.linear_part(*tower.table());
  GradedScalar residual = KoszulTate(lagrangian.dim(), std::move(images)).apply(op.delta);
  return {residual.is_zero(), residual};
}

std::optional<std::pair<const NoetherOperator*, CheckResult>> verify_tower(const Lagrangian& lagrangian,
                                                                          NoetherTower& tower) {
  for (int k = 0; k < tower.depth(); ++k) {
    bool ok = true;
    std::optional<std::pair<const NoetherOperator*, CheckResult>> failure;
    for (const NoetherOperator& op : tower.stage(k)) {
      CheckResult r = verify_stage(lagrangian, tower, op);
      if (!r.holds && ok) {
        ok = false;
        failure.emplace(&op, r);
      }
    }
    tower.mark_verified(k, ok);
    if (!ok) return failure;
  }
  return std::nullopt;
}

KoszulTate koszul_tate(const Lagrangian& lagrangian, const NoetherTower& tower) {
  if (!tower.all_verified()) throw OrderingError("the Koszul-Tate operator needs a verified tower");
  std::map<int, GradedScalar> images = delta_bar(lagrangian, tower).images();
  for (int k = 0; k < tower.depth(); ++k)
    for (const NoetherOperator& op : tower.stage(k)) images[op.antifield] = op.delta;
  return KoszulTate(lagrangian.dim(), std::move(images));
}

std::map<int, GradedScalar> koszul_tate_squares(const Lagrangian& lagrangian, const NoetherTower& tower,
                                                const KoszulTate& kt) {
  std::map<int, GradedScalar> out;
  const FieldTable& table = *tower.table();
  for (int id = 0; id < table.size(); ++id) {
    if (table.decl(id).kind == FieldKind::auxiliary) continue;
    out.emplace(id, kt.apply(kt.image(id)));
  }
  (void)lagrangian;
  return out;
}

GradedScalar extended_lagrangian(const Lagrangian& lagrangian, const NoetherTower& tower) {
  GradedScalar le = lagrangian.density();
  for (int k = 0; k < tower.depth(); ++k)
    for (const NoetherOperator& op : tower.stage(k))
      le += GradedScalar::variable(le.dim(), ghost_var(*tower.table(), op)) * op.delta;
  return le;
}

ExtendedCheck check_extended_lagrangian(const Lagrangian& lagrangian, const NoetherTower& tower) {
  const int dim = lagrangian.dim();
  const FieldTable& table = *tower.table();
  KoszulTate kt = koszul_tate(lagrangian, tower);
  GradedScalar le = extended_lagrangian(lagrangian, tower);
  ExtendedCheck check;
  check.exact_symmetry = kt.apply(le).is_zero();
  check.density = GradedScalar(dim);
  for (const auto& [id, img] : kt.images())
    check.density += variational_derivative(le, table.var(id), Side::right) * img;
  auto el = euler_lagrange(check.density, all_generators(table));
  check.trivial = el.form.is_zero();
  check.sigma = GradedForm(dim);
  if (check.trivial) check.sigma = homotopy_density(wedge(GradedForm(check.density), horizontal_volume(dim))).total();
  return check;
}

std::map<Var, GradedScalar> gauge_components(const NoetherTower& tower) {
  const FieldTable& table = *tower.table();
  std::map<Var, GradedScalar> u;
  if (tower.empty()) return u;
  const int dim = table.dim();
  for (int field : table.ids(FieldKind::field)) {
    GradedScalar component(dim);
    for (const NoetherOperator& op : tower.stage(0)) {
      CoefficientTuple eta = eta_transform(op.coefficients(table, tower.antifield_of(field)), dim);
      for (const auto& [lam, coef] : eta)
        component += GradedScalar::variable(dim, table.var(op.ghost, lam)) * coef;
    }
    u.emplace(table.var(field), component);
  }
  return u;
}

std::map<Var, GradedScalar> higher_gauge_components(const NoetherTower& tower, int k) {
  const FieldTable& table = *tower.table();
  if (k < 1 || k >= tower.depth()) throw OrderingError("no stage-" + std::to_string(k) + " identities");
  const int dim = table.dim();
  std::map<Var, GradedScalar> u;
  for (const NoetherOperator& lower : tower.stage(k - 1)) {
    GradedScalar component(dim);
    for (const NoetherOperator& op : tower.stage(k)) {
      CoefficientTuple eta = eta_transform(op.coefficients(table, lower.antifield), dim);
      for (const auto& [lam, coef] : eta) component += GradedScalar::variable(dim, table.var(op.ghost, lam)) * coef;
    }
    u.emplace(table.var(lower.ghost), component);
  }
  return u;
}

GradedDerivation gauge_symmetry(const NoetherTower& tower, int k) {
  const int dim = tower.table()->dim();
  auto components = k == 0 ? gauge_components(tower) : higher_gauge_components(tower, k);
  return GradedDerivation::prolonged(dim, Parity::odd, {}, std::move(components));
}

GaugeCertificate certify_gauge_symmetry(const Lagrangian& lagrangian, const NoetherTower& tower) {
  const int dim = lagrangian.dim();
  GaugeCertificate cert;
  cert.verdict = is_variational_symmetry(lagrangian, gauge_symmetry(tower, 0));
  cert.density = GradedScalar(dim);
  for (const auto& [field, component] : gauge_components(tower)) cert.density += component * euler(lagrangian, field);
  cert.sigma = GradedForm(dim);
  if (euler_lagrange(cert.density, all_generators(*tower.table())).form.is_zero())
    cert.sigma = homotopy_density(wedge(GradedForm(cert.density), horizontal_volume(dim))).total();
  return cert;
}

std::map<Var, GradedScalar> ascent_relation_residual(const Lagrangian& lagrangian, const NoetherTower& tower, int k) {
  const FieldTable& table = *tower.table();
  const int dim = table.dim();
  GradedDerivation uk = gauge_symmetry(tower, k);
  std::map<Var, GradedScalar> targets = k == 1 ? gauge_components(tower) : higher_gauge_components(tower, k - 1);
  KoszulTate dbar = delta_bar(lagrangian, tower);

  std::map<Var, GradedScalar> residual;
  for (const auto& [target, component] : targets) {
    // antifield paired with the target: s̄_A for fields, c̄_{r_{k-2}} for ghosts
    int anti = k == 1 ? tower.antifield_of(target.field) : table.decl(target.field).source;
    GradedScalar alpha(dim);
    for (const NoetherOperator& op : tower.stage(k)) {
      GradedScalar ch = GradedScalar::variable(dim, table.var(op.ghost)) * op.h_term(table);
      alpha -= variational_derivative(ch, table.var(anti), Side::left);
    }
    residual.emplace(target, uk.apply(component) - dbar.apply(alpha));
  }
  return residual;
}

std::map<int, GradedScalar> reproduce_identities(const NoetherTower& tower, const std::map<Var, GradedScalar>& u,
                                                 int k) {
  const FieldTable& table = *tower.table();
  const int dim = table.dim();
  GradedScalar density(dim);
  for (const auto& [target, component] : u) {
    int anti = k == 0 ? tower.antifield_of(target.field) : table.decl(target.field).source;
    density += component * GradedScalar::variable(dim, table.var(anti));
  }
  std::map<int, GradedScalar> out;
  for (const NoetherOperator& op : tower.stage(k))
    out.emplace(op.antifield, variational_derivative(density, table.var(op.ghost), Side::left));
  return out;
}

}  // namespace gvb
