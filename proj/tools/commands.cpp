#include "commands.hpp"

#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "gvb/eta.hpp"
#include "gvb/homotopy.hpp"
#include "gvb/model.hpp"
#include "gvb/noether.hpp"
#include "gvb/sampling.hpp"
#include "gvb/symmetry.hpp"

namespace gvb::cli {

namespace {

struct Context {
  const Model& model;
  const Options& options;
  Report& report;

  const FieldTable& table() const { return *model.table; }
  std::string str(const GradedScalar& f) const { return to_string(table(), f); }
  std::string str(const GradedForm& f) const { return to_string(table(), f); }
  std::string name(int id) const { return table().decl(id).name; }
  std::string name(const Var& v) const { return var_name(table(), v); }
};

const char* verdict(bool holds) { return holds ? "holds" : "fails"; }

void echo_model(const Context& c) {
  std::string coords;
  for (const auto& x : c.table().coordinates()) coords += (coords.empty() ? "" : " ") + x;
  std::string fields;
  for (const auto& f : c.model.fields) fields += (fields.empty() ? "" : " ") + f;
  c.report.add("base", coords);
  c.report.add("fields", fields);
  if (c.model.lagrangian) c.report.add("lagrangian", c.str(c.model.lagrangian->density()));
}

void echo_tower(const Context& c) {
  const NoetherTower& tower = *c.model.tower;
  for (int k = 0; k < tower.depth(); ++k)
    for (const NoetherOperator& op : tower.stage(k))
      c.report.add("identity." + op.name, "stage " + std::to_string(k) + ": " + c.str(op.delta));
  c.report.add("regularity", tower.regularity_asserted() ? "asserted" : "not asserted");
}

const NoetherTower& require_tower(const Context& c) {
  if (c.model.tower->empty()) throw ModelError("the model declares no identities");
  return *c.model.tower;
}

/// Verifies the tower, reporting every stage up to the first failure.
bool verify(const Context& c, NoetherTower& tower) {
  auto failure = verify_tower(c.model.require_lagrangian(), tower);
  for (int k = 0; k < tower.depth(); ++k) {
    for (const NoetherOperator& op : tower.stage(k)) {
      bool failed = failure && failure->first == &op;
      if (!tower.verified(k) && !failed) continue;
      c.report.add("verify." + op.name, verdict(!failed));
      if (failed) c.report.add("verify." + op.name + ".witness", c.str(failure->second.witness));
    }
    if (!tower.verified(k)) break;
  }
  return !failure;
}

int euler_lagrange_cmd(Context& c) {
  echo_model(c);
  auto el = euler_lagrange(c.model.require_lagrangian());
  for (const auto& [field, e] : el.components) c.report.add("euler_lagrange." + c.name(field), c.str(e));
  c.report.add("euler_lagrange.form", c.str(el.form));
  c.report.add("status", "ok");
  return kOk;
}

int lepage_cmd(Context& c) {
  echo_model(c);
  const Lagrangian& l = c.model.require_lagrangian();
  GradedForm xi = lepage_equivalent(l);
  c.report.add("lepage", c.str(xi));
  GradedForm residual = exterior_derivative(l.form()) - euler_lagrange(l).form + d_horizontal(xi);
  c.report.add("lepage.identity", verdict(residual.is_zero()));
  if (!residual.is_zero()) c.report.add("lepage.witness", c.str(residual));
  c.report.add("status", verdict(residual.is_zero()));
  return residual.is_zero() ? kOk : kFails;
}

int check_symmetry_cmd(Context& c) {
  echo_model(c);
  const Lagrangian& l = c.model.require_lagrangian();
  if (c.model.symmetries.empty()) throw ModelError("the model declares no symmetries");
  bool all = true;
  for (const SymmetryDecl& s : c.model.symmetries) {
    std::string key = "symmetry." + s.name;
    for (const auto& [target, value] : s.components) c.report.add(key + ".vector." + target, c.str(value));
    SymmetryVerdict v = is_variational_symmetry(l, s.derivation);
    c.report.add(key, verdict(v.symmetric));
    if (!v.reason.empty()) c.report.add(key + ".reason", v.reason);
    c.report.add(key + ".lie_derivative", c.str(v.lie));
    if (v.symmetric) {
      c.report.add(key + ".sigma", c.str(v.sigma));
      c.report.add(key + ".current", c.str(v.current));
    } else if (!v.witness.is_zero()) {
      c.report.add(key + ".witness", c.str(v.witness));
    }
    all = all && v.symmetric;
  }
  c.report.add("status", verdict(all));
  return all ? kOk : kFails;
}

int check_noether_cmd(Context& c) {
  echo_model(c);
  echo_tower(c);
  const NoetherTower& tower = require_tower(c);
  bool ok = verify(c, const_cast<NoetherTower&>(tower));
  c.report.add("status", verdict(ok));
  return ok ? kOk : kFails;
}

int build_kt_cmd(Context& c) {
  echo_model(c);
  echo_tower(c);
  NoetherTower& tower = const_cast<NoetherTower&>(require_tower(c));
  const Lagrangian& l = c.model.require_lagrangian();
  if (!verify(c, tower)) {
    c.report.add("status", "fails");
    return kFails;
  }
  KoszulTate kt = koszul_tate(l, tower);
  for (const auto& [id, image] : kt.images()) c.report.add("kt." + c.name(id), c.str(image));
  bool nilpotent = true;
  for (const auto& [id, square] : koszul_tate_squares(l, tower, kt)) {
    if (square.is_zero()) continue;
    nilpotent = false;
    c.report.add("kt.square." + c.name(id), c.str(square));
  }
  c.report.add("kt.nilpotent", verdict(nilpotent));
  c.report.add("extended_lagrangian", c.str(extended_lagrangian(l, tower)));
  ExtendedCheck ext = check_extended_lagrangian(l, tower);
  c.report.add("extended.kt_invariant", verdict(ext.exact_symmetry));
  c.report.add("extended.density", c.str(ext.density));
  c.report.add("extended.trivial", verdict(ext.trivial));
  if (ext.trivial) c.report.add("extended.sigma", c.str(ext.sigma));
  bool ok = nilpotent && ext.exact_symmetry && ext.trivial;
  c.report.add("status", verdict(ok));
  return ok ? kOk : kFails;
}

int gauge_symmetry_cmd(Context& c) {
  echo_model(c);
  echo_tower(c);
  NoetherTower& tower = const_cast<NoetherTower&>(require_tower(c));
  const Lagrangian& l = c.model.require_lagrangian();
  if (!verify(c, tower)) {
    c.report.add("status", "fails");
    return kFails;
  }
  bool ok = true;
  auto u = gauge_components(tower);
  for (const auto& [field, component] : u) c.report.add("gauge.u." + c.name(field), c.str(component));
  GaugeCertificate cert = certify_gauge_symmetry(l, tower);
  c.report.add("gauge.symmetry", verdict(cert.verdict.symmetric));
  c.report.add("gauge.density", c.str(cert.density));
  if (cert.verdict.symmetric) {
    c.report.add("gauge.sigma", c.str(cert.sigma));
    c.report.add("gauge.current", c.str(cert.verdict.current));
  } else if (!cert.verdict.witness.is_zero()) {
    c.report.add("gauge.witness", c.str(cert.verdict.witness));
  }
  ok = ok && cert.verdict.symmetric;

  auto round_trip = [&](const std::map<Var, GradedScalar>& comps, int k, const std::string& prefix) {
    auto back = reproduce_identities(tower, comps, k);
    bool same = true;
    for (const NoetherOperator& op : tower.stage(k)) {
      GradedScalar diff = back.at(op.antifield) - op.linear_part(c.table());
      if (!diff.is_zero()) {
        same = false;
        c.report.add(prefix + ".round_trip." + op.name + ".witness", c.str(diff));
      }
    }
    c.report.add(prefix + ".round_trip", verdict(same));
    return same;
  };
  ok = round_trip(u, 0, "gauge") && ok;

  for (int k = 1; k < tower.depth(); ++k) {
    std::string prefix = "gauge.stage" + std::to_string(k);
    auto uk = higher_gauge_components(tower, k);
    for (const auto& [ghost, component] : uk) c.report.add(prefix + ".u." + c.name(ghost), c.str(component));
    bool ascent = true;
    for (const auto& [target, r] : ascent_relation_residual(l, tower, k)) {
      if (r.is_zero()) continue;
      ascent = false;
      c.report.add(prefix + ".ascent." + c.name(target) + ".witness", c.str(r));
    }
    c.report.add(prefix + ".ascent", verdict(ascent));
    ok = ascent && round_trip(uk, k, prefix) && ok;
  }
  c.report.add("status", verdict(ok));
  return ok ? kOk : kFails;
}

int homotopy_cmd(Context& c) {
  echo_model(c);
  if (c.model.forms.empty()) throw ModelError("the model declares no forms");
  const int n = c.model.dim();
  bool all = true;
  for (const FormDecl& f : c.model.forms) {
    std::string key = "homotopy." + f.name;
    c.report.add(key + ".input", c.str(f.value));
    int k = f.value.max_contact_degree();
    int m = f.value.max_horizontal_degree();
    if (!f.value.is_zero() && !(project_bidegree(f.value, k, m) == f.value))
      throw ParseError("form '" + f.name + "' is not of a single bidegree", f.pos);
    if (f.value.is_zero()) k = m = 0;
    c.report.add(key + ".bidegree", "(" + std::to_string(k) + "," + std::to_string(m) + ")");
    std::string op;
    GradedForm xi;
    try {
      if (k == 0 && m < n) {
        op = "horizontal";
        xi = homotopy_horizontal(f.value).total();
      } else if (k == 0) {
        op = "density";
        xi = homotopy_density(f.value).total();
      } else if (k == 1 && m < n) {
        op = "contact";
        xi = homotopy_contact(f.value);
      } else if (k == 1) {
        op = "rho_kernel";
        xi = homotopy_rho_kernel(f.value);
      } else {
        throw ParseError("homotopy operators cover contact degree 0 and 1 only", f.pos);
      }
    } catch (const HomotopyError& e) {
      c.report.add(key, "fails");
      c.report.add(key + ".reason", e.what());
      c.report.add(key + ".witness", c.str(e.witness()));
      all = false;
      continue;
    }
    c.report.add(key + ".operator", op);
    c.report.add(key + ".xi", c.str(xi));
    bool round = d_horizontal(xi) == f.value;
    c.report.add(key, verdict(round));
    all = all && round;
  }
  c.report.add("status", verdict(all));
  return all ? kOk : kFails;
}

/// Randomized checks of the core identities.
int selftest_cmd(const std::optional<Model>& model, const Options& options, Report& report) {
  std::shared_ptr<FieldTable> table;
  std::vector<Var> fields;
  if (model) {
    table = model->table;
    for (const auto& name : model->fields) fields.push_back(table->var(name));
  } else {
    table = std::make_shared<FieldTable>(std::vector<std::string>{"x", "y"});
    for (auto [name, parity] : {std::pair{"u", Parity::even}, {"v", Parity::even}, {"c", Parity::odd}}) {
      FieldDecl d;
      d.name = name;
      d.parity = parity;
      fields.push_back(table->var(table->add(d)));
    }
  }
  if (fields.empty()) throw ModelError("selftest needs at least one field");
  const int n = table->dim();
  Sampler rnd(n, options.seed);
  constexpr int kCases = 25;
  report.add("seed", std::to_string(options.seed));
  report.add("cases", std::to_string(kCases));
  bool all = true;

  auto run = [&](const std::string& name, const std::function<GradedForm()>& residual) {
    for (int i = 0; i < kCases; ++i) {
      GradedForm r = residual();
      if (!r.is_zero()) {
        report.add("selftest." + name, "fails");
        report.add("selftest." + name + ".witness", to_string(*table, r));
        all = false;
        return;
      }
    }
    report.add("selftest." + name, "holds");
  };

  run("d_h_squared", [&] { return d_horizontal(d_horizontal(rnd.form(fields, 2, 2, 3, 2, n))); });
  run("d_v_squared", [&] { return d_vertical(d_vertical(rnd.form(fields, 2, 2, 3, 2, n))); });
  run("anticommutator", [&] {
    GradedForm phi = rnd.form(fields, 2, 2, 3, 2, n);
    return d_horizontal(d_vertical(phi)) + d_vertical(d_horizontal(phi));
  });
  run("d_split", [&] {
    GradedForm phi = rnd.form(fields, 2, 2, 3, 2, n);
    return exterior_derivative(phi) - d_horizontal(phi) - d_vertical(phi);
  });
  run("rho_idempotent", [&] {
    GradedForm sigma = rnd.form_bidegree(fields, 2, 2, 3, 1, n);
    return rho_projector(rho_projector(sigma)) - rho_projector(sigma);
  });
  run("rho_kills_d_h", [&] { return rho_projector(d_horizontal(rnd.form_bidegree(fields, 2, 2, 3, 1, n - 1))); });
  run("lepage_identity", [&] {
    Lagrangian l(table, rnd.scalar_of(Parity::even, fields, 2, 3, 3));
    return exterior_derivative(l.form()) - euler_lagrange(l).form + d_horizontal(lepage_equivalent(l));
  });
  run("first_variation", [&] {
    Lagrangian l(table, rnd.scalar_of(Parity::even, fields, 1, 3, 3));
    std::vector<GradedScalar> h;
    for (int i = 0; i < n; ++i) h.push_back(rnd.coin() ? rnd.scalar_of(Parity::even, fields, 1, 1, 2) : GradedScalar(n));
    std::map<Var, GradedScalar> v;
    for (const Var& f : fields) v.emplace(f, rnd.scalar_of(f.parity(), fields, 1, 2, 2));
    return first_variational_residual(l, GradedDerivation::prolonged(n, Parity::even, h, v));
  });
  run("eta_involution", [&] {
    CoefficientTuple f;
    for (const MultiIndex& lam : MultiIndex::all_up_to(n, 2))
      if (rnd.coin()) f.emplace(lam, rnd.scalar(fields, 1, 2, 2));
    GradedScalar diff(n);
    auto back = prune(eta_transform(eta_transform(f, n), n));
    for (const auto& [lam, g] : prune(f)) {
      auto it = back.find(lam);
      diff += g - (it == back.end() ? GradedScalar(n) : it->second);
    }
    for (const auto& [lam, g] : back)
      if (!f.count(lam)) diff += g;
    return GradedForm(diff);
  });
  run("density_homotopy", [&] {
    GradedForm phi = d_horizontal(rnd.form_bidegree(fields, 2, 2, 3, 0, n - 1));
    return d_horizontal(homotopy_density(phi).total()) - phi;
  });
  report.add("status", verdict(all));
  return all ? kOk : kFails;
}

}  // namespace

void Report::write(std::ostream& out, Format format) const {
  const char* sep = format == Format::kv ? "=" : ": ";
  for (const auto& [k, v] : entries_) out << k << sep << v << '\n';
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"euler-lagrange", "lepage",       "check-symmetry",
                                              "check-noether",  "build-kt",     "gauge-symmetry",
                                              "homotopy",       "selftest"};
  return names;
}

namespace {

std::string describe(const std::string& name) {
  static const std::map<std::string, std::string> text{
      {"euler-lagrange", "Euler-Lagrange expressions of the Lagrangian"},
      {"lepage", "Lepage equivalent and its first variation formula"},
      {"check-symmetry", "Check each declared symmetry and print its current"},
      {"check-noether", "Verify the declared Noether identities"},
      {"build-kt", "Build the Koszul-Tate differential and check that it squares to zero"},
      {"gauge-symmetry", "Gauge operators, gauge symmetry and ascent relations"},
      {"homotopy", "Apply the homotopy operators to each declared form"},
      {"selftest", "Randomized identity checks on a built-in field set"}};
  return text.at(name);
}

}  // namespace

int run_command(const Options& options, std::ostream& out, std::ostream& err) {
  Report report;
  report.add("command", options.command);
  int code = kOk;
  try {
    ModelOptions model_options;
    model_options.max_jet_order = options.max_jet_order;
    std::optional<Model> model;
    if (!options.model_path.empty()) {
      report.add("model", options.model_path);
      model.emplace(load_model(options.model_path, model_options));
    } else if (options.command != "selftest") {
      throw ModelError("a model file is required");
    }
    if (options.command == "selftest") {
      code = selftest_cmd(model, options, report);
    } else {
      Context c{*model, options, report};
      if (options.command == "euler-lagrange")
        code = euler_lagrange_cmd(c);
      else if (options.command == "lepage")
        code = lepage_cmd(c);
      else if (options.command == "check-symmetry")
        code = check_symmetry_cmd(c);
      else if (options.command == "check-noether")
        code = check_noether_cmd(c);
      else if (options.command == "build-kt")
        code = build_kt_cmd(c);
      else if (options.command == "gauge-symmetry")
        code = gauge_symmetry_cmd(c);
      else if (options.command == "homotopy")
        code = homotopy_cmd(c);
      else
        throw ModelError("unknown command '" + options.command + "'");
    }
  } catch (const ParseError& e) {
    err << options.model_path << ":" << e.pos().line << ":" << e.pos().column << ": error: " << e.message() << '\n';
    return kInputError;
  } catch (const Error& e) {
    err << (options.model_path.empty() ? "gvb" : options.model_path) << ": error: " << e.what() << '\n';
    return kInputError;
  }

  if (options.report_path) {
    std::ofstream file(*options.report_path, std::ios::binary);
    if (!file) {
      err << "gvb: error: cannot write report '" << *options.report_path << "'\n";
      return kInputError;
    }
    report.write(file, options.format);
  } else {
    report.write(out, options.format);
  }
  return code;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact variational calculus on graded jet spaces"};
  app.require_subcommand(1);
  Options options;
  std::string format = "text";
  app.add_option("--report", options.report_path, "Write the report to this file");
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "kv"}));
  app.add_option("--max-jet-order", options.max_jet_order, "Largest jet order accepted in the model")
      ->check(CLI::Range(0, 64));
  app.add_option("--seed", options.seed, "Seed for selftest randomization");
  app.fallthrough();
  for (const std::string& name : command_names()) {
    CLI::App* sub = app.add_subcommand(name, describe(name));
    auto* opt = sub->add_option("model", options.model_path, "Model file (.model)");
    if (name != "selftest") opt->required();
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "gvb: error: " << e.what() << '\n';
    return kInputError;
  }
  options.command = app.get_subcommands().front()->get_name();
  options.format = format == "kv" ? Format::kv : Format::text;
  return run_command(options, out, err);
}

}  // namespace gvb::cli
