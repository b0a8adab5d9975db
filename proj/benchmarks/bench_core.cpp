#include <benchmark/benchmark.h>

#include "gvb/expression.hpp"
#include "gvb/homotopy.hpp"
#include "gvb/noether.hpp"
#include "gvb/sampling.hpp"

using namespace gvb;

namespace {

struct Setup {
  FieldTablePtr table;
  std::vector<Var> fields;

  explicit Setup(int n) {
    std::vector<std::string> coords;
    for (int i = 0; i < n; ++i) coords.push_back("x" + std::to_string(i));
    table = std::make_shared<FieldTable>(coords);
    for (auto [name, parity] : {std::pair{"u", Parity::even}, {"v", Parity::even}, {"c", Parity::odd}}) {
      FieldDecl d;
      d.name = name;
      d.parity = parity;
      fields.push_back(table->var(table->add(d)));
    }
  }
};

void BM_ScalarProduct(benchmark::State& state) {
  Setup s(3);
  Sampler rnd(3, 1);
  GradedScalar a = rnd.scalar(s.fields, 2, 3, static_cast<int>(state.range(0)));
  GradedScalar b = rnd.scalar(s.fields, 2, 3, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_ScalarProduct)->Arg(4)->Arg(16)->Arg(64);

void BM_HorizontalDifferential(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Setup s(n);
  Sampler rnd(n, 2);
  GradedForm phi = rnd.form(s.fields, 3, 3, 8, 2, n);
  for (auto _ : state) benchmark::DoNotOptimize(d_horizontal(phi));
}
BENCHMARK(BM_HorizontalDifferential)->DenseRange(1, 3);

void BM_EulerLagrange(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Setup s(n);
  Sampler rnd(n, 3);
  Lagrangian l(s.table, rnd.scalar_of(Parity::even, s.fields, 2, 3, 8));
  for (auto _ : state) benchmark::DoNotOptimize(euler_lagrange(l));
}
BENCHMARK(BM_EulerLagrange)->DenseRange(1, 3);

void BM_LepageEquivalent(benchmark::State& state) {
  Setup s(2);
  Sampler rnd(2, 4);
  Lagrangian l(s.table, rnd.scalar_of(Parity::even, s.fields, 2, 3, 8));
  for (auto _ : state) benchmark::DoNotOptimize(lepage_equivalent(l));
}
BENCHMARK(BM_LepageEquivalent);

void BM_DensityHomotopy(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Setup s(n);
  Sampler rnd(n, 5);
  GradedForm phi = d_horizontal(rnd.form_bidegree(s.fields, 2, 3, 4, 0, n - 1));
  for (auto _ : state) benchmark::DoNotOptimize(homotopy_density(phi));
}
BENCHMARK(BM_DensityHomotopy)->DenseRange(1, 3);

void BM_TwoFormKoszulTate(benchmark::State& state) {
  auto table = std::make_shared<FieldTable>(std::vector<std::string>{"x", "y", "z"});
  Scope scope(table);
  for (const char* b : {"B12", "B13", "B23"}) {
    FieldDecl d;
    d.name = b;
    table->add(d);
  }
  Lagrangian l(table, parse_scalar("1/2*(d(B23,x) - d(B13,y) + d(B12,z))^2", scope));
  for (auto _ : state) {
    NoetherTower tower(std::make_shared<FieldTable>(*table));
    Scope ts(tower.table());
    Lagrangian lt(tower.table(), l.density());
    tower.add_identity(0, "r1", parse_scalar("-d(bar_B12,y) - d(bar_B13,z)", ts));
    tower.add_identity(0, "r2", parse_scalar("d(bar_B12,x) - d(bar_B23,z)", ts));
    tower.add_identity(0, "r3", parse_scalar("d(bar_B13,x) + d(bar_B23,y)", ts));
    tower.add_identity(1, "q", parse_scalar("d(bar_r1,x) + d(bar_r2,y) + d(bar_r3,z)", ts));
    verify_tower(lt, tower);
    KoszulTate kt = koszul_tate(lt, tower);
    benchmark::DoNotOptimize(koszul_tate_squares(lt, tower, kt));
  }
}
BENCHMARK(BM_TwoFormKoszulTate);

void BM_PrintParse(benchmark::State& state) {
  Setup s(3);
  Scope scope(s.table);
  Sampler rnd(3, 6);
  GradedForm phi = rnd.form(s.fields, 3, 3, 16, 2, 3);
  for (auto _ : state) benchmark::DoNotOptimize(parse_form(to_string(*s.table, phi), scope));
}
BENCHMARK(BM_PrintParse);

}  // namespace

BENCHMARK_MAIN();
