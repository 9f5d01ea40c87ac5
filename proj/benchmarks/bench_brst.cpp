#include <benchmark/benchmark.h>

#include "brst/conformal.hpp"
#include "brst/gr.hpp"
#include "brst/run.hpp"
#include "brst/ym.hpp"

using namespace brst;

namespace {

Expr sample(int k) {
  Expr e;
  for (int i = 0; i < k; ++i)
    e += Expr::gen(field("f", {i})) * Expr::gen(dx(i % 4)) + Expr::gen(ghost("c", {i})) * Expr::constant(i + 1);
  return e;
}

void BM_ExprProduct(benchmark::State& st) {
  Expr a = sample(static_cast<int>(st.range(0))), b = sample(static_cast<int>(st.range(0)) + 1);
  for (auto _ : st) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_ExprProduct)->Arg(4)->Arg(16)->Arg(64);

void BM_ExteriorD(benchmark::State& st) {
  ExteriorD d(4);
  Expr a = sample(16) * sample(8);
  for (auto _ : st) benchmark::DoNotOptimize(d.apply(a));
}
BENCHMARK(BM_ExteriorD);

void BM_YmSuite(benchmark::State& st) {
  YmScene ym = build_ym_scene(3, static_cast<int>(st.range(0)));
  SuiteOptions o;
  for (auto _ : st) benchmark::DoNotOptimize(verify_ym_suite(ym, o));
}
BENCHMARK(BM_YmSuite)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_GrSuite(benchmark::State& st) {
  GrScene gr = build_gr_scene(static_cast<int>(st.range(0)));
  SuiteOptions o;
  for (auto _ : st) benchmark::DoNotOptimize(verify_gr_suite(gr, o));
}
BENCHMARK(BM_GrSuite)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_ConformalNormalPoint(benchmark::State& st) {
  int m = static_cast<int>(st.range(0));
  EtaMetric eta = EtaMetric::minkowski(m);
  std::uint64_t seed = 1;
  for (auto _ : st) {
    ConformalPoint p(seed++, m, eta, true);
    benchmark::DoNotOptimize(p.varpi0());
  }
}
BENCHMARK(BM_ConformalNormalPoint)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_ConformalCotton(benchmark::State& st) {
  ConformalScene cs = build_conformal_scene(3, true);
  SuiteOptions o;
  o.only = {"conf.lie_cotton"};
  for (auto _ : st) benchmark::DoNotOptimize(verify_conformal_suite(cs, o));
}
BENCHMARK(BM_ConformalCotton)->Unit(benchmark::kMillisecond);

void BM_ParseScript(benchmark::State& st) {
  std::string text;
  for (int i = 0; i < 50; ++i) {
    std::string n = "s" + std::to_string(i);
    text += "scene " + n + " = yang_mills(dim=3, size=2);\nshift " + n + ";\ndress " + n + " with formal;\ncheck suite " + n +
            " (trials=3, mode=both);\n";
  }
  for (auto _ : st) benchmark::DoNotOptimize(script::parse_script(text));
}
BENCHMARK(BM_ParseScript);

}  // namespace

BENCHMARK_MAIN();
