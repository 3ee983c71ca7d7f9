#include <benchmark/benchmark.h>

#include "manakov/abelian_constants.hpp"
#include "manakov/elliptic.hpp"
#include "manakov/periods.hpp"
#include "manakov/solution.hpp"
#include "manakov/theta.hpp"

using namespace manakov;

namespace {

TrigonalCurve curve_for(int n) {
  return n == 2 ? TrigonalCurve::make(2, {1, 2}, {0.5}) : TrigonalCurve::make(3, {1, 1, 1}, {0.5, 0.25});
}

struct Setup {
  SpectralCurve curve;
  SurfaceData surf;
  ThetaContext ctx;
  ConstantsBundle b;
};

const Setup& setup(int n) {
  static auto make = [](int m) {
    SpectralCurve sc(curve_for(m));
    auto sd = compute_surface(sc, false);
    ThetaContext ctx(sd.periods.tau);
    auto b = compute_constants(sd.periods, ctx, select_characteristic(ctx, sd.periods));
    return new Setup{std::move(sc), std::move(sd), std::move(ctx), std::move(b)};
  };
  static const Setup* s2 = make(2);
  static const Setup* s3 = make(3);
  return n == 2 ? *s2 : *s3;
}

}  // namespace

static void BM_Theta(benchmark::State& state) {
  const auto& s = setup(int(state.range(0)));
  const int g = s.surf.periods.g;
  VecC v(g);
  for (int k = 0; k < g; ++k) v[k] = cplx(0.1 * (k + 1), 0.05 * k);
  for (auto _ : state) benchmark::DoNotOptimize(s.ctx.theta(v, s.b.ch));
}
BENCHMARK(BM_Theta)->Arg(2)->Arg(3);

static void BM_ThetaJets(benchmark::State& state) {
  const auto& s = setup(3);
  VecC v(3);
  v << cplx(0.1, 0), cplx(0.2, 0.05), cplx(0.3, 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(theta_gradient(s.ctx, v, s.b.ch));
}
BENCHMARK(BM_ThetaJets);

static void BM_Surface(benchmark::State& state) {
  SpectralCurve sc(curve_for(int(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(compute_surface(sc, false));
}
BENCHMARK(BM_Surface)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_Constants(benchmark::State& state) {
  const auto& s = setup(3);
  for (auto _ : state) benchmark::DoNotOptimize(compute_constants(s.surf.periods, s.ctx, s.b.ch));
}
BENCHMARK(BM_Constants)->Unit(benchmark::kMicrosecond);

static void BM_Residual(benchmark::State& state) {
  const auto& s = setup(3);
  VecR D = VecR::Zero(3);
  auto sp = SolutionParams::build(s.surf.periods, s.b, s.ctx, D);
  const Grid g{0, 4, int(state.range(0)), 0, 1, 11};
  for (auto _ : state) benchmark::DoNotOptimize(residual(sp, s.ctx, g, ResidualMode::analytic));
  state.SetItemsProcessed(state.iterations() * g.nx * g.nt);
}
BENCHMARK(BM_Residual)->Arg(11)->Arg(41)->Unit(benchmark::kMillisecond);

static void BM_EllipticSolution(benchmark::State& state) {
  elliptic::EllipticCurve ec(1, 2, 0.5);
  double x = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ec.solution(x, 0.1));
    x += 1e-3;
  }
}
BENCHMARK(BM_EllipticSolution);
BENCHMARK_MAIN();
