#include <benchmark/benchmark.h>

#include "swirlbound/drift.hpp"
#include "swirlbound/drift1d.hpp"
#include "swirlbound/gamma2d.hpp"
#include "swirlbound/grid.hpp"
#include "swirlbound/initial_data.hpp"
#include "swirlbound/lambda_modulus.hpp"
#include "swirlbound/moving_frame.hpp"

namespace {

using namespace swirlbound;

void BM_halfline_solve(benchmark::State& state) {
  HalfLineProblem p;
  p.drift = DriftProfile::type_one(1.0, 1.0);
  p.initial = InitialData1D::linear(1.0);
  p.grid = Grid1D::half_line(20.0, static_cast<std::size_t>(state.range(0)));
  p.times = TimeGrid::uniform(0.25, 50);
  for (auto _ : state) {
    auto u = solve_halfline(p);
    benchmark::DoNotOptimize(u.checksum());
  }
  state.SetItemsProcessed(state.iterations() * 50 * state.range(0));
}
BENCHMARK(BM_halfline_solve)->Arg(256)->Arg(512)->Arg(1024);

void BM_moving_solve(benchmark::State& state) {
  MovingDomain d;
  d.drift = DriftProfile::type_one(1.0, 1.0);
  d.orientation = Orientation::LeftBoundaryIncreasing;
  d.z_max = 24.0;
  d.zgrid = Grid1D::window(0.0, 24.0,
                           static_cast<std::size_t>(state.range(0)));
  d.times = TimeGrid::uniform(0.5, 100);
  const auto initial = InitialData1D::linear(1.0);
  for (auto _ : state) {
    auto nu = solve_moving_domain(d, initial);
    benchmark::DoNotOptimize(nu.checksum());
  }
}
BENCHMARK(BM_moving_solve)->Arg(256)->Arg(512);

void BM_exterior_fraction(benchmark::State& state) {
  MovingDomain d;
  d.drift = DriftProfile::type_one(1.0, 1.0);
  d.orientation = Orientation::LeftBoundaryIncreasing;
  for (auto _ : state) {
    benchmark::DoNotOptimize(exterior_measure_fraction(d, 0.5, 1.5));
  }
}
BENCHMARK(BM_exterior_fraction);

void BM_picard_heat_apply(benchmark::State& state) {
  const QuadRule q = picard_quadrature();
  std::vector<double> f(q.nodes.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = q.nodes[i];
  for (auto _ : state) {
    auto out = picard_heat_apply(q, 0.01, f);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * q.nodes.size());
}
BENCHMARK(BM_picard_heat_apply);

void BM_gamma_solve_small(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  VelocityParams vp;
  vp.amp = 1.0;
  vp.rgrid = Grid1D::cell_centered(8.0, n);
  vp.n3 = n / 2;
  const auto drift = DriftProfile::type_one(1.0, 1.0);
  const auto vel = make_velocity(VelocityFamily::SwirlCell, vp, drift);
  GammaProblem p;
  p.velocity = vel;
  p.drift = drift;
  p.rgrid = vp.rgrid;
  p.n3 = vp.n3;
  p.times = TimeGrid::uniform(0.1, 20);
  p.stored_slices = 4;
  for (auto _ : state) {
    auto g = solve_gamma(p);
    benchmark::DoNotOptimize(g.checksum());
  }
  state.SetItemsProcessed(state.iterations() * 20 * n * (n / 2));
}
BENCHMARK(BM_gamma_solve_small)->Arg(64)->Arg(128);

}  // namespace

BENCHMARK_MAIN();
