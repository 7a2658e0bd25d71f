#include <benchmark/benchmark.h>

#include <cstdint>

#include "camem/analysis.hpp"
#include "camem/engine.hpp"
#include "camem/faults.hpp"
#include "camem/infobound.hpp"
#include "camem/lattice.hpp"
#include "camem/rng.hpp"

namespace {

void BM_philox_block(benchmark::State& state) {
  std::uint32_t ctr = 0;
  for (auto _ : state) {
    auto block = camem::Philox4x32::block({ctr++, 1, 2, 3}, {4, 5});
    benchmark::DoNotOptimize(block);
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_philox_block);

void BM_torus_step(benchmark::State& state) {
  int side = static_cast<int>(state.range(0));
  camem::Lattice torus =
      camem::build_euclidean_torus(camem::Tiling::square44, side, side);
  camem::SimPlan plan;
  plan.lattice = &torus;
  plan.rules = camem::compile_majority(torus);
  plan.fault.model = camem::FaultModel::pure_probabilistic;
  plan.fault.alpha = 0.3;
  camem::FaultRealization realization(plan.fault, torus.size(), 1, 0);
  camem::Configuration cur(torus.size()), next(torus.size());
  int t = 1;
  for (auto _ : state) {
    camem::step(cur, next, plan, realization, t++);
    std::swap(cur, next);
  }
  state.SetItemsProcessed(state.iterations() * torus.size());
}
BENCHMARK(BM_torus_step)->Arg(64)->Arg(256);

void BM_binomial_tail(benchmark::State& state) {
  int d = static_cast<int>(state.range(0));
  double p = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(camem::binomial_tail(d, (d + 1) / 2, p));
    p = p < 0.4 ? p + 1e-9 : 0.1;  // defeat value caching
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_binomial_tail)->Arg(31)->Arg(301)->Arg(3001);

void BM_build_hyperbolic(benchmark::State& state) {
  int shells = static_cast<int>(state.range(0));
  for (auto _ : state) {
    camem::Lattice ball = camem::build_hyperbolic(3, 7, shells);
    benchmark::DoNotOptimize(ball.size());
  }
}
BENCHMARK(BM_build_hyperbolic)->Arg(4)->Arg(6);

void BM_exact_mi_chain(benchmark::State& state) {
  int t = static_cast<int>(state.range(0));
  camem::Lattice g;
  g.kind = camem::LatticeKind::tree;
  g.q = 1;
  g.out_edges = {{0}};
  g.shell = {0};
  g.boundary = {0};
  camem::LayeredCircuit c =
      camem::unroll_circuit(g, camem::compile_majority(g), 0, t);
  for (auto _ : state)
    benchmark::DoNotOptimize(camem::exact_mi(c, 0.3));
}
BENCHMARK(BM_exact_mi_chain)->Arg(8)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
