#include <benchmark/benchmark.h>

#include <vector>

#include "mixphase/app/random.hpp"
#include "mixphase/franson.hpp"
#include "mixphase/qubitlab.hpp"
#include "mixphase/states.hpp"
#include "mixphase/transport.hpp"

using namespace mixphase;

static void BM_EigHermitian(benchmark::State& state) {
  app::Rng rng(1);
  const ComplexMatrix h = app::random_hermitian(static_cast<int>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(eig_hermitian(h));
}
BENCHMARK(BM_EigHermitian)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

static void BM_PsdRoot(benchmark::State& state) {
  app::Rng rng(2);
  const int n = static_cast<int>(state.range(0));
  const DensityMatrix rho = make_density(app::random_spectrum(n, rng), app::random_unitary(n, rng));
  for (auto _ : state) benchmark::DoNotOptimize(psd_root(rho.matrix(), 3));
}
BENCHMARK(BM_PsdRoot)->Arg(2)->Arg(4)->Arg(8);

static void BM_Parallelize(benchmark::State& state) {
  app::Rng rng(3);
  const int n = static_cast<int>(state.range(0));
  const UnitaryPath path = evolve(app::random_generator_path(n, rng));
  const ComplexMatrix b = app::random_unitary(n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(parallelize(path, b));
}
BENCHMARK(BM_Parallelize)->Arg(2)->Arg(3)->Arg(6);

static void BM_ScanNodal(benchmark::State& state) {
  std::vector<double> fb(50), omega(50);
  for (int i = 0; i < 50; ++i) {
    fb[i] = (i + 0.5) / 50;
    omega[i] = -kPi + (i + 0.5) * 2 * kPi / 50;
  }
  for (auto _ : state) benchmark::DoNotOptimize(scan_nodal_surface(fb, omega));
}
BENCHMARK(BM_ScanNodal);

static void BM_NoisyFringeFit(benchmark::State& state) {
  std::uint64_t stream = 0;
  for (auto _ : state) benchmark::DoNotOptimize(simulate_fringes(0.6, 0.3, 32, ShotNoise{1e6, 1, stream++}));
}
BENCHMARK(BM_NoisyFringeFit);

BENCHMARK_MAIN();
