#include <benchmark/benchmark.h>

#include <cstdlib>
#include <map>

#include "tdci/krylov.hpp"
#include "tdci/propagators.hpp"
#include "tdci/scenario.hpp"

namespace {

struct Fixture {
  tdci::FockBasis basis;
  tdci::ModelOperators ops;
  tdci::StateVector psi0;
};

const Fixture& fixture(unsigned orbitals) {
  static std::map<unsigned, Fixture> cache;
  auto it = cache.find(orbitals);
  if (it == cache.end()) {
    auto basis = tdci::FockBasis::enumerate(5, orbitals);
    auto ops = tdci::assemble_operators(tdci::WellModel(5, orbitals, 2.0), basis);
    auto psi0 = tdci::ground_state(ops.a, ops.b, 100.0).state;
    it = cache.emplace(orbitals, Fixture{std::move(basis), std::move(ops), std::move(psi0)}).first;
  }
  return it->second;
}

void BM_Enumerate(benchmark::State& state) {
  const auto d = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(tdci::FockBasis::enumerate(5, d).size());
}
BENCHMARK(BM_Enumerate)->Arg(10)->Arg(20)->Arg(30)->Unit(benchmark::kMillisecond);

void BM_Assemble(benchmark::State& state) {
  const auto d = static_cast<unsigned>(state.range(0));
  const auto basis = tdci::FockBasis::enumerate(5, d);
  for (auto _ : state)
    benchmark::DoNotOptimize(tdci::assemble_operators(tdci::WellModel(5, d, 2.0), basis).a.nonzeros());
}
BENCHMARK(BM_Assemble)->Arg(10)->Arg(15)->Unit(benchmark::kMillisecond);

void BM_Hamiltonian(benchmark::State& state) {
  const auto& fx = fixture(static_cast<unsigned>(state.range(0)));
  tdci::MatvecCounter counter;
  for (auto _ : state) benchmark::DoNotOptimize(tdci::apply_hamiltonian(fx.ops.a, fx.ops.b, 42.0, fx.psi0, counter));
  state.counters["dim"] = static_cast<double>(fx.basis.size());
  state.counters["nnz"] = static_cast<double>(fx.ops.a.nonzeros() + fx.ops.b.nonzeros());
}
BENCHMARK(BM_Hamiltonian)->Arg(10)->Arg(20)->Unit(benchmark::kMicrosecond);

void BM_KrylovStep(benchmark::State& state) {
  const auto& fx = fixture(10);
  tdci::MatvecCounter counter;
  const tdci::OperatorApply op = [&](std::span<const tdci::Complex> x, std::span<tdci::Complex> out) {
    fx.ops.a.multiply(x, out);
    counter.add();
  };
  for (auto _ : state) {
    const auto step = tdci::adaptive_krylov_step(op, fx.psi0, 1e-6 * 0.01, 30);
    benchmark::DoNotOptimize(step.state.data());
  }
}
BENCHMARK(BM_KrylovStep)->Unit(benchmark::kMillisecond);

// Full N=5, d1=10 scenarios; enable with TDCI_BENCH_SCENARIOS=1.
void BM_Scenario(benchmark::State& state) {
  if (!std::getenv("TDCI_BENCH_SCENARIOS")) {
    state.SkipWithError("set TDCI_BENCH_SCENARIOS=1");
    return;
  }
  tdci::ScenarioConfig cfg;
  cfg.particles = 5;
  cfg.orbitals = 10;
  cfg.drive = static_cast<tdci::DriveCase>(state.range(0));
  cfg.method = static_cast<tdci::Method>(state.range(1));
  std::uint64_t matvecs = 0;
  for (auto _ : state) matvecs = tdci::run_scenario(cfg).propagation.record.matvecs_total;
  state.counters["matvecs"] = static_cast<double>(matvecs);
}
BENCHMARK(BM_Scenario)
    ->ArgsProduct({{0}, {0, 1, 2, 3}})
    ->ArgsProduct({{1, 2, 3}, {1, 2, 3}})
    ->Iterations(1)
    ->Unit(benchmark::kSecond);

}  // namespace

BENCHMARK_MAIN();
