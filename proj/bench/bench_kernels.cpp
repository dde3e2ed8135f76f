// Parallel kernels against their serial references on model-sized inputs.
#include <benchmark/benchmark.h>

#include <random>

#include "dhdae/kernels.hpp"
#include "dhdae/models.hpp"

namespace {

using namespace dhdae;

std::vector<Complex> sample_grid(int count) {
    std::vector<Complex> s;
    for (int k = 0; k < count; ++k) s.emplace_back(0.5 + 0.25 * k, 0.1 * k);
    return s;
}

std::vector<Vec> random_states(Index n, int count, unsigned seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> d;
    std::vector<Vec> out(count, Vec(n));
    for (auto& x : out)
        for (Index i = 0; i < n; ++i) x(i) = Complex(d(gen), d(gen));
    return out;
}

template <auto Sweep>
void resolvent(benchmark::State& state) {
    auto m = build_model("heat_closure", {{"N", double(state.range(0))}});
    const Mat E = m.pencil.E, AQ = m.pencil.AQ();
    const auto s = sample_grid(16);
    for (auto _ : state) benchmark::DoNotOptimize(Sweep(E, AQ, s));
    state.SetItemsProcessed(state.iterations() * s.size());
}

template <auto Trace>
void energy(benchmark::State& state) {
    const Index n = state.range(0);
    Mat metric = Mat::Identity(n, n);
    const auto states = random_states(n, 2000, 7);
    for (auto _ : state) benchmark::DoNotOptimize(Trace(metric, states));
    state.SetItemsProcessed(state.iterations() * states.size());
}

template <auto Deviation>
void deviation(benchmark::State& state) {
    const Index n = state.range(0);
    const auto a = random_states(n, 2000, 11), b = random_states(n, 2000, 13);
    for (auto _ : state) benchmark::DoNotOptimize(Deviation(a, b));
    state.SetItemsProcessed(state.iterations() * a.size());
}

}  // namespace

BENCHMARK(resolvent<kernels::resolvent_sweep>)->Name("resolvent_sweep/parallel")->Arg(16)->Arg(48);
BENCHMARK(resolvent<kernels::resolvent_sweep_serial>)->Name("resolvent_sweep/serial")->Arg(16)->Arg(48);
BENCHMARK(energy<kernels::energy_trace>)->Name("energy_trace/parallel")->Arg(64)->Arg(256);
BENCHMARK(energy<kernels::energy_trace_serial>)->Name("energy_trace/serial")->Arg(64)->Arg(256);
BENCHMARK(deviation<kernels::max_deviation>)->Name("max_deviation/parallel")->Arg(64)->Arg(256);
BENCHMARK(deviation<kernels::max_deviation_serial>)->Name("max_deviation/serial")->Arg(64)->Arg(256);

int main(int argc, char** argv) {
    benchmark::Initialize(&argc, argv);
    if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
    benchmark::AddCustomContext("omp_threads", std::to_string(kernels::max_threads()));
    benchmark::RunSpecifiedBenchmarks();
    benchmark::Shutdown();
    return 0;
}
