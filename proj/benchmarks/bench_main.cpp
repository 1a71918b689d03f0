#include <benchmark/benchmark.h>

#include "sfqo/ati.hpp"
#include "sfqo/displacement.hpp"
#include "sfqo/fock.hpp"
#include "sfqo/qspec.hpp"
#include "sfqo/tomography.hpp"

using namespace sfqo;

static void BM_Dipole(benchmark::State& st) {
    LaserPulse p;
    auto g = momentum_grid(p, std::size_t(st.range(0)), 4.0);
    for (auto _ : st) benchmark::DoNotOptimize(dipole_expectation(p, AtomModel{}, g));
}
BENCHMARK(BM_Dipole)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

static void BM_AtiPoint(benchmark::State& st) {
    AtiConfig c;
    c.p = 0.2 * c.pulse.sqrt_up();
    for (auto _ : st) benchmark::DoNotOptimize(ati_fock_amplitudes(c));
}
BENCHMARK(BM_AtiPoint)->Unit(benchmark::kMillisecond);

static void BM_PhotonDistribution(benchmark::State& st) {
    CoherentSuperposition s(1);
    s.add(1.0, {7.0});
    s.add(-1.0, {9.0});
    s.add(0.75, {10.0});
    auto sn = s.normalized();
    for (auto _ : st) benchmark::DoNotOptimize(photon_distribution(sn, 300));
}
BENCHMARK(BM_PhotonDistribution);

static void BM_Reconstruct(benchmark::State& st) {
    HomodyneParams h;
    auto smp = homodyne_sample(h, std::size_t(st.range(0)), 1);
    auto spec = GridSpec::centered(5.0, 81);
    for (auto _ : st) benchmark::DoNotOptimize(reconstruct_wigner(smp, 3.7, spec));
    st.SetItemsProcessed(st.iterations() * st.range(0));
}
BENCHMARK(BM_Reconstruct)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

static void BM_QspecGenerate(benchmark::State& st) {
    QspecModel m;
    m.n_shots = std::size_t(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(generate_shots(m));
    st.SetItemsProcessed(st.iterations() * st.range(0));
}
BENCHMARK(BM_QspecGenerate)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
