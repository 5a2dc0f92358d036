#include <benchmark/benchmark.h>

#include "cle/builtin_patches.hpp"
#include "cle/gasket.hpp"
#include "cle/loewner.hpp"
#include "cle/loops.hpp"
#include "cle/onmodel.hpp"
#include "cle/stochastic.hpp"

namespace {

using namespace cle;

void bm_loop_extraction(benchmark::State& state) {
    const auto patch = hexgrid::HexPatch::build(hexgrid::rhombus_faces(int(state.range(0))));
    Rng rng(1);
    std::vector<std::uint8_t> black(patch.num_faces());
    for (auto& b : black) b = rng.bernoulli(0.5);
    const loops::Coloring c(patch, black);
    for (auto _ : state) benchmark::DoNotOptimize(loops::loops_from_coloring(c));
}
BENCHMARK(bm_loop_extraction)->Arg(2)->Arg(8)->Arg(20);

void bm_exploration_tree(benchmark::State& state) {
    const auto patch = hexgrid::HexPatch::build(hexgrid::rhombus_faces(int(state.range(0))));
    Rng rng(2);
    std::vector<std::uint8_t> black(patch.num_faces());
    for (auto& b : black) b = rng.bernoulli(0.5);
    const loops::Coloring c(patch, black);
    for (auto _ : state) benchmark::DoNotOptimize(loops::exploration_tree(c));
}
BENCHMARK(bm_exploration_tree)->Arg(4)->Arg(12)->Arg(20);

void bm_mcmc_sweeps(benchmark::State& state) {
    const auto patch = hexgrid::HexPatch::build(hexgrid::rhombus_faces(2));
    onmodel::OnParams p{1.5, 0.6, loops::AllWhiteOutside{}};
    long run = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(onmodel::on_mcmc_sample(patch, p, 10, 3 + run++));
    state.SetItemsProcessed(state.iterations() * 10 * patch.num_faces());
}
BENCHMARK(bm_mcmc_sweeps);

void bm_bessel_path(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(
            stochastic::bessel_path({5.0 / 3.0, 0.0, {}, 1.0, 0.0}, 1e-4, 1.0, 7));
    state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(bm_bessel_path);

void bm_theta_first_passage(benchmark::State& state) {
    uint64_t seed = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(
            gasket::conformal_radius_sample(4.0, 0.0, 1e-3, 1e-4, 1, seed++, 1));
}
BENCHMARK(bm_theta_first_passage);

void bm_chordal_trace(benchmark::State& state) {
    const auto d = loewner::sle_driver(6.0, loewner::Mode::Chordal, 1e-3,
                                       double(state.range(0)) / 1000.0, 5);
    for (auto _ : state) benchmark::DoNotOptimize(loewner::chordal_trace(d));
}
BENCHMARK(bm_chordal_trace)->Arg(250)->Arg(1000);

void bm_stable_sample(benchmark::State& state) {
    uint64_t seed = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(stochastic::stable_sample({1.5, 0.7, 0.0, 1.0}, 1000, seed++));
    state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(bm_stable_sample);

}  // namespace

BENCHMARK_MAIN();
