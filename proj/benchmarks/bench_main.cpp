#include <benchmark/benchmark.h>

#include <vector>

#include "nbpolar/kernel_search.hpp"
#include "nbpolar/rng.hpp"
#include "nbpolar/sim.hpp"

using namespace nbpolar;

namespace {

CodeConfig code_for(int q, int stages) {
    const Kernel k = q == 2 ? standard_kernel(2) : proposed_kernel(q);
    return make_code_config(uniform_schedule(k, stages));
}

std::vector<int> random_input(const CodeConfig& cfg, Rng& rng) {
    std::vector<int> u(cfg.block_length);
    for (auto& s : u) s = rng.next_int(cfg.q);
    return u;
}

void BM_encode(benchmark::State& state) {
    const CodeConfig cfg = code_for(static_cast<int>(state.range(0)), 8);
    Rng rng(1);
    const std::vector<int> u = random_input(cfg, rng);
    for (auto _ : state) benchmark::DoNotOptimize(polar_encode(u, cfg));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cfg.block_length));
}
BENCHMARK(BM_encode)->Arg(2)->Arg(5)->Arg(8);

void BM_sc_decode(benchmark::State& state) {
    const int q = static_cast<int>(state.range(0));
    const CodeConfig cfg = code_for(q, 8);
    const SignalSet set = q == 2 ? make_psk(2) : make_psk(q);
    const NoiseModel nm{1.0, 4.0};
    Rng rng(2);
    const std::vector<int> u = random_input(cfg, rng);
    const auto y = add_noise(modulate(polar_encode(u, cfg), set), nm, rng);
    const auto likes = channel_likelihoods(y, set, nm);
    for (auto _ : state) benchmark::DoNotOptimize(polar_decode_sc(likes, cfg));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cfg.block_length));
}
BENCHMARK(BM_sc_decode)->Arg(2)->Arg(5)->Arg(8);

void BM_good_spectrum(benchmark::State& state) {
    const int q = static_cast<int>(state.range(0));
    const Kernel k = proposed_kernel(q);
    const SignalSet set = make_psk(q);
    for (auto _ : state) benchmark::DoNotOptimize(good_channel_spectrum(k, set));
}
BENCHMARK(BM_good_spectrum)->Arg(4)->Arg(8);

void BM_search(benchmark::State& state) {
    const SignalSet set = make_psk(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(search_permutations(set));
}
BENCHMARK(BM_search)->Arg(5)->Arg(7);

}  // namespace

BENCHMARK_MAIN();
