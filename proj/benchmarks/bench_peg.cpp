#include <benchmark/benchmark.h>

#include "recon/degree_distribution.hpp"
#include "recon/peg.hpp"

namespace {

void BM_BuildCode(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto dist = recon::default_distribution();
    std::uint64_t seed = 1;
    for (auto _ : state) {
        const auto code = recon::build_peg_code(n, dist, seed++);
        benchmark::DoNotOptimize(code.rows.data());
    }
}
BENCHMARK(BM_BuildCode)->Arg(1024)->Arg(2000)->Arg(8192)->Unit(benchmark::kMillisecond);

} // namespace
