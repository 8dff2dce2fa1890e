#include <benchmark/benchmark.h>

#include "recon/channel.hpp"
#include "recon/decoder.hpp"
#include "recon/degree_distribution.hpp"
#include "recon/peg.hpp"
#include "recon/prng.hpp"
#include "recon/protocol.hpp"
#include "recon/rate_adapt.hpp"
#include "recon/sweep.hpp"

namespace {

const recon::ParityCheckMatrix& bench_code() {
    static const recon::ParityCheckMatrix h =
        recon::build_peg_code(2000, recon::default_distribution(), 1);
    return h;
}

recon::ProtocolConfig bench_config() {
    recon::ProtocolConfig cfg;
    cfg.params = recon::make_modulation_params(2000, 0.6, 0.1, 6);
    cfg.e0 = 0.062;
    cfg.e1 = 0.092;
    return cfg;
}

// Decoding of the plain (unmodulated) code at the given crossover per mille.
void BM_DecodeSyndrome(benchmark::State& state) {
    const auto& code = bench_code();
    const double crossover = static_cast<double>(state.range(0)) / 1000.0;
    recon::Xoshiro256StarStar rng(7);
    const auto word = recon::random_bits(code.n, rng);
    const auto observed = recon::bsc_transmit(word, {crossover, 11});
    const auto target = recon::syndrome(code, word);
    const auto llrs = recon::init_llrs(observed, crossover, {}, {});
    std::size_t iterations = 0;
    for (auto _ : state) {
        const auto result = recon::decode_syndrome(code, llrs, target, 100);
        iterations += result.iterations;
        benchmark::DoNotOptimize(result.word.data());
    }
    state.counters["bp_iters"] =
        benchmark::Counter(static_cast<double>(iterations), benchmark::Counter::kAvgIterations);
}
BENCHMARK(BM_DecodeSyndrome)->Arg(30)->Arg(50)->Unit(benchmark::kMillisecond);

// One full blind session (key draw, syndrome, feedback rounds) per iteration.
void BM_Session(benchmark::State& state) {
    const auto& code = bench_code();
    const auto cfg = bench_config();
    const double crossover = static_cast<double>(state.range(0)) / 1000.0;
    std::uint64_t trial = 0;
    std::size_t rounds = 0;
    for (auto _ : state) {
        const auto record = recon::run_trial(code, cfg, crossover, trial++);
        rounds += record.rounds;
        benchmark::DoNotOptimize(record.success);
    }
    state.counters["rounds"] =
        benchmark::Counter(static_cast<double>(rounds), benchmark::Counter::kAvgIterations);
}
BENCHMARK(BM_Session)->Arg(55)->Arg(65)->Arg(75)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
