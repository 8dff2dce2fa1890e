#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "recon/metrics.hpp"
#include "recon/parity_check_matrix.hpp"
#include "recon/protocol.hpp"

namespace recon {

/// Monte-Carlo sweep over a crossover grid. Per-trial seeds are derived from
/// (master_seed, point index, trial index), so serial and parallel execution
/// produce identical results.
struct SweepConfig {
    ProtocolConfig protocol;
    std::vector<double> grid;
    std::size_t trials = 200;
    std::uint64_t master_seed = 1;
    unsigned threads = 0; // 0 picks the hardware concurrency
};

struct SweepPoint {
    double crossover = 0.0;
    AggregateStats stats;
};

/// One session at the given crossover and trial seed: draws the correlated
/// key pair, runs the protocol, and returns the terminal record.
ExecutionRecord run_trial(const ParityCheckMatrix& code, const ProtocolConfig& config,
                          double crossover, std::uint64_t trial_seed);

std::vector<SweepPoint> run_sweep(const ParityCheckMatrix& code, const SweepConfig& config);

/// CSV with header e,M,N_hat,p_hat,s_hat,pi_hat,sigma_hat,f_hat,FER; absent
/// aggregates become empty fields.
std::string sweep_csv(const std::vector<SweepPoint>& points);

} // namespace recon
