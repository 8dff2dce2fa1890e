#include "recon/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <stdexcept>
#include <thread>

#include "recon/channel.hpp"
#include "recon/prng.hpp"

namespace recon {

ExecutionRecord run_trial(const ParityCheckMatrix& code, const ProtocolConfig& config,
                          double crossover, std::uint64_t trial_seed) {
    const auto [alice_key, bob_observed] = generate_key_pair(
        config.params.key_length(), {crossover, derive_seed(trial_seed, 0)});
    const auto session =
        run_session(alice_key, bob_observed, code, config, derive_seed(trial_seed, 1));
    ExecutionRecord record;
    record.n = config.params.n;
    record.r0 = config.params.r0;
    record.delta = config.params.delta;
    record.crossover = crossover;
    record.pi_final = session.final_pi;
    record.sigma_final = session.final_sigma;
    record.rounds = session.rounds_used;
    record.success = session.success;
    return record;
}

std::vector<SweepPoint> run_sweep(const ParityCheckMatrix& code, const SweepConfig& config) {
    if (config.trials < 1) {
        throw std::invalid_argument("run_sweep: trials must be at least 1");
    }
    unsigned threads = config.threads;
    if (threads == 0) {
        threads = std::thread::hardware_concurrency();
    }
    if (threads == 0) {
        threads = 1;
    }
    threads = static_cast<unsigned>(
        std::min<std::size_t>(threads, config.trials));

    std::vector<SweepPoint> points;
    points.reserve(config.grid.size());
    for (std::size_t point = 0; point < config.grid.size(); ++point) {
        const double crossover = config.grid[point];
        const std::uint64_t point_seed = derive_seed(config.master_seed, point);
        std::vector<ExecutionRecord> records(config.trials);
        if (threads == 1) {
            for (std::size_t trial = 0; trial < config.trials; ++trial) {
                records[trial] =
                    run_trial(code, config.protocol, crossover, derive_seed(point_seed, trial));
            }
        } else {
            std::atomic<std::size_t> next{0};
            std::vector<std::thread> pool;
            pool.reserve(threads);
            for (unsigned t = 0; t < threads; ++t) {
                pool.emplace_back([&]() {
                    for (;;) {
                        const std::size_t trial = next.fetch_add(1);
                        if (trial >= config.trials) {
                            return;
                        }
                        records[trial] = run_trial(code, config.protocol, crossover,
                                                   derive_seed(point_seed, trial));
                    }
                });
            }
            for (auto& worker : pool) {
                worker.join();
            }
        }
        points.push_back({crossover, aggregate(records)});
    }
    return points;
}

std::string sweep_csv(const std::vector<SweepPoint>& points) {
    std::string csv = "e,M,N_hat,p_hat,s_hat,pi_hat,sigma_hat,f_hat,FER\n";
    char buf[256];
    for (const auto& point : points) {
        const auto& s = point.stats;
        std::snprintf(buf, sizeof buf, "%g,%zu,%.4f,%.2f,%.2f,", point.crossover, s.count,
                      s.mean_rounds, s.mean_punctured, s.mean_shortened);
        csv += buf;
        if (s.has_rate_stats) {
            std::snprintf(buf, sizeof buf, "%.6f,%.6f,", s.mean_pi, s.mean_sigma);
            csv += buf;
        } else {
            csv += ",,";
        }
        if (s.has_efficiency) {
            std::snprintf(buf, sizeof buf, "%.5f,", s.efficiency);
            csv += buf;
        } else {
            csv += ",";
        }
        std::snprintf(buf, sizeof buf, "%.4f\n", s.fer);
        csv += buf;
    }
    return csv;
}

} // namespace recon
