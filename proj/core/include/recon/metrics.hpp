#pragma once

#include <cstddef>
#include <vector>

namespace recon {

/// Binary Shannon entropy h2(e) in bits; h2(0) = h2(1) = 0 by continuity.
double binary_entropy(double e);

/// Inverse of h2 on [0, 0.5]: the crossover e with h2(e) = entropy.
/// entropy must lie in [0, 1].
double binary_entropy_inverse(double entropy);

/// Reconciliation efficiency at a final puncturing fraction pi:
/// (1 - r0 - pi) / ((1 - delta) * h2(e)). Serves both per-execution and
/// averaged inputs (it is linear in pi). e must lie in (0, 0.5).
double execution_efficiency(double r0, double delta, double pi, double e);

/// Per-round efficiency line f_j = f0 + j * epsilon.
struct RoundEfficiency {
    double f0 = 0.0;
    double epsilon = 0.0;
};

/// f0 = (1 - r0 - delta) / ((1 - delta) h2(e)), epsilon = q_step / ((1 - delta) h2(e)):
/// f0 + j*epsilon equals execution_efficiency at pi = delta - j*q_step.
RoundEfficiency round_efficiency_params(double r0, double delta, double q_step, double e);

/// Efficiency from raw counts: (disclosed_bits / key_length) / h2(e).
double raw_efficiency(double disclosed_bits, double key_length, double e);

/// Terminal state of one reconciliation execution.
struct ExecutionRecord {
    std::size_t n = 0;
    double r0 = 0.0;
    double delta = 0.0;
    double crossover = 0.0;
    double pi_final = 0.0;
    double sigma_final = 0.0;
    unsigned rounds = 0;
    bool success = false;
};

/// Means over a batch of executions at one crossover. pi/sigma and the
/// efficiency are absent when every execution ended at the minimum rate
/// (fully shortened); the efficiency is also absent without any success.
struct AggregateStats {
    std::size_t count = 0;
    double mean_rounds = 0.0;
    double mean_punctured = 0.0;
    double mean_shortened = 0.0;
    double fer = 0.0;
    bool has_rate_stats = false;
    double mean_pi = 0.0;
    double mean_sigma = 0.0;
    bool has_efficiency = false;
    double efficiency = 0.0;
};

/// Arithmetic means over all records; the efficiency applies
/// execution_efficiency to the mean puncturing fraction of the successful
/// executions. Records must be non-empty and share (n, r0, delta, crossover).
AggregateStats aggregate(const std::vector<ExecutionRecord>& records);

} // namespace recon
