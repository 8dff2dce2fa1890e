#include "recon/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace recon {

double binary_entropy(double e) {
    if (!(e >= 0.0 && e <= 1.0)) {
        throw std::invalid_argument("binary_entropy: argument outside [0, 1]");
    }
    if (e == 0.0 || e == 1.0) {
        return 0.0;
    }
    return -e * std::log2(e) - (1.0 - e) * std::log2(1.0 - e);
}

double binary_entropy_inverse(double entropy) {
    if (!(entropy >= 0.0 && entropy <= 1.0)) {
        throw std::invalid_argument("binary_entropy_inverse: argument outside [0, 1]");
    }
    double lo = 0.0;
    double hi = 0.5;
    // h2 is strictly increasing on [0, 0.5]; 200 bisections exhaust a double.
    for (int i = 0; i < 200 && lo < hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) {
            break;
        }
        if (binary_entropy(mid) < entropy) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

namespace {

double efficiency_denominator(double delta, double e) {
    if (!(e > 0.0 && e < 0.5)) {
        throw std::invalid_argument("efficiency: crossover must be in (0, 0.5)");
    }
    const double denom = (1.0 - delta) * binary_entropy(e);
    if (!(denom > 0.0)) {
        throw std::invalid_argument("efficiency: nonpositive denominator");
    }
    return denom;
}

} // namespace

double execution_efficiency(double r0, double delta, double pi, double e) {
    return (1.0 - r0 - pi) / efficiency_denominator(delta, e);
}

RoundEfficiency round_efficiency_params(double r0, double delta, double q_step, double e) {
    const double denom = efficiency_denominator(delta, e);
    return {(1.0 - r0 - delta) / denom, q_step / denom};
}

double raw_efficiency(double disclosed_bits, double key_length, double e) {
    if (!(key_length > 0.0)) {
        throw std::invalid_argument("raw_efficiency: key length must be positive");
    }
    if (disclosed_bits == 0.0) {
        return 0.0;
    }
    if (!(e > 0.0 && e < 0.5)) {
        throw std::invalid_argument("raw_efficiency: crossover must be in (0, 0.5)");
    }
    return (disclosed_bits / key_length) / binary_entropy(e);
}

AggregateStats aggregate(const std::vector<ExecutionRecord>& records) {
    if (records.empty()) {
        throw std::invalid_argument("aggregate: empty record list");
    }
    const auto& first = records.front();
    AggregateStats stats;
    stats.count = records.size();
    double sum_rounds = 0.0;
    double sum_pi = 0.0;
    double sum_sigma = 0.0;
    double sum_pi_success = 0.0;
    std::size_t failures = 0;
    std::size_t successes = 0;
    bool any_punctured = false;
    for (const auto& rec : records) {
        if (rec.n != first.n || rec.r0 != first.r0 || rec.delta != first.delta ||
            rec.crossover != first.crossover) {
            throw std::invalid_argument("aggregate: records mix code or channel parameters");
        }
        sum_rounds += rec.rounds;
        sum_pi += rec.pi_final;
        sum_sigma += rec.sigma_final;
        if (rec.success) {
            ++successes;
            sum_pi_success += rec.pi_final;
        } else {
            ++failures;
        }
        any_punctured = any_punctured || rec.pi_final > 0.0;
    }
    const auto m = static_cast<double>(records.size());
    stats.mean_rounds = sum_rounds / m;
    stats.mean_punctured = (sum_pi / m) * static_cast<double>(first.n);
    stats.mean_shortened = (sum_sigma / m) * static_cast<double>(first.n);
    stats.fer = static_cast<double>(failures) / m;
    stats.has_rate_stats = any_punctured;
    if (stats.has_rate_stats) {
        stats.mean_pi = sum_pi / m;
        stats.mean_sigma = sum_sigma / m;
    }
    if (any_punctured && successes > 0 && first.crossover > 0.0) {
        stats.has_efficiency = true;
        const double pi_hat = sum_pi_success / static_cast<double>(successes);
        stats.efficiency = execution_efficiency(first.r0, first.delta, pi_hat, first.crossover);
    }
    return stats;
}

} // namespace recon
