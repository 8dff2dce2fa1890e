#include "recon/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "recon/metrics.hpp"

namespace recon {

namespace {

// Largest double below 1: keeps atanh finite before the saturation clamp.
constexpr double kTanhCeiling = 0x1.fffffffffffffp-1;

double clamp_llr(double v) {
    return std::clamp(v, -kLlrSaturation, kLlrSaturation);
}

} // namespace

LlrVector init_llrs(const Bits& observed, double assumed_crossover,
                    const std::vector<std::uint32_t>& punctured,
                    const std::vector<std::pair<std::uint32_t, std::uint8_t>>& shortened) {
    if (!(assumed_crossover > 0.0 && assumed_crossover < 0.5)) {
        throw std::invalid_argument("init_llrs: assumed crossover must be in (0, 0.5)");
    }
    const std::size_t n = observed.size();
    const double key_magnitude = std::log((1.0 - assumed_crossover) / assumed_crossover);
    LlrVector llrs;
    llrs.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        llrs.values[i] = observed[i] ? -key_magnitude : key_magnitude;
    }
    std::vector<std::uint8_t> role(n, 0);
    for (const auto pos : punctured) {
        if (pos >= n) {
            throw std::invalid_argument("init_llrs: punctured position out of range");
        }
        if (role[pos]) {
            throw std::invalid_argument("init_llrs: duplicate punctured position");
        }
        role[pos] = 1;
        llrs.values[pos] = 0.0;
    }
    for (const auto& [pos, bit] : shortened) {
        if (pos >= n) {
            throw std::invalid_argument("init_llrs: shortened position out of range");
        }
        if (role[pos]) {
            throw std::invalid_argument("init_llrs: shortened position overlaps another role");
        }
        role[pos] = 2;
        llrs.values[pos] = bit ? -kLlrSaturation : kLlrSaturation;
    }
    return llrs;
}

namespace detail {

void update_check_row(const double* incoming, std::size_t degree,
                      std::uint8_t syndrome_bit, double* outgoing) {
    // Forward/backward partial products of tanh(m/2) avoid division and stay
    // stable when a message saturates.
    constexpr std::size_t kStackDegree = 64;
    double stack_fwd[kStackDegree];
    double stack_tanh[kStackDegree];
    std::vector<double> heap;
    double* fwd = stack_fwd;
    double* th = stack_tanh;
    if (degree > kStackDegree) {
        heap.resize(2 * degree);
        fwd = heap.data();
        th = heap.data() + degree;
    }
    double acc = 1.0;
    for (std::size_t i = 0; i < degree; ++i) {
        fwd[i] = acc;
        th[i] = std::tanh(0.5 * incoming[i]);
        acc *= th[i];
    }
    const double sign = syndrome_bit ? -1.0 : 1.0;
    double back = 1.0;
    for (std::size_t i = degree; i-- > 0;) {
        double t = sign * fwd[i] * back;
        t = std::clamp(t, -kTanhCeiling, kTanhCeiling);
        outgoing[i] = clamp_llr(2.0 * std::atanh(t));
        back *= th[i];
    }
}

} // namespace detail

DecodeResult decode_syndrome(const ParityCheckMatrix& h, const LlrVector& llrs,
                             const Syndrome& target, std::size_t max_iters) {
    if (llrs.values.size() != h.n) {
        throw std::invalid_argument("decode_syndrome: LLR length does not match matrix columns");
    }
    if (target.bits.size() != h.m()) {
        throw std::invalid_argument("decode_syndrome: syndrome length does not match matrix rows");
    }
    if (max_iters < 1) {
        throw std::invalid_argument("decode_syndrome: max_iters must be at least 1");
    }

    // Flat edge arrays in row-major order.
    const std::size_t edges = h.edge_count();
    std::vector<std::size_t> row_start(h.m() + 1, 0);
    std::vector<std::uint32_t> edge_col(edges);
    {
        std::size_t e = 0;
        for (std::size_t r = 0; r < h.m(); ++r) {
            row_start[r] = e;
            for (const auto col : h.rows[r]) {
                edge_col[e++] = col;
            }
        }
        row_start[h.m()] = e;
    }

    std::vector<double> var_to_check(edges);
    std::vector<double> check_to_var(edges, 0.0);
    std::vector<double> total(h.n);
    Bits word(h.n, 0);

    for (std::size_t e = 0; e < edges; ++e) {
        var_to_check[e] = clamp_llr(llrs.values[edge_col[e]]);
    }

    DecodeResult result;
    for (std::size_t iter = 1; iter <= max_iters; ++iter) {
        for (std::size_t r = 0; r < h.m(); ++r) {
            const std::size_t begin = row_start[r];
            detail::update_check_row(var_to_check.data() + begin, row_start[r + 1] - begin,
                                     target.bits[r], check_to_var.data() + begin);
        }

        for (std::size_t v = 0; v < h.n; ++v) {
            total[v] = llrs.values[v];
        }
        for (std::size_t e = 0; e < edges; ++e) {
            total[edge_col[e]] += check_to_var[e];
        }
        for (std::size_t e = 0; e < edges; ++e) {
            var_to_check[e] = clamp_llr(total[edge_col[e]] - check_to_var[e]);
        }

        for (std::size_t v = 0; v < h.n; ++v) {
            word[v] = total[v] < 0.0 ? 1 : 0;
        }
        bool matched = true;
        for (std::size_t r = 0; r < h.m() && matched; ++r) {
            std::uint8_t parity = 0;
            for (std::size_t e = row_start[r]; e < row_start[r + 1]; ++e) {
                parity ^= word[edge_col[e]];
            }
            matched = parity == target.bits[r];
        }
        if (matched) {
            result.outcome = DecodeOutcome::Converged;
            result.word = std::move(word);
            result.iterations = iter;
            result.syndrome_matched = true;
            return result;
        }
    }

    result.outcome = DecodeOutcome::MaxItersReached;
    result.word = std::move(word);
    result.iterations = max_iters;
    result.syndrome_matched = false;
    return result;
}

double capacity_matched_crossover(double rate, double e0, double e1) {
    if (!(e0 >= 0.0 && e0 <= e1 && e1 < 0.5)) {
        throw std::invalid_argument("capacity_matched_crossover: need 0 <= e0 <= e1 < 0.5");
    }
    const double target_entropy = 1.0 - rate;
    const double e = binary_entropy_inverse(target_entropy);
    return std::clamp(e, e0, e1);
}

} // namespace recon
