#include "recon/rate_adapt.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "recon/metrics.hpp"
#include "recon/prng.hpp"

namespace recon {

namespace {

// Snaps away float noise just below an integer before ceil.
std::size_t ceil_snapped(double v) {
    if (v <= 0.0) {
        return 0;
    }
    return static_cast<std::size_t>(std::ceil(v - 1e-9));
}

std::vector<std::uint32_t> sample_without_replacement(std::vector<std::uint32_t> pool,
                                                      std::size_t count, std::uint64_t seed) {
    Xoshiro256StarStar rng(seed);
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t j = i + rng.next_below(pool.size() - i);
        std::swap(pool[i], pool[j]);
    }
    pool.resize(count);
    std::sort(pool.begin(), pool.end());
    return pool;
}

} // namespace

std::size_t ModulationParams::reserved_count() const {
    return static_cast<std::size_t>(std::floor(delta * static_cast<double>(n)));
}

std::size_t ModulationParams::key_length() const {
    return n - reserved_count();
}

ModulationParams make_modulation_params(std::size_t n, double r0, double delta,
                                        unsigned q_rounds) {
    if (n < 1) {
        throw std::invalid_argument("modulation params: n must be positive");
    }
    if (!(r0 > 0.0 && r0 < 1.0)) {
        throw std::invalid_argument("modulation params: r0 must be in (0, 1)");
    }
    ModulationParams params;
    params.n = n;
    params.r0 = r0;
    params.delta = delta;
    params.q_rounds = q_rounds;
    if (delta == 0.0) {
        if (q_rounds != 0) {
            throw std::invalid_argument("modulation params: delta = 0 requires zero rounds");
        }
        params.q_step = 0.0;
        return params;
    }
    if (!(delta > 0.0 && delta < r0 && delta < 1.0 - r0)) {
        throw std::invalid_argument("modulation params: delta must be in (0, min(r0, 1 - r0))");
    }
    if (q_rounds < 1) {
        throw std::invalid_argument("modulation params: need at least one round when delta > 0");
    }
    if (params.reserved_count() < q_rounds) {
        throw std::invalid_argument("modulation params: fewer reserved symbols than rounds");
    }
    params.q_step = delta / q_rounds;
    return params;
}

double modulated_rate(double r0, double pi, double sigma) {
    if (!(pi >= 0.0 && sigma >= 0.0)) {
        throw std::invalid_argument("modulated_rate: fractions must be nonnegative");
    }
    const double denom = 1.0 - pi - sigma;
    if (!(denom > 0.0)) {
        throw std::invalid_argument("modulated_rate: pi + sigma must be below 1");
    }
    if (!(r0 - sigma > 0.0)) {
        throw std::invalid_argument("modulated_rate: sigma must be below r0");
    }
    const double rate = (r0 - sigma) / denom;
    if (!(rate > 0.0 && rate < 1.0)) {
        throw std::invalid_argument("modulated_rate: rate outside (0, 1)");
    }
    return rate;
}

std::pair<double, double> rate_bounds(double r0, double delta) {
    if (!(r0 > 0.0 && r0 <= 1.0)) {
        throw std::invalid_argument("rate_bounds: r0 must be in (0, 1]");
    }
    if (!(delta >= 0.0 && delta <= r0 && delta < 1.0)) {
        throw std::invalid_argument("rate_bounds: delta must be in [0, min(r0, 1))");
    }
    const double r_min = (r0 - delta) / (1.0 - delta);
    const double r_max = r0 / (1.0 - delta);
    return {r_min, r_max};
}

bool range_check(double r0, double delta, double e0, double e1) {
    if (!(e0 >= 0.0 && e0 <= e1 && e1 < 0.5)) {
        throw std::invalid_argument("range_check: need 0 <= e0 <= e1 < 0.5");
    }
    const auto [r_min, r_max] = rate_bounds(r0, delta);
    return r_min <= 1.0 - binary_entropy(e1) && r_max >= 1.0 - binary_entropy(e0);
}

std::pair<std::size_t, std::size_t> symbols_for_rate(std::size_t n, double r0, double delta,
                                                     double target_rate) {
    const auto [r_min, r_max] = rate_bounds(r0, delta);
    if (!(target_rate >= r_min - 1e-12 && target_rate <= r_max + 1e-12)) {
        throw std::invalid_argument("symbols_for_rate: target outside the achievable interval");
    }
    const auto reserved =
        static_cast<std::size_t>(std::floor(delta * static_cast<double>(n)));
    std::size_t s =
        ceil_snapped((r0 - target_rate * (1.0 - delta)) * static_cast<double>(n));
    s = std::min(s, reserved);
    return {reserved - s, s};
}

RoundSchedule build_schedule(const ModulationParams& params) {
    RoundSchedule schedule;
    if (params.delta == 0.0) {
        schedule.rows.push_back({0, 0, 0, params.r0});
        return schedule;
    }
    const std::size_t reserved = params.reserved_count();
    const auto n = static_cast<double>(params.n);
    for (unsigned j = 0; j <= params.q_rounds; ++j) {
        const std::size_t s = (static_cast<std::size_t>(j) * reserved + params.q_rounds - 1) /
                              params.q_rounds;
        const std::size_t p = reserved - s;
        const double rate = modulated_rate(params.r0, static_cast<double>(p) / n,
                                           static_cast<double>(s) / n);
        schedule.rows.push_back({j, p, s, rate});
    }
    return schedule;
}

std::size_t Frame::count(SymbolRole role) const {
    return static_cast<std::size_t>(std::count(roles.begin(), roles.end(), role));
}

std::vector<std::uint32_t> draw_reserved_positions(std::size_t n, std::size_t count,
                                                   std::uint64_t seed) {
    if (count > n) {
        throw std::invalid_argument("draw_reserved_positions: count exceeds length");
    }
    std::vector<std::uint32_t> pool(n);
    std::iota(pool.begin(), pool.end(), 0);
    return sample_without_replacement(std::move(pool), count, seed);
}

Frame assemble_frame(const Bits& key, const std::vector<std::uint32_t>& reserved,
                     const Bits& punctured_values, std::uint64_t seed) {
    const std::size_t n = key.size() + reserved.size();
    std::vector<std::uint8_t> is_reserved(n, 0);
    for (const auto pos : reserved) {
        if (pos >= n) {
            throw std::invalid_argument("assemble_frame: reserved position out of range");
        }
        if (is_reserved[pos]) {
            throw std::invalid_argument("assemble_frame: duplicate reserved position");
        }
        is_reserved[pos] = 1;
    }
    Bits fill = punctured_values;
    if (fill.empty() && !reserved.empty()) {
        Xoshiro256StarStar rng(seed);
        fill = random_bits(reserved.size(), rng);
    }
    if (fill.size() != reserved.size()) {
        throw std::invalid_argument("assemble_frame: punctured value count mismatch");
    }

    Frame frame;
    frame.values.resize(n);
    frame.roles.assign(n, SymbolRole::Key);
    std::size_t next_key = 0;
    for (std::size_t pos = 0; pos < n; ++pos) {
        if (!is_reserved[pos]) {
            frame.values[pos] = key[next_key++] & 1U;
        }
    }
    for (std::size_t i = 0; i < reserved.size(); ++i) {
        frame.values[reserved[i]] = fill[i] & 1U;
        frame.roles[reserved[i]] = SymbolRole::Punctured;
    }
    return frame;
}

Bits extract_key(const Frame& frame) {
    Bits key;
    key.reserve(frame.size());
    for (std::size_t pos = 0; pos < frame.size(); ++pos) {
        if (frame.roles[pos] == SymbolRole::Key) {
            key.push_back(frame.values[pos]);
        }
    }
    return key;
}

std::vector<std::uint32_t> punctured_positions(const Frame& frame) {
    std::vector<std::uint32_t> positions;
    for (std::size_t pos = 0; pos < frame.size(); ++pos) {
        if (frame.roles[pos] == SymbolRole::Punctured) {
            positions.push_back(static_cast<std::uint32_t>(pos));
        }
    }
    return positions;
}

std::vector<std::pair<std::uint32_t, std::uint8_t>> shortened_entries(const Frame& frame) {
    std::vector<std::pair<std::uint32_t, std::uint8_t>> entries;
    for (std::size_t pos = 0; pos < frame.size(); ++pos) {
        if (frame.roles[pos] == SymbolRole::Shortened) {
            entries.push_back({static_cast<std::uint32_t>(pos), frame.values[pos]});
        }
    }
    return entries;
}

std::pair<Frame, std::vector<std::pair<std::uint32_t, std::uint8_t>>>
convert_to_shortened(const Frame& frame, std::size_t count, std::uint64_t seed) {
    auto punctured = punctured_positions(frame);
    if (count > punctured.size()) {
        throw std::invalid_argument("convert_to_shortened: count exceeds punctured symbols");
    }
    const auto chosen = sample_without_replacement(std::move(punctured), count, seed);
    Frame converted = frame;
    std::vector<std::pair<std::uint32_t, std::uint8_t>> reveal;
    reveal.reserve(count);
    for (const auto pos : chosen) {
        converted.roles[pos] = SymbolRole::Shortened;
        reveal.push_back({pos, converted.values[pos]});
    }
    return {std::move(converted), std::move(reveal)};
}

void apply_reveal(Frame& frame,
                  const std::vector<std::pair<std::uint32_t, std::uint8_t>>& entries) {
    for (const auto& [pos, bit] : entries) {
        if (pos >= frame.size()) {
            throw std::invalid_argument("apply_reveal: position out of range");
        }
        if (frame.roles[pos] != SymbolRole::Punctured) {
            throw std::invalid_argument("apply_reveal: position is not punctured");
        }
        frame.roles[pos] = SymbolRole::Shortened;
        frame.values[pos] = bit & 1U;
    }
}

} // namespace recon
