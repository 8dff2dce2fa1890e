#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "recon/bits.hpp"

namespace recon {

/// Rate-modulation parameters for a mother code of length n and design rate
/// r0: delta is the constant punctured-plus-shortened fraction, q_rounds the
/// maximum number of extra feedback rounds, q_step = delta / q_rounds the
/// per-round conversion fraction.
struct ModulationParams {
    std::size_t n = 0;
    double r0 = 0.0;
    double delta = 0.0;
    unsigned q_rounds = 0;
    double q_step = 0.0;

    /// Total reserved (punctured + shortened) symbol count, floor(delta * n).
    std::size_t reserved_count() const;
    /// Constant correctable key length, n - reserved_count().
    std::size_t key_length() const;
};

/// Validates and fills q_step. delta = 0 degenerates to a single-shot
/// protocol and requires q_rounds = 0; otherwise 0 < delta < min(r0, 1 - r0),
/// q_rounds >= 1, and floor(delta * n) >= q_rounds.
ModulationParams make_modulation_params(std::size_t n, double r0, double delta,
                                        unsigned q_rounds);

/// Modulated rate (r0 - sigma) / (1 - pi - sigma). Requires pi, sigma >= 0,
/// pi + sigma < 1, r0 > sigma, and a result inside (0, 1).
double modulated_rate(double r0, double pi, double sigma);

/// Achievable rate interval for a fraction delta of modulated symbols:
/// r_min = (r0 - delta) / (1 - delta), r_max = r0 / (1 - delta).
/// Requires 0 <= delta <= r0 and delta < 1.
std::pair<double, double> rate_bounds(double r0, double delta);

/// True iff the rate interval covers the BSC capacity range for crossovers
/// [e0, e1]: r_min <= 1 - h2(e1) and r_max >= 1 - h2(e0).
bool range_check(double r0, double delta, double e0, double e1);

/// Punctured and shortened counts realizing target_rate:
/// s = ceil((r0 - target_rate * (1 - delta)) * n), p = floor(delta * n) - s.
std::pair<std::size_t, std::size_t> symbols_for_rate(std::size_t n, double r0, double delta,
                                                     double target_rate);

struct ScheduleRow {
    unsigned round = 0;
    std::size_t punctured = 0;
    std::size_t shortened = 0;
    double rate = 0.0;
};

struct RoundSchedule {
    std::vector<ScheduleRow> rows;
};

/// Per-round plan: row j shortens ceil(j * floor(delta*n) / q_rounds) symbols
/// of the reserved set, so row 0 is all-punctured and row q_rounds is
/// all-shortened, with p + s constant.
RoundSchedule build_schedule(const ModulationParams& params);

enum class SymbolRole : std::uint8_t { Key, Punctured, Shortened };

/// Length-n symbol vector with a role per position. Key positions hold the
/// correctable key; reserved positions start Punctured and may only move to
/// Shortened.
struct Frame {
    Bits values;
    std::vector<SymbolRole> roles;

    std::size_t size() const { return values.size(); }
    std::size_t count(SymbolRole role) const;
};

/// Draws `count` distinct positions in [0, n) from the seed; both parties
/// derive the same reserved set from the transcript seed. Sorted ascending.
std::vector<std::uint32_t> draw_reserved_positions(std::size_t n, std::size_t count,
                                                   std::uint64_t seed);

/// Builds a frame of length key.size() + reserved.size(): key bits fill the
/// non-reserved positions in ascending index order; reserved positions are
/// Punctured and take punctured_values if non-empty (matching size), else
/// seeded random bits.
Frame assemble_frame(const Bits& key, const std::vector<std::uint32_t>& reserved,
                     const Bits& punctured_values, std::uint64_t seed);

/// Key bits back out of a frame, ascending key positions.
Bits extract_key(const Frame& frame);

std::vector<std::uint32_t> punctured_positions(const Frame& frame);
std::vector<std::pair<std::uint32_t, std::uint8_t>> shortened_entries(const Frame& frame);

/// Converts a seeded uniform subset of `count` punctured positions to
/// Shortened, keeping their values. Returns the new frame and the revealed
/// (position, bit) entries sorted by position.
std::pair<Frame, std::vector<std::pair<std::uint32_t, std::uint8_t>>>
convert_to_shortened(const Frame& frame, std::size_t count, std::uint64_t seed);

/// Marks revealed positions Shortened with the peer's values. Positions must
/// currently be Punctured; violations throw std::invalid_argument.
void apply_reveal(Frame& frame,
                  const std::vector<std::pair<std::uint32_t, std::uint8_t>>& entries);

} // namespace recon
