#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "recon/bits.hpp"
#include "recon/parity_check_matrix.hpp"

namespace recon {

/// Saturation magnitude for LLRs and messages, natural-log units.
constexpr double kLlrSaturation = 30.0;

/// Per-position log-likelihood ratios; positive means bit 0 is more likely.
struct LlrVector {
    std::vector<double> values;
};

enum class DecodeOutcome { Converged, MaxItersReached };

struct DecodeResult {
    DecodeOutcome outcome = DecodeOutcome::MaxItersReached;
    Bits word;
    std::size_t iterations = 0;
    bool syndrome_matched = false;
};

/// Channel LLRs for syndrome decoding over a BSC: key positions get
/// +/- ln((1-e)/e) from the observed bit, punctured positions exactly 0,
/// shortened positions +/- kLlrSaturation from the revealed bit (the observed
/// bit there is ignored). Punctured and shortened sets must be disjoint and
/// in range; assumed_crossover must lie in (0, 0.5).
LlrVector init_llrs(const Bits& observed, double assumed_crossover,
                    const std::vector<std::uint32_t>& punctured,
                    const std::vector<std::pair<std::uint32_t, std::uint8_t>>& shortened);

/// Flooding sum-product decoding toward a target syndrome. Each iteration
/// ends with a hard decision and a syndrome test; returns at the first match.
/// Messages are clamped to +/- kLlrSaturation. Decode failure is a result,
/// not an error.
DecodeResult decode_syndrome(const ParityCheckMatrix& h, const LlrVector& llrs,
                             const Syndrome& target, std::size_t max_iters = 100);

/// Crossover e solving 1 - h2(e) = rate, clamped to [e0, e1]. The blind
/// protocol decodes with this capacity-matched channel assumption.
double capacity_matched_crossover(double rate, double e0, double e1);

namespace detail {

/// Tanh-rule check update for one row: outgoing[i] is the extrinsic message
/// toward edge i given incoming messages on the other edges and the row's
/// syndrome bit. Exposed for message-finiteness tests.
void update_check_row(const double* incoming, std::size_t degree,
                      std::uint8_t syndrome_bit, double* outgoing);

} // namespace detail

} // namespace recon
