#pragma once

#include <cstdint>
#include <utility>

#include "recon/bits.hpp"

namespace recon {

/// Binary symmetric channel parameters.
struct BscParams {
    double crossover = 0.0; // flip probability, in [0, 0.5]
    std::uint64_t seed = 0;
};

/// Flips each bit of `word` independently with probability params.crossover.
/// Deterministic for a given seed.
Bits bsc_transmit(const Bits& word, const BscParams& params);

/// Correlated key pair: `first` is uniform random, `second` is its image
/// through the BSC. The key and the noise use independent streams derived
/// from params.seed.
std::pair<Bits, Bits> generate_key_pair(std::size_t length, const BscParams& params);

} // namespace recon
