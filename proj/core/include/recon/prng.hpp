#pragma once

#include <array>
#include <cstdint>

namespace recon {

/// Advances a SplitMix64 state and returns the next output.
std::uint64_t splitmix64_next(std::uint64_t& state);

/// One-shot SplitMix64 step: mixes a value into a well-distributed 64-bit word.
std::uint64_t mix64(std::uint64_t value);

/// xoshiro256** 1.0 (Blackman/Vigna). The four state words are filled from a
/// SplitMix64 sequence started at `seed`, so every 64-bit seed is valid,
/// including zero. Output sequences are reproducible bit-for-bit across
/// platforms; reference vectors live in the unit tests and README.
class Xoshiro256StarStar {
public:
    explicit Xoshiro256StarStar(std::uint64_t seed);

    std::uint64_t next();

    /// Uniform double in [0, 1) using the high 53 bits of next().
    double next_double();

    /// Uniform integer in [0, bound). Unbiased (rejection sampling); bound >= 1.
    std::uint64_t next_below(std::uint64_t bound);

    /// Single uniform bit, taken MSB-first from buffered next() words.
    std::uint8_t next_bit();

private:
    std::array<std::uint64_t, 4> state_;
    std::uint64_t bit_buffer_ = 0;
    int bits_left_ = 0;
};

/// Stable seed for an independent stream: mix64 over (master, stream).
/// Order-independent, so parallel consumers can derive their own seeds.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

} // namespace recon
