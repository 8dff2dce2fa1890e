#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "recon/prng.hpp"

namespace recon {

/// One bit per element, each value 0 or 1.
using Bits = std::vector<std::uint8_t>;

/// Packs bits MSB-first into bytes; the final byte is zero-padded.
inline std::vector<std::uint8_t> pack_bits(const Bits& bits) {
    std::vector<std::uint8_t> bytes((bits.size() + 7) / 8, 0);
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i]) {
            bytes[i / 8] |= static_cast<std::uint8_t>(0x80U >> (i % 8));
        }
    }
    return bytes;
}

/// Inverse of pack_bits for a known bit count.
inline Bits unpack_bits(const std::vector<std::uint8_t>& bytes, std::size_t bit_count) {
    if (bytes.size() < (bit_count + 7) / 8) {
        throw std::invalid_argument("unpack_bits: byte buffer shorter than bit count");
    }
    Bits bits(bit_count);
    for (std::size_t i = 0; i < bit_count; ++i) {
        bits[i] = (bytes[i / 8] >> (7 - i % 8)) & 1U;
    }
    return bits;
}

inline std::size_t hamming_distance(const Bits& a, const Bits& b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("hamming_distance: length mismatch");
    }
    std::size_t d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        d += (a[i] ^ b[i]) & 1U;
    }
    return d;
}

inline Bits random_bits(std::size_t count, Xoshiro256StarStar& rng) {
    Bits bits(count);
    for (auto& bit : bits) {
        bit = rng.next_bit();
    }
    return bits;
}

} // namespace recon
