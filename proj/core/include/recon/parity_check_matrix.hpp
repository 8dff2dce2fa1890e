#pragma once

#include <cstdint>
#include <vector>

#include "recon/bits.hpp"

namespace recon {

/// Sparse binary parity-check matrix: one sorted column-index list per check
/// row. Immutable after construction; safe to share across threads read-only.
struct ParityCheckMatrix {
    std::size_t n = 0;
    std::vector<std::vector<std::uint32_t>> rows;

    std::size_t m() const { return rows.size(); }
    std::size_t edge_count() const {
        std::size_t e = 0;
        for (const auto& row : rows) {
            e += row.size();
        }
        return e;
    }
};

/// Throws std::invalid_argument unless every row is sorted, duplicate-free,
/// in range, and every column appears in at least one row.
void validate(const ParityCheckMatrix& h);

/// Row indices per column (the transpose adjacency).
std::vector<std::vector<std::uint32_t>> column_adjacency(const ParityCheckMatrix& h);

struct Syndrome {
    Bits bits;
};

/// z = H * word over GF(2): bit r is the XOR of word bits at row r's columns.
Syndrome syndrome(const ParityCheckMatrix& h, const Bits& word);

} // namespace recon
