#include "recon/parity_check_matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace recon {

void validate(const ParityCheckMatrix& h) {
    if (h.n == 0 || h.rows.empty()) {
        throw std::invalid_argument("matrix has no columns or no rows");
    }
    std::vector<std::uint8_t> covered(h.n, 0);
    for (const auto& row : h.rows) {
        if (!std::is_sorted(row.begin(), row.end())) {
            throw std::invalid_argument("row columns not sorted");
        }
        if (std::adjacent_find(row.begin(), row.end()) != row.end()) {
            throw std::invalid_argument("duplicate column in row");
        }
        for (const auto col : row) {
            if (col >= h.n) {
                throw std::invalid_argument("column index out of range");
            }
            covered[col] = 1;
        }
    }
    for (std::size_t c = 0; c < h.n; ++c) {
        if (!covered[c]) {
            throw std::invalid_argument("column participates in no row");
        }
    }
}

std::vector<std::vector<std::uint32_t>> column_adjacency(const ParityCheckMatrix& h) {
    std::vector<std::vector<std::uint32_t>> cols(h.n);
    for (std::size_t r = 0; r < h.rows.size(); ++r) {
        for (const auto col : h.rows[r]) {
            cols[col].push_back(static_cast<std::uint32_t>(r));
        }
    }
    return cols;
}

Syndrome syndrome(const ParityCheckMatrix& h, const Bits& word) {
    if (word.size() != h.n) {
        throw std::invalid_argument("syndrome: word length does not match matrix columns");
    }
    Syndrome z;
    z.bits.resize(h.rows.size());
    for (std::size_t r = 0; r < h.rows.size(); ++r) {
        std::uint8_t parity = 0;
        for (const auto col : h.rows[r]) {
            parity ^= word[col] & 1U;
        }
        z.bits[r] = parity;
    }
    return z;
}

} // namespace recon
