#pragma once

#include <string>

#include "recon/parity_check_matrix.hpp"

namespace recon {

/// Serializes to alist text: "n m", max column/row degrees, per-column then
/// per-row degree lists, then 1-based row indices per column and 1-based
/// column indices per row, each index list zero-padded to the side's maximum
/// degree.
std::string save_alist(const ParityCheckMatrix& h);

/// Parses alist text. Accepts both padded and unpadded index lists; rejects
/// malformed headers, out-of-range or duplicate indices, and column/row lists
/// that contradict each other. Throws std::invalid_argument.
ParityCheckMatrix load_alist(const std::string& text);

void save_alist_file(const ParityCheckMatrix& h, const std::string& path);
ParityCheckMatrix load_alist_file(const std::string& path);

} // namespace recon
