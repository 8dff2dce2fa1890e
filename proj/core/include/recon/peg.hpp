#pragma once

#include <cstdint>

#include "recon/degree_distribution.hpp"
#include "recon/parity_check_matrix.hpp"

namespace recon {

/// Progressive edge growth construction. Node counts per degree come from
/// largest-remainder quantization of the distribution's node-perspective
/// fractions; the seed shuffles which column/row indices carry which degree.
/// Each edge attaches to the candidate check that maximizes graph distance
/// from the variable (unreachable counts as infinite), breaking ties by
/// lowest current check degree, then lowest index; candidates are checks
/// below their target degree, so the realized histogram deviates from the
/// quantized target by at most one node per degree. Deterministic for fixed
/// (n, dist, seed). Requires n >= 64.
ParityCheckMatrix build_peg_code(std::size_t n, const DegreeDistribution& dist,
                                 std::uint64_t seed);

} // namespace recon
