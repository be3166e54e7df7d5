#pragma once

#include <cstdint>

namespace recam {

/// Affine-gap scoring parameters. A gap of length L costs
/// g_first + (L - 1) * g_ext, so opening must not be cheaper than
/// extending.
struct ScoringParams {
    int32_t match = 2;     ///< score for a matching base pair (> 0)
    int32_t mismatch = -1; ///< score for a mismatching base pair (< 0)
    int32_t g_first = 2;   ///< penalty for opening a gap (>= g_ext)
    int32_t g_ext = 1;     ///< penalty for extending a gap (>= 0)

    /// Throws std::invalid_argument when the sign/order constraints are
    /// violated.
    void validate() const;
};

} // namespace recam
