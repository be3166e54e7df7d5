#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "recam/scoring.hpp"

// Scalar reference implementation of affine-gap local alignment scoring
// (Gotoh recurrences). Deliberately self-contained: it shares no code with
// the array simulator so that equivalence tests between the two are
// meaningful.

namespace recam::oracle {

/// Best local alignment score of a vs b. Rolling-row dynamic program,
/// O(min{n,m}) memory. Sequences must be nonempty; any byte values are
/// accepted and compared for equality.
int32_t gotoh_score(std::string_view a, std::string_view b,
                    const ScoringParams& params);

/// Fully materialized scoring matrices for small inputs, including the
/// zero boundary row/column. H, E and F are (n+1) x (m+1), row-major.
struct GotohMatrix {
    std::size_t n = 0;
    std::size_t m = 0;
    std::vector<int32_t> h;
    std::vector<int32_t> e;
    std::vector<int32_t> f;
    int32_t score = 0;

    int32_t h_at(std::size_t i, std::size_t j) const { return h[i * (m + 1) + j]; }
    int32_t e_at(std::size_t i, std::size_t j) const { return e[i * (m + 1) + j]; }
    int32_t f_at(std::size_t i, std::size_t j) const { return f[i * (m + 1) + j]; }

    /// Cells of H on antidiagonal d (0-based: cells (i,j), 1-indexed, with
    /// i + j == d + 2), ordered by increasing i.
    std::vector<int32_t> h_antidiagonal(std::size_t d) const;
};

/// Full-matrix variant of gotoh_score, capped at max_cells DP cells.
GotohMatrix gotoh_full_matrix(std::string_view a, std::string_view b,
                              const ScoringParams& params,
                              std::size_t max_cells = 1000000);

} // namespace recam::oracle
