#include "recam/oracle.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace recam {

void ScoringParams::validate() const {
    if (match <= 0)
        throw std::invalid_argument("match score must be positive");
    if (mismatch >= 0)
        throw std::invalid_argument("mismatch score must be negative");
    if (g_ext < 0)
        throw std::invalid_argument("gap extension penalty must be nonnegative");
    if (g_first < g_ext)
        throw std::invalid_argument("gap open penalty must be >= gap extension penalty");
}

} // namespace recam

namespace recam::oracle {

namespace {

void check_inputs(std::string_view a, std::string_view b, const ScoringParams& p) {
    if (a.empty() || b.empty())
        throw std::invalid_argument("oracle: sequences must be nonempty");
    p.validate();
}

} // namespace

int32_t gotoh_score(std::string_view a, std::string_view b, const ScoringParams& params) {
    check_inputs(a, b, params);
    // Roll over the shorter sequence; the score is symmetric.
    if (b.size() > a.size())
        std::swap(a, b);

    const std::size_t m = b.size();
    const int64_t gf = params.g_first;
    const int64_t ge = params.g_ext;

    // h_prev[j] = H(i-1, j), f_col[j] = F(i-1, j) while row i is being filled.
    std::vector<int64_t> h_prev(m + 1, 0);
    std::vector<int64_t> f_col(m + 1, 0);
    int64_t best = 0;

    for (std::size_t i = 1; i <= a.size(); ++i) {
        int64_t diag = h_prev[0]; // H(i-1, j-1), starts at H(i-1, 0) = 0
        int64_t h_left = 0;       // H(i, j-1), boundary H(i, 0) = 0
        int64_t e_run = 0;        // E(i, j-1), boundary E(i, 0) = 0
        for (std::size_t j = 1; j <= m; ++j) {
            const int64_t sigma = (a[i - 1] == b[j - 1]) ? params.match : params.mismatch;
            const int64_t e_ij = std::max(e_run - ge, h_left - gf);
            const int64_t f_ij = std::max(f_col[j] - ge, h_prev[j] - gf);
            const int64_t h_ij = std::max({diag + sigma, e_ij, f_ij, int64_t{0}});
            best = std::max(best, h_ij);

            diag = h_prev[j];
            h_prev[j] = h_ij;
            f_col[j] = f_ij;
            h_left = h_ij;
            e_run = e_ij;
        }
        h_prev[0] = 0;
    }
    return static_cast<int32_t>(best);
}

GotohMatrix gotoh_full_matrix(std::string_view a, std::string_view b,
                              const ScoringParams& params, std::size_t max_cells) {
    check_inputs(a, b, params);
    const std::size_t n = a.size();
    const std::size_t m = b.size();
    if (n * m > max_cells)
        throw std::invalid_argument("gotoh_full_matrix: input exceeds cell cap (" +
                                    std::to_string(n * m) + " > " +
                                    std::to_string(max_cells) + ")");

    GotohMatrix out;
    out.n = n;
    out.m = m;
    const std::size_t stride = m + 1;
    out.h.assign((n + 1) * stride, 0);
    out.e.assign((n + 1) * stride, 0);
    out.f.assign((n + 1) * stride, 0);

    int64_t best = 0;
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = 1; j <= m; ++j) {
            const int64_t sigma = (a[i - 1] == b[j - 1]) ? params.match : params.mismatch;
            const int64_t e_ij = std::max<int64_t>(out.e[i * stride + j - 1] - params.g_ext,
                                                   out.h[i * stride + j - 1] - params.g_first);
            const int64_t f_ij = std::max<int64_t>(out.f[(i - 1) * stride + j] - params.g_ext,
                                                   out.h[(i - 1) * stride + j] - params.g_first);
            const int64_t h_ij = std::max({out.h[(i - 1) * stride + j - 1] + sigma,
                                           e_ij, f_ij, int64_t{0}});
            out.e[i * stride + j] = static_cast<int32_t>(e_ij);
            out.f[i * stride + j] = static_cast<int32_t>(f_ij);
            out.h[i * stride + j] = static_cast<int32_t>(h_ij);
            best = std::max(best, h_ij);
        }
    }
    out.score = static_cast<int32_t>(best);
    return out;
}

std::vector<int32_t> GotohMatrix::h_antidiagonal(std::size_t d) const {
    std::vector<int32_t> cells;
    for (std::size_t i = 1; i <= n; ++i) {
        if (d + 2 < i + 1)
            break;
        const std::size_t j = d + 2 - i;
        if (j >= 1 && j <= m)
            cells.push_back(h_at(i, j));
    }
    return cells;
}

} // namespace recam::oracle
