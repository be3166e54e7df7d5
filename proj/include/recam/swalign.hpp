#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "recam/scoring.hpp"
#include "recam/system.hpp"

// Smith-Waterman affine-gap score search executed on the simulated array.
//
// Sequence A occupies one base per row; antidiagonal d of the scoring
// matrix (cells (i, j), 1-indexed, with i + j = d + 2) lives on rows
// lo(d) .. hi(d). Each iteration advances one antidiagonal: seqB and the
// oldest H column shift down one row, the new H column is produced from
// the base-pair match plus the running E/F gap columns, and a scalar max
// accumulates the best cell seen. Three H columns are cyclically
// buffered; only the score is tracked, no traceback state.

namespace recam::sw {

/// 2-bit base encoding: A=00, C=01, G=10, T=11. Case-insensitive.
uint8_t encode_base(char c);
char decode_base(uint8_t code);
/// Encodes a whole sequence; errors name the 1-based offending position.
std::vector<uint8_t> encode_sequence(const std::string& seq, const char* which);

struct AlignmentJob {
    std::string seq_a;
    std::string seq_b;
    ScoringParams params;

    void validate() const;
};

/// Row range holding antidiagonal d's valid cells. Empty exactly at the
/// final iteration d = n + m - 1.
struct Window {
    uint64_t lo = 0;
    uint64_t hi = 0;
    bool empty = true;
    uint64_t size() const { return empty ? 0 : hi - lo + 1; }
};

Window active_window(uint64_t d, uint64_t n, uint64_t m);

struct AlignmentOptions {
    /// Charge the cyclic restoration of consumed seqB bases (6 cycles per
    /// iteration once the whole of B has been injected). No effect on the
    /// score.
    bool restore_seqb = false;
    /// Keep the per-iteration active-row counts in the result.
    bool record_active_trace = true;
};

struct AlignmentResult {
    int32_t max_score = 0;
    uint64_t total_iterations = 0;
    uint64_t total_cycles = 0;
    uint64_t cells_computed = 0;
    std::vector<uint64_t> active_rows_trace;
};

/// Step-wise driver for one job on one array. The array is owned
/// exclusively for the duration of the run.
class AlignmentRun {
public:
    AlignmentRun(ChainedArray& arr, AlignmentJob job, AlignmentOptions opts = {});

    /// Zeroes every column (scratch included), loads seqA one base per
    /// row, and clears the active flags. Re-initializing restores a
    /// bit-identical array state. Throws when seq_a outgrows the array.
    void init_layout();

    /// Executes the next iteration; returns false once all n+m have run.
    bool step();

    bool done() const { return initialized_ && d_ == n_ + m_; }
    uint64_t next_iteration() const { return d_; }
    uint64_t total_iterations() const { return n_ + m_; }
    int32_t max_score_so_far() const { return max_score_; }
    Window window(uint64_t d) const { return active_window(d, n_, m_); }
    /// Name of the column holding antidiagonal d of H.
    static std::string ad_column(uint64_t d);

    /// Final statistics; valid once done().
    AlignmentResult result() const;

private:
    ChainedArray& arr_;
    AlignmentJob job_;
    AlignmentOptions opts_;
    uint64_t n_ = 0;
    uint64_t m_ = 0;
    std::vector<uint8_t> codes_a_;
    std::vector<uint8_t> codes_b_;

    bool initialized_ = false;
    uint64_t d_ = 0;
    int32_t max_score_ = 0;
    uint64_t cells_ = 0;
    uint64_t ledger_start_ = 0;
    std::vector<uint64_t> trace_;
};

/// Runs a whole job and returns the result.
AlignmentResult run(ChainedArray& arr, const AlignmentJob& job,
                    const AlignmentOptions& opts = {});

/// Closed-form cycle count of run() for an n x m job on the given
/// configuration: initialization, n+m iteration bodies, the scalar max in
/// every nonempty iteration, boundary activate/deactivate writes, and the
/// per-instruction inter-IC overhead on multi-IC chains.
uint64_t predicted_total_cycles(uint64_t n, uint64_t m, const SystemConfig& config,
                                bool restore_seqb = false);

} // namespace recam::sw
