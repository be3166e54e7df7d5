#include "recam/swalign.hpp"

#include <algorithm>
#include <stdexcept>

#include "recam/isa.hpp"

namespace recam::sw {

uint8_t encode_base(char c) {
    switch (c) {
    case 'A': case 'a': return 0;
    case 'C': case 'c': return 1;
    case 'G': case 'g': return 2;
    case 'T': case 't': return 3;
    default:
        throw std::invalid_argument(std::string("invalid base '") + c + "'");
    }
}

char decode_base(uint8_t code) {
    static const char bases[] = {'A', 'C', 'G', 'T'};
    if (code > 3)
        throw std::invalid_argument("invalid base code " + std::to_string(code));
    return bases[code];
}

std::vector<uint8_t> encode_sequence(const std::string& seq, const char* which) {
    std::vector<uint8_t> codes;
    codes.reserve(seq.size());
    for (std::size_t i = 0; i < seq.size(); ++i) {
        try {
            codes.push_back(encode_base(seq[i]));
        } catch (const std::invalid_argument&) {
            throw std::invalid_argument(std::string("sequence ") + which + ": invalid base '" +
                                        seq[i] + "' at position " + std::to_string(i + 1));
        }
    }
    return codes;
}

void AlignmentJob::validate() const {
    if (seq_a.empty() || seq_b.empty())
        throw std::invalid_argument("alignment job: sequences must be nonempty");
    params.validate();
}

Window active_window(uint64_t d, uint64_t n, uint64_t m) {
    if (d >= n + m)
        throw std::out_of_range("active_window: iteration out of range");
    Window w;
    const uint64_t lo = d + 1 > m ? d + 1 - m : 0;
    const uint64_t hi = std::min(d, n - 1);
    if (lo > hi)
        return w; // empty (only at d = n + m - 1)
    w.lo = lo;
    w.hi = hi;
    w.empty = false;
    return w;
}

AlignmentRun::AlignmentRun(ChainedArray& arr, AlignmentJob job, AlignmentOptions opts)
    : arr_(arr), job_(std::move(job)), opts_(opts) {
    job_.validate();
    codes_a_ = encode_sequence(job_.seq_a, "A");
    codes_b_ = encode_sequence(job_.seq_b, "B");
    n_ = codes_a_.size();
    m_ = codes_b_.size();
}

void AlignmentRun::init_layout() {
    if (n_ > arr_.rows())
        throw std::invalid_argument("alignment job: sequence A (" + std::to_string(n_) +
                                    " rows) exceeds array capacity (" +
                                    std::to_string(arr_.rows()) + " rows)");
    ledger_start_ = arr_.ledger().total_cycles();
    {
        CycleLedger::MacroScope scope(arr_.ledger(), "init_layout");
        // One full-width write clears every field and scratch column.
        BitPattern key(arr_.width()), mask(arr_.width());
        mask.set_range(0, arr_.width());
        arr_.set_tag_all();
        arr_.write_tagged(key, mask);
        for (uint64_t r = 0; r < n_; ++r)
            isa::broadcast_write_row(arr_, "seqA", codes_a_[r], r);
    }
    d_ = 0;
    initialized_ = true;
    max_score_ = 0;
    cells_ = 0;
    trace_.clear();
}

std::string AlignmentRun::ad_column(uint64_t d) {
    return FieldLayout::ad_name(d);
}

bool AlignmentRun::step() {
    if (!initialized_)
        throw std::logic_error("alignment run: init_layout() has not run");
    if (done())
        return false;

    const uint64_t d = d_;
    const auto& p = job_.params;
    const std::string right = FieldLayout::ad_name(d);
    const std::string middle = FieldLayout::ad_name(d + 2);
    const std::string left = FieldLayout::ad_name(d + 1);

    if (d == 0)
        isa::broadcast_write_row(arr_, "active", 1, 0);

    // Advance seqB one row and inject the next base (a null code once B is
    // exhausted; the row holding it is never inside the window then).
    isa::shift_field_down(arr_, "seqB");
    isa::broadcast_write_row(arr_, "seqB", d < m_ ? codes_b_[d] : 0, 0);

    // H(i-1, j-1) alignment: the column two iterations old moves down one
    // row; the TAG carry-in feeds a zero into row 0.
    isa::shift_field_down(arr_, left);

    isa::match_basepairs(arr_, "tmp", "seqA", "seqB", p.match, p.mismatch);
    isa::add_fields(arr_, right, left, "tmp");

    // Clamp at zero: max against a freshly zeroed column.
    isa::broadcast_write(arr_, "tmp", 0);
    isa::max_rowwise(arr_, right, right, "tmp");

    // The gap-open term is shared by both gap recurrences.
    isa::sub_scalar(arr_, left, middle, p.g_first);

    isa::sub_scalar(arr_, "tmp", "F", p.g_ext);
    isa::max_rowwise(arr_, "F", left, "tmp");
    isa::max_rowwise(arr_, right, right, "F");

    isa::sub_scalar(arr_, "tmp", "E", p.g_ext);
    isa::max_rowwise(arr_, "E", left, "tmp");
    isa::shift_field_down(arr_, "E");
    isa::max_rowwise(arr_, right, right, "E");

    // The row that slid out of the window after the previous iteration
    // stayed active through the E update above -- the shift just carried
    // its gap term into the top window row -- and retires before the
    // scalar readout can see it.
    if (d >= m_)
        isa::broadcast_write_row(arr_, "active", 0, d - m_);

    const Window w = active_window(d, n_, m_);
    if (!w.empty) {
        const isa::MaxScalarResult ms = isa::max_scalar(arr_, right);
        max_score_ = std::max(max_score_, ms.value);
    }

    if (opts_.restore_seqb && d >= m_)
        arr_.ledger().charge("seqb_restore", 6);

    // Grow the window for the next iteration.
    if (d + 1 <= n_ - 1)
        isa::broadcast_write_row(arr_, "active", 1, d + 1);

    cells_ += w.size();
    if (opts_.record_active_trace)
        trace_.push_back(w.size());

    ++d_;
    return !done();
}

AlignmentResult AlignmentRun::result() const {
    if (!done())
        throw std::logic_error("alignment run: not finished");
    AlignmentResult r;
    r.max_score = max_score_;
    r.total_iterations = n_ + m_;
    r.total_cycles = arr_.ledger().total_cycles() - ledger_start_;
    r.cells_computed = cells_;
    r.active_rows_trace = trace_;
    return r;
}

AlignmentResult run(ChainedArray& arr, const AlignmentJob& job, const AlignmentOptions& opts) {
    AlignmentRun runner(arr, job, opts);
    runner.init_layout();
    while (runner.step()) {
    }
    return runner.result();
}

uint64_t predicted_total_cycles(uint64_t n, uint64_t m, const SystemConfig& config,
                                bool restore_seqb) {
    const uint64_t ov = config.num_ics > 1 ? config.inter_ic_shift_overhead_cycles : 0;
    // Iteration body without the scalar max: seqB shift (6) + inject (1)
    // + H shift (96) + match (10) + add (512) + clamp (1 + 64)
    // + shared gap-open term (512) + E-recurrence (512 + 64 + 64)
    // + F-recurrence with its shift (512 + 64 + 96 + 64).
    const uint64_t body = 6 + 1 + 96 + 10 + 512 + 1 + 64 + 512 + 512 + 64 + 64 + 512 + 64 + 96 + 64;
    uint64_t total = 0;
    total += 1 + n;                       // init: full-width clear + seqA loads
    total += 1;                           // activate row 0
    total += (n + m) * (body + 3 * ov);   // three chained shifts per iteration
    total += (n + m - 1) * (64 + ov);     // scalar max in every nonempty iteration
    total += n - 1;                       // window growth writes (d = 0 .. n-2)
    total += n;                           // window retirement writes (d = m .. n+m-1)
    if (restore_seqb)
        total += 6 * n;                   // iterations after B is exhausted
    return total;
}

} // namespace recam::sw
