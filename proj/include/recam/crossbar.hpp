#pragma once

#include <cstdint>
#include <vector>

#include "recam/bitpattern.hpp"
#include "recam/ledger.hpp"

namespace recam {

/// Functional model of one resistive-CAM crossbar IC: an R x W bit array
/// with KEY/MASK/TAG registers and cycle accounting.
///
/// Hardware primitives, one cycle each:
///   - compare:            TAG[r] = 1 iff row r matches KEY on all MASK columns
///   - write_tagged:       masked columns of tagged rows take the KEY bits
///   - write_tag_to_column: one column takes the TAG verbatim (the shift
///                          write-back path; untagged rows receive 0)
///   - shift_tag_down:     TAG moves one row down, with carry in/out for
///                          chaining ICs
///   - read_row:           controller readout of one row
///
/// TAG/KEY/MASK register loads are controller register writes and cost
/// nothing.
///
/// Storage is kept column-major (one bit plane per column) so the
/// row-parallel primitives reduce to word operations over R-bit planes.
class Crossbar {
public:
    Crossbar(uint32_t rows, uint32_t width);

    uint32_t rows() const { return rows_; }
    uint32_t width() const { return width_; }

    // -- Primitives (1 cycle each) --

    /// Returns the TAG produced by comparing KEY against the MASK columns.
    /// An all-zero mask matches every row.
    const std::vector<uint64_t>& compare(const BitPattern& key, const BitPattern& mask);

    /// Writes KEY bits into the MASK columns of all tagged rows. When
    /// gate_col >= 0 the write additionally requires the row's gate bit
    /// to be 1 (per-row write-enable qualifier).
    void write_tagged(const BitPattern& key, const BitPattern& mask, int32_t gate_col = -1);

    /// Copies the TAG into one column: tagged rows get 1, untagged rows 0.
    void write_tag_to_column(uint32_t col);

    /// TAG[r] <- TAG[r-1]; TAG[0] <- carry_in. Returns the bit shifted out
    /// of the last row.
    bool shift_tag_down(bool carry_in = false);

    /// Controller readout of one full row.
    BitPattern read_row(uint32_t r);

    // -- TAG register loads (0 cycles) --

    void set_tag_all();
    void set_tag_none();
    void set_tag_row(uint32_t r);
    void set_tag(const std::vector<uint64_t>& words);

    const std::vector<uint64_t>& tag() const { return tag_; }
    bool tag_any() const;
    bool tag_bit(uint32_t r) const;

    const BitPattern& key() const { return key_; }
    const BitPattern& mask() const { return mask_; }

    CycleLedger& ledger() { return ledger_; }
    const CycleLedger& ledger() const { return ledger_; }

    // -- Simulator instrumentation (no cycles, not architecture ops) --

    bool peek_bit(uint32_t r, uint32_t col) const;
    void poke_bit(uint32_t r, uint32_t col, bool v);
    uint64_t peek_bits(uint32_t r, uint32_t start, uint32_t len) const;
    void poke_bits(uint32_t r, uint32_t start, uint32_t len, uint64_t value);

    /// Raw bit plane of one column (word w holds rows 64w..64w+63).
    const uint64_t* plane(uint32_t col) const { return planes_.data() + std::size_t{col} * words_; }
    uint64_t* plane_mut(uint32_t col) { return planes_.data() + std::size_t{col} * words_; }
    uint32_t plane_words() const { return words_; }
    /// Valid-bit mask for the last plane word (rows beyond R read as 0).
    uint64_t tail_mask() const { return tail_mask_; }

private:
    void check_pattern(const BitPattern& p, const char* what) const;

    uint32_t rows_;
    uint32_t width_;
    uint32_t words_;
    uint64_t tail_mask_;

    std::vector<uint64_t> planes_; // width_ planes of words_ words each
    std::vector<uint64_t> tag_;
    BitPattern key_;
    BitPattern mask_;
    CycleLedger ledger_;
};

} // namespace recam
