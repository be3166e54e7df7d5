#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "recam/system.hpp"

// Associative instruction layer: truth-table-driven bit-serial arithmetic
// over the crossbar primitives, plus the fixed-cost vector/scalar macro
// operations used by the alignment kernel. Word arithmetic is 32-bit
// two's-complement with wrap-around.
//
// Every value-computing operation acts only on rows whose `active` bit is
// set; the active flag joins each compare mask (and gates broadcast
// writes) at no cycle cost. Field shifts are whole-column block moves and
// ignore the active flag: they are what carries data into a row that is
// about to join the computation.

namespace recam::isa {

/// Thrown by scalar reductions invoked with no active rows.
struct EmptyDomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One compare/write line of a truth table. Input literals constrain
/// operand bits (plus optionally the carry column); matching rows receive
/// the write literals (plus optionally a new carry bit).
struct TruthLit {
    uint8_t operand = 0;
    bool value = false;
};

struct TruthEntry {
    std::vector<TruthLit> inputs;
    std::optional<bool> carry_in;
    std::vector<TruthLit> writes;
    std::optional<bool> carry_out;
};

/// An ordered, non-overlapping set of compare/write entries over named
/// operands. Executing a table over N-bit slices costs
/// N x entries x 2 cycles: one compare and one write per entry per bit.
///
/// The carry lives in a scratch pad column whose content between
/// operations is unspecified. At the LSB position the engine therefore
/// compiles each entry so no stale carry is ever read:
///   - carry-in-0 entries run with the carry dropped from the compare;
///   - a carry-in-1 entry with a carry-in-0 twin (same operand literals)
///     becomes a never-matching dummy pair (compare against the
///     constant-zero column);
///   - a carry-in-1 entry without such a twin becomes a cleanup pair that
///     only forces the matching rows' carry bit to 0 (entry absence means
///     "no state change", so the true carry-out is 0).
struct TruthTable {
    uint8_t num_operands = 0;
    std::vector<TruthEntry> entries;

    bool uses_carry() const;
    /// Throws std::invalid_argument on overlapping entries, bad operand
    /// references, or carry variants the LSB compilation cannot handle.
    void validate() const;
};

/// 8-entry full adder: operands (dst, a, b), dst <- a + b.
TruthTable full_adder_table();
/// 4-entry in-place adder: operands (b, a), b <- a + b. Entries exist
/// only for input patterns that flip the stored bit.
TruthTable in_place_adder_table();
/// 1-entry copy table: operands (dst, src). Writes the 1-bits of src;
/// callers that need a full copy clear dst first.
TruthTable pass_through_table();

/// A truth-table operand: either a named field slice or a constant whose
/// bit is folded into the compiled compare patterns (entries requiring
/// the opposite bit become never-matching dummies, so the cycle count is
/// unchanged).
struct Operand {
    static Operand field(std::string name);
    static Operand constant(int64_t k);

    bool is_field() const { return is_field_; }
    const std::string& field_name() const { return name_; }
    uint64_t constant_bits() const { return bits_; }

private:
    bool is_field_ = false;
    std::string name_;
    uint64_t bits_ = 0;
};

/// Executes a table over bound operands. All field operands must have
/// equal bit length; written operands must be fields. Charges exactly
/// len x entries x 2 cycles under one ledger entry.
void run_truth_table(ChainedArray& arr, const TruthTable& table,
                     const std::vector<Operand>& operands, const std::string& label);

// -- Fixed-cost macro operations --

/// Moves a field down one row across the whole chain: row r takes row
/// r-1's value, row 0 takes the fill word. Three cycles per bit of the
/// slice (compare, TAG shift, TAG write-back), plus the inter-IC overhead
/// when the chain has more than one IC.
void shift_field_down(ChainedArray& arr, std::string_view slice, uint64_t fill_word = 0);

/// dst <- a + b (mod 2^32) on active rows. 512 cycles.
void add_fields(ChainedArray& arr, std::string_view dst, std::string_view a,
                std::string_view b);

/// b <- a + b (mod 2^32) on active rows. 256 cycles.
void add_in_place(ChainedArray& arr, std::string_view b, std::string_view a);

/// dst <- src - k (mod 2^32) on active rows: addition of the two's
/// complement of k broadcast through the KEY. 512 cycles, or 256 when
/// dst == src (in-place form).
void sub_scalar(ChainedArray& arr, std::string_view dst, std::string_view src, int32_t k);

/// dst <- max(a, b) per active row, signed. dst may alias a or b.
/// 64 cycles (2 per bit, MSB-first resolution).
void max_rowwise(ChainedArray& arr, std::string_view dst, std::string_view a,
                 std::string_view b);

struct MaxScalarResult {
    int32_t value = 0;
    std::vector<uint64_t> rows; ///< global indices of rows attaining the max
};

/// Signed maximum over all active rows of a 32-bit field. Leaves the TAG
/// marking exactly the maximal rows. 64 cycles (one compare plus one TAG
/// write-back per bit, MSB-first candidate narrowing; when a position has
/// no candidate carrying the preferred bit the candidate set is kept),
/// plus the inter-IC overhead on a chain.
/// Throws EmptyDomainError when no row is active.
MaxScalarResult max_scalar(ChainedArray& arr, std::string_view slice);

/// dst <- match_score where seq fields agree, else mismatch_score, on
/// active rows. 10 cycles: one broadcast of the mismatch score, four
/// compare/write pairs (one per base value), and one KEY reload slot.
void match_basepairs(ChainedArray& arr, std::string_view dst, std::string_view seq_a,
                     std::string_view seq_b, int32_t match_score, int32_t mismatch_score);

/// slice <- k on all active rows. One cycle (TAG loads are free).
void broadcast_write(ChainedArray& arr, std::string_view slice, int64_t k);
/// slice <- k on one row, active or not. One cycle.
void broadcast_write_row(ChainedArray& arr, std::string_view slice, int64_t k, uint64_t row);

// -- Instruction descriptions and the programmable buffer --

enum class OpKind {
    kShift,
    kAdd,
    kAddInPlace,
    kSubScalarCopy,
    kSubScalarInPlace,
    kMaxRowwise,
    kMaxScalar,
    kMatchBasePairs,
    kBroadcastWrite,
    kCustom,
};

struct Instruction {
    std::string label;
    OpKind kind = OpKind::kCustom;
    std::vector<std::string> operand_slices;
    std::optional<int64_t> scalar;
    int custom_handle = -1;
};

/// The microcontroller's associative instruction store. Built-in kinds
/// dispatch to the macro operations above; registered custom tables run
/// through the truth-table engine at width x entries x 2 cycles.
class InstructionBuffer {
public:
    /// Validates the table and stores it under a new handle.
    /// Throws on overlapping entries or duplicate labels.
    int register_custom_instruction(std::string label, TruthTable table);

    void invoke_custom(ChainedArray& arr, int handle,
                       const std::vector<Operand>& operands) const;

    /// Executes any instruction (built-in or custom) against the array.
    /// Returns the scalar-max result when the instruction produces one.
    std::optional<MaxScalarResult> execute(ChainedArray& arr, const Instruction& inst) const;

    std::size_t size() const { return customs_.size(); }

private:
    struct Custom {
        std::string label;
        TruthTable table;
    };
    std::vector<Custom> customs_;
};

} // namespace recam::isa
