#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace recam {

/// A contiguous run of bit columns within a crossbar row.
struct FieldSlice {
    uint32_t start = 0;
    uint32_t len = 0;
};

/// Maps the alignment kernel's vectors onto named column slices of a
/// crossbar row. The canonical layout packs, in order: seqA (2 bits),
/// seqB (2), E (32), F (32), AD0..AD2 (32 each), tmp (32) and the
/// 1-bit active flag, then pads the row to 200 bits. Three pad columns
/// are reserved for microcode scratch:
///   - a carry column for bit-serial adders,
///   - a constant-zero column (never written) used to compile
///     never-matching compare patterns,
///   - a spare column absorbing throwaway writes.
class FieldLayout {
public:
    /// The canonical 200-bit layout described above.
    static FieldLayout standard();

    /// Builds a layout from (name, slice) pairs plus explicit scratch
    /// columns. Validates disjointness, bounds, and the presence of the
    /// nine canonical field names.
    FieldLayout(uint32_t width, std::vector<std::pair<std::string, FieldSlice>> fields,
                uint32_t carry_col, uint32_t zero_col, uint32_t spare_col);

    uint32_t width() const { return width_; }
    const FieldSlice& slice(std::string_view name) const;
    bool has(std::string_view name) const;
    const std::vector<std::pair<std::string, FieldSlice>>& fields() const { return fields_; }

    uint32_t carry_col() const { return carry_col_; }
    uint32_t zero_col() const { return zero_col_; }
    uint32_t spare_col() const { return spare_col_; }

    /// Name of the cyclic antidiagonal column holding role `i mod 3`.
    static std::string ad_name(uint64_t i) { return "AD" + std::to_string(i % 3); }

private:
    uint32_t width_ = 0;
    std::vector<std::pair<std::string, FieldSlice>> fields_;
    uint32_t carry_col_ = 0;
    uint32_t zero_col_ = 0;
    uint32_t spare_col_ = 0;
};

} // namespace recam
