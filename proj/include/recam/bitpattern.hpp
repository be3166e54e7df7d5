#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace recam {

/// A row-width bit pattern, used for the KEY and MASK registers and for
/// row readouts. Bit p corresponds to column p of the crossbar. Fixed
/// storage for up to 256 bits keeps patterns cheap value types.
class BitPattern {
public:
    static constexpr uint32_t kMaxWidth = 256;
    static constexpr uint32_t kWords = kMaxWidth / 64;

    BitPattern() = default;
    explicit BitPattern(uint32_t width);

    uint32_t width() const { return width_; }

    bool get(uint32_t pos) const;
    void set(uint32_t pos, bool value);

    /// Writes `len` bits of `value` starting at column `start`
    /// (value bit 0 lands in column `start`).
    void set_bits(uint32_t start, uint32_t len, uint64_t value);
    uint64_t bits(uint32_t start, uint32_t len) const;

    /// Sets every bit in [start, start+len).
    void set_range(uint32_t start, uint32_t len);
    void clear();

    bool any() const;
    const std::array<uint64_t, kWords>& words() const { return words_; }

    /// "0101..." rendering, column 0 first. Debug aid.
    std::string to_string() const;

    friend bool operator==(const BitPattern&, const BitPattern&) = default;

private:
    void check_pos(uint32_t pos) const;

    uint32_t width_ = 0;
    std::array<uint64_t, kWords> words_{};
};

} // namespace recam
