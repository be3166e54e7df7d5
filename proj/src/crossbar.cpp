#include "recam/crossbar.hpp"

#include <stdexcept>
#include <string>

namespace recam {

Crossbar::Crossbar(uint32_t rows, uint32_t width)
    : rows_(rows), width_(width),
      words_((rows + 63) / 64),
      tail_mask_(rows % 64 ? (uint64_t{1} << (rows % 64)) - 1 : ~uint64_t{0}),
      key_(width), mask_(width) {
    if (rows == 0)
        throw std::invalid_argument("crossbar: rows must be positive");
    if (width == 0 || width > BitPattern::kMaxWidth)
        throw std::invalid_argument("crossbar: width out of range");
    planes_.assign(std::size_t{width_} * words_, 0);
    tag_.assign(words_, 0);
}

void Crossbar::check_pattern(const BitPattern& p, const char* what) const {
    if (p.width() != width_)
        throw std::invalid_argument(std::string(what) + ": pattern width " +
                                    std::to_string(p.width()) + " != crossbar width " +
                                    std::to_string(width_));
}

const std::vector<uint64_t>& Crossbar::compare(const BitPattern& key, const BitPattern& mask) {
    check_pattern(key, "compare key");
    check_pattern(mask, "compare mask");
    key_ = key;
    mask_ = mask;

    for (uint32_t w = 0; w < words_; ++w)
        tag_[w] = ~uint64_t{0};
    for (uint32_t wi = 0; wi < BitPattern::kWords; ++wi) {
        uint64_t mw = mask.words()[wi];
        while (mw) {
            const uint32_t col = wi * 64 + static_cast<uint32_t>(__builtin_ctzll(mw));
            mw &= mw - 1;
            const uint64_t* pl = plane(col);
            if (key.get(col)) {
                for (uint32_t w = 0; w < words_; ++w)
                    tag_[w] &= pl[w];
            } else {
                for (uint32_t w = 0; w < words_; ++w)
                    tag_[w] &= ~pl[w];
            }
        }
    }
    tag_[words_ - 1] &= tail_mask_;
    ledger_.charge("compare", 1);
    return tag_;
}

void Crossbar::write_tagged(const BitPattern& key, const BitPattern& mask, int32_t gate_col) {
    check_pattern(key, "write key");
    check_pattern(mask, "write mask");
    key_ = key;
    mask_ = mask;

    const uint64_t* gate = gate_col >= 0 ? plane(static_cast<uint32_t>(gate_col)) : nullptr;
    for (uint32_t wi = 0; wi < BitPattern::kWords; ++wi) {
        uint64_t mw = mask.words()[wi];
        while (mw) {
            const uint32_t col = wi * 64 + static_cast<uint32_t>(__builtin_ctzll(mw));
            mw &= mw - 1;
            uint64_t* pl = plane_mut(col);
            if (key.get(col)) {
                for (uint32_t w = 0; w < words_; ++w)
                    pl[w] |= gate ? (tag_[w] & gate[w]) : tag_[w];
            } else {
                for (uint32_t w = 0; w < words_; ++w)
                    pl[w] &= gate ? ~(tag_[w] & gate[w]) : ~tag_[w];
            }
        }
    }
    ledger_.charge("write", 1);
}

void Crossbar::write_tag_to_column(uint32_t col) {
    if (col >= width_)
        throw std::out_of_range("write_tag_to_column: column out of range");
    uint64_t* pl = plane_mut(col);
    for (uint32_t w = 0; w < words_; ++w)
        pl[w] = tag_[w];
    ledger_.charge("write", 1);
}

bool Crossbar::shift_tag_down(bool carry_in) {
    const uint32_t last_bit = (rows_ - 1) % 64;
    const bool carry_out = (tag_[words_ - 1] >> last_bit) & 1u;
    uint64_t carry = carry_in ? 1u : 0u;
    for (uint32_t w = 0; w < words_; ++w) {
        const uint64_t next_carry = tag_[w] >> 63;
        tag_[w] = (tag_[w] << 1) | carry;
        carry = next_carry;
    }
    tag_[words_ - 1] &= tail_mask_;
    ledger_.charge("shift-tag", 1);
    return carry_out;
}

BitPattern Crossbar::read_row(uint32_t r) {
    if (r >= rows_)
        throw std::out_of_range("read_row: row " + std::to_string(r) + " >= " +
                                std::to_string(rows_));
    BitPattern row(width_);
    for (uint32_t col = 0; col < width_; ++col)
        row.set(col, peek_bit(r, col));
    ledger_.charge("read", 1);
    return row;
}

void Crossbar::set_tag_all() {
    for (uint32_t w = 0; w < words_; ++w)
        tag_[w] = ~uint64_t{0};
    tag_[words_ - 1] &= tail_mask_;
}

void Crossbar::set_tag_none() {
    for (uint32_t w = 0; w < words_; ++w)
        tag_[w] = 0;
}

void Crossbar::set_tag_row(uint32_t r) {
    if (r >= rows_)
        throw std::out_of_range("set_tag_row: row out of range");
    set_tag_none();
    tag_[r / 64] = uint64_t{1} << (r % 64);
}

void Crossbar::set_tag(const std::vector<uint64_t>& words) {
    if (words.size() != tag_.size())
        throw std::invalid_argument("set_tag: word count mismatch");
    tag_ = words;
    tag_[words_ - 1] &= tail_mask_;
}

bool Crossbar::tag_any() const {
    for (uint64_t w : tag_)
        if (w)
            return true;
    return false;
}

bool Crossbar::tag_bit(uint32_t r) const {
    if (r >= rows_)
        throw std::out_of_range("tag_bit: row out of range");
    return (tag_[r / 64] >> (r % 64)) & 1u;
}

bool Crossbar::peek_bit(uint32_t r, uint32_t col) const {
    return (plane(col)[r / 64] >> (r % 64)) & 1u;
}

void Crossbar::poke_bit(uint32_t r, uint32_t col, bool v) {
    uint64_t* pl = plane_mut(col);
    const uint64_t bit = uint64_t{1} << (r % 64);
    if (v)
        pl[r / 64] |= bit;
    else
        pl[r / 64] &= ~bit;
}

uint64_t Crossbar::peek_bits(uint32_t r, uint32_t start, uint32_t len) const {
    uint64_t v = 0;
    for (uint32_t k = 0; k < len; ++k)
        v |= uint64_t{peek_bit(r, start + k)} << k;
    return v;
}

void Crossbar::poke_bits(uint32_t r, uint32_t start, uint32_t len, uint64_t value) {
    for (uint32_t k = 0; k < len; ++k)
        poke_bit(r, start + k, (value >> k) & 1u);
}

} // namespace recam
