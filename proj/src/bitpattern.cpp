#include "recam/bitpattern.hpp"

#include <stdexcept>

namespace recam {

BitPattern::BitPattern(uint32_t width) : width_(width) {
    if (width == 0 || width > kMaxWidth)
        throw std::invalid_argument("BitPattern width out of range");
}

void BitPattern::check_pos(uint32_t pos) const {
    if (pos >= width_)
        throw std::out_of_range("BitPattern position " + std::to_string(pos) +
                                " >= width " + std::to_string(width_));
}

bool BitPattern::get(uint32_t pos) const {
    check_pos(pos);
    return (words_[pos / 64] >> (pos % 64)) & 1u;
}

void BitPattern::set(uint32_t pos, bool value) {
    check_pos(pos);
    const uint64_t bit = uint64_t{1} << (pos % 64);
    if (value)
        words_[pos / 64] |= bit;
    else
        words_[pos / 64] &= ~bit;
}

void BitPattern::set_bits(uint32_t start, uint32_t len, uint64_t value) {
    if (len > 64)
        throw std::invalid_argument("BitPattern::set_bits: len > 64");
    for (uint32_t k = 0; k < len; ++k)
        set(start + k, (value >> k) & 1u);
}

uint64_t BitPattern::bits(uint32_t start, uint32_t len) const {
    if (len > 64)
        throw std::invalid_argument("BitPattern::bits: len > 64");
    uint64_t v = 0;
    for (uint32_t k = 0; k < len; ++k)
        v |= uint64_t{get(start + k)} << k;
    return v;
}

void BitPattern::set_range(uint32_t start, uint32_t len) {
    for (uint32_t k = 0; k < len; ++k)
        set(start + k, true);
}

void BitPattern::clear() {
    words_.fill(0);
}

bool BitPattern::any() const {
    for (uint64_t w : words_)
        if (w)
            return true;
    return false;
}

std::string BitPattern::to_string() const {
    std::string s;
    s.reserve(width_);
    for (uint32_t p = 0; p < width_; ++p)
        s.push_back(get(p) ? '1' : '0');
    return s;
}

} // namespace recam
