#include "recam/layout.hpp"

#include <algorithm>
#include <stdexcept>

namespace recam {

namespace {

const char* kRequiredFields[] = {"seqA", "seqB", "E", "F", "AD0", "AD1", "AD2", "tmp", "active"};

} // namespace

FieldLayout FieldLayout::standard() {
    std::vector<std::pair<std::string, FieldSlice>> fields;
    uint32_t at = 0;
    auto add = [&](const char* name, uint32_t len) {
        fields.emplace_back(name, FieldSlice{at, len});
        at += len;
    };
    add("seqA", 2);
    add("seqB", 2);
    add("E", 32);
    add("F", 32);
    add("AD0", 32);
    add("AD1", 32);
    add("AD2", 32);
    add("tmp", 32);
    add("active", 1); // at == 197 after this
    return FieldLayout(200, std::move(fields), 197, 198, 199);
}

FieldLayout::FieldLayout(uint32_t width,
                         std::vector<std::pair<std::string, FieldSlice>> fields,
                         uint32_t carry_col, uint32_t zero_col, uint32_t spare_col)
    : width_(width), fields_(std::move(fields)),
      carry_col_(carry_col), zero_col_(zero_col), spare_col_(spare_col) {
    std::vector<bool> used(width_, false);
    auto claim = [&](uint32_t start, uint32_t len, const std::string& what) {
        if (start + len > width_)
            throw std::invalid_argument("layout: " + what + " exceeds row width");
        for (uint32_t p = start; p < start + len; ++p) {
            if (used[p])
                throw std::invalid_argument("layout: " + what + " overlaps column " +
                                            std::to_string(p));
            used[p] = true;
        }
    };
    for (const auto& [name, s] : fields_) {
        if (s.len == 0)
            throw std::invalid_argument("layout: empty slice " + name);
        claim(s.start, s.len, "field " + name);
    }
    claim(carry_col_, 1, "carry column");
    claim(zero_col_, 1, "zero column");
    claim(spare_col_, 1, "spare column");
    for (const char* name : kRequiredFields) {
        if (!has(name))
            throw std::invalid_argument(std::string("layout: missing field ") + name);
        if (std::count_if(fields_.begin(), fields_.end(),
                          [&](const auto& f) { return f.first == name; }) != 1)
            throw std::invalid_argument(std::string("layout: duplicate field ") + name);
    }
}

const FieldSlice& FieldLayout::slice(std::string_view name) const {
    for (const auto& [n, s] : fields_)
        if (n == name)
            return s;
    throw std::invalid_argument("layout: unknown field " + std::string(name));
}

bool FieldLayout::has(std::string_view name) const {
    for (const auto& [n, s] : fields_)
        if (n == name)
            return true;
    return false;
}

} // namespace recam
