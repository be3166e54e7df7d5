#include "recam/system.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace recam {

void SystemConfig::validate() const {
    if (num_ics == 0)
        throw std::invalid_argument("config: num_ics must be positive");
    if (rows_per_ic == 0)
        throw std::invalid_argument("config: rows_per_ic must be positive");
    if (frequency_hz <= 0)
        throw std::invalid_argument("config: frequency_hz must be positive");
    if (power_per_ic_watt < 0)
        throw std::invalid_argument("config: power_per_ic_watt must be nonnegative");
    if (total_power_watt_override && *total_power_watt_override <= 0)
        throw std::invalid_argument("config: total_power_watt_override must be positive");
}

SystemConfig SystemConfig::desk() {
    return SystemConfig{};
}

SystemConfig SystemConfig::paper_scale() {
    SystemConfig c;
    c.num_ics = 32;
    c.rows_per_ic = 8u * 1024 * 1024;
    c.frequency_hz = 1e9;
    c.power_per_ic_watt = 200.0;
    c.total_power_watt_override = 6600.0;
    return c;
}

SystemConfig SystemConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("config: cannot open " + path);
    SystemConfig c;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        std::istringstream ls(line);
        std::string key, eq, value;
        if (!(ls >> key))
            continue;
        if (!(ls >> eq >> value) || eq != "=")
            throw std::runtime_error("config: expected 'key = value' at " + path + ":" +
                                     std::to_string(lineno));
        try {
            if (key == "num_ics")
                c.num_ics = static_cast<uint32_t>(std::stoul(value));
            else if (key == "rows_per_ic")
                c.rows_per_ic = static_cast<uint32_t>(std::stoul(value));
            else if (key == "frequency_hz")
                c.frequency_hz = std::stod(value);
            else if (key == "power_per_ic_watt")
                c.power_per_ic_watt = std::stod(value);
            else if (key == "total_power_watt_override")
                c.total_power_watt_override = std::stod(value);
            else if (key == "inter_ic_shift_overhead_cycles")
                c.inter_ic_shift_overhead_cycles = std::stoull(value);
            else
                throw std::runtime_error("config: unknown key '" + key + "' at " + path + ":" +
                                         std::to_string(lineno));
        } catch (const std::invalid_argument&) {
            throw std::runtime_error("config: bad value for '" + key + "' at " + path + ":" +
                                     std::to_string(lineno));
        }
    }
    c.validate();
    return c;
}

PowerReport power_report(const SystemConfig& config, uint64_t total_cycles) {
    if (config.frequency_hz <= 0)
        throw std::invalid_argument("power_report: frequency must be positive");
    PowerReport r;
    r.seconds = static_cast<double>(total_cycles) / config.frequency_hz;
    r.watts = config.total_power_watt();
    r.joules = r.watts * r.seconds;
    return r;
}

namespace {

// Instantiating the full-scale preset would need gigabytes; refuse early.
constexpr uint64_t kMaxSimulatedRows = 64ull * 1024 * 1024;

} // namespace

ChainedArray::ChainedArray(const SystemConfig& config, FieldLayout layout)
    : config_(config), layout_(std::move(layout)),
      rows_per_ic_(config.rows_per_ic), total_rows_(config.total_rows()) {
    config_.validate();
    if (total_rows_ > kMaxSimulatedRows)
        throw std::invalid_argument(
            "array: " + std::to_string(total_rows_) +
            " rows is too large to instantiate; use the analytic projection instead");
    ics_.reserve(config_.num_ics);
    for (uint32_t i = 0; i < config_.num_ics; ++i) {
        ics_.emplace_back(rows_per_ic_, layout_.width());
        // The chain's ledger is authoritative; per-IC logs stay aggregate
        // counters only.
        ics_.back().ledger().set_recording(false);
    }
}

std::pair<uint32_t, uint32_t> ChainedArray::locate(uint64_t row) const {
    if (row >= total_rows_)
        throw std::out_of_range("array: row " + std::to_string(row) + " >= " +
                                std::to_string(total_rows_));
    return {static_cast<uint32_t>(row / rows_per_ic_),
            static_cast<uint32_t>(row % rows_per_ic_)};
}

bool ChainedArray::compare(const BitPattern& key, const BitPattern& mask) {
    bool any = false;
    for (auto& ic : ics_) {
        ic.compare(key, mask);
        any |= ic.tag_any();
    }
    ledger_.charge("compare", 1);
    return any;
}

void ChainedArray::write_tagged(const BitPattern& key, const BitPattern& mask, int32_t gate_col) {
    for (auto& ic : ics_)
        ic.write_tagged(key, mask, gate_col);
    ledger_.charge("write", 1);
}

void ChainedArray::write_tag_to_column(uint32_t col) {
    for (auto& ic : ics_)
        ic.write_tag_to_column(col);
    ledger_.charge("write", 1);
}

bool ChainedArray::shift_tag_down(bool carry_in) {
    bool carry = carry_in;
    for (auto& ic : ics_)
        carry = ic.shift_tag_down(carry);
    ledger_.charge("shift-tag", 1);
    return carry;
}

void ChainedArray::set_tag_all() {
    for (auto& ic : ics_)
        ic.set_tag_all();
}

void ChainedArray::set_tag_none() {
    for (auto& ic : ics_)
        ic.set_tag_none();
}

void ChainedArray::set_tag_global_row(uint64_t row) {
    const auto [which, local] = locate(row);
    for (uint32_t i = 0; i < num_ics(); ++i) {
        if (i == which)
            ics_[i].set_tag_row(local);
        else
            ics_[i].set_tag_none();
    }
}

bool ChainedArray::tag_any() const {
    for (const auto& ic : ics_)
        if (ic.tag_any())
            return true;
    return false;
}

std::vector<uint64_t> ChainedArray::tagged_rows() const {
    std::vector<uint64_t> rows;
    for (uint32_t i = 0; i < num_ics(); ++i)
        for (uint32_t r = 0; r < rows_per_ic_; ++r)
            if (ics_[i].tag_bit(r))
                rows.push_back(uint64_t{i} * rows_per_ic_ + r);
    return rows;
}

bool ChainedArray::peek_bit(uint64_t row, uint32_t col) const {
    const auto [which, local] = locate(row);
    return ics_[which].peek_bit(local, col);
}

uint64_t ChainedArray::peek_bits(uint64_t row, uint32_t start, uint32_t len) const {
    const auto [which, local] = locate(row);
    return ics_[which].peek_bits(local, start, len);
}

void ChainedArray::poke_bits(uint64_t row, uint32_t start, uint32_t len, uint64_t value) {
    const auto [which, local] = locate(row);
    ics_[which].poke_bits(local, start, len, value);
}

std::vector<uint64_t> ChainedArray::peek_field(std::string_view name) const {
    const FieldSlice s = layout_.slice(name);
    std::vector<uint64_t> out;
    out.reserve(total_rows_);
    for (uint32_t i = 0; i < num_ics(); ++i)
        for (uint32_t r = 0; r < rows_per_ic_; ++r)
            out.push_back(ics_[i].peek_bits(r, s.start, s.len));
    return out;
}

std::vector<int32_t> ChainedArray::peek_field_signed(std::string_view name) const {
    const FieldSlice s = layout_.slice(name);
    if (s.len != 32)
        throw std::invalid_argument("peek_field_signed: field is not 32-bit");
    std::vector<int32_t> out;
    out.reserve(total_rows_);
    for (uint32_t i = 0; i < num_ics(); ++i)
        for (uint32_t r = 0; r < rows_per_ic_; ++r)
            out.push_back(static_cast<int32_t>(
                static_cast<uint32_t>(ics_[i].peek_bits(r, s.start, s.len))));
    return out;
}

void ChainedArray::poke_field(std::string_view name, uint64_t row, uint64_t raw) {
    const FieldSlice s = layout_.slice(name);
    poke_bits(row, s.start, s.len, raw);
}

} // namespace recam
