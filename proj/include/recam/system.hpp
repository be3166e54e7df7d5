#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "recam/crossbar.hpp"
#include "recam/layout.hpp"
#include "recam/ledger.hpp"

namespace recam {

/// System-level parameters: IC partitioning, clock, and power.
struct SystemConfig {
    uint32_t num_ics = 4;
    uint32_t rows_per_ic = 4096;
    double frequency_hz = 1e9;
    double power_per_ic_watt = 200.0;
    /// Set when the modeled total deviates from num_ics * power_per_ic
    /// (e.g. controller/interconnect overhead quoted separately).
    std::optional<double> total_power_watt_override;
    /// Extra cycles a daisy-chained shift or scalar-max instruction takes
    /// to cross IC boundaries. Applies once per instruction when more
    /// than one IC is configured.
    uint64_t inter_ic_shift_overhead_cycles = 2;

    uint64_t total_rows() const { return uint64_t{num_ics} * rows_per_ic; }
    double total_power_watt() const {
        return total_power_watt_override.value_or(num_ics * power_per_ic_watt);
    }

    void validate() const;

    /// Desk-scale default: 4 ICs x 4096 rows at 1 GHz.
    static SystemConfig desk();
    /// Full-scale preset: 32 ICs x 8M rows, 6.6 kW total. Used for
    /// analytic projections; far too large to instantiate.
    static SystemConfig paper_scale();

    /// Plain key-value file, one `key = value` per line, '#' comments.
    /// Keys: num_ics, rows_per_ic, frequency_hz, power_per_ic_watt,
    /// total_power_watt_override, inter_ic_shift_overhead_cycles.
    static SystemConfig from_file(const std::string& path);
};

struct PowerReport {
    double watts = 0;
    double joules = 0;
    double seconds = 0;
};

/// Energy/time for a job of total_cycles at the configured clock and
/// power. Power is modeled as constant while the job runs.
PowerReport power_report(const SystemConfig& config, uint64_t total_cycles);

/// A daisy chain of crossbar ICs driven in lockstep: every instruction is
/// broadcast with the same KEY and MASK to all ICs, TAG shift carries
/// ripple from each IC's last row into the next IC's first, and match
/// results reduce across the chain. Rows are never split across ICs.
///
/// The chain owns the system cycle ledger: one broadcast primitive costs
/// one (lockstep) cycle regardless of the IC count.
class ChainedArray {
public:
    ChainedArray(const SystemConfig& config, FieldLayout layout = FieldLayout::standard());

    uint32_t num_ics() const { return static_cast<uint32_t>(ics_.size()); }
    uint64_t rows() const { return total_rows_; }
    uint32_t rows_per_ic() const { return rows_per_ic_; }
    uint32_t width() const { return layout_.width(); }
    const FieldLayout& layout() const { return layout_; }
    const SystemConfig& config() const { return config_; }

    Crossbar& ic(uint32_t i) { return ics_[i]; }
    const Crossbar& ic(uint32_t i) const { return ics_[i]; }

    /// Extra cycles charged by chained shift / scalar-max instructions:
    /// zero for a single IC.
    uint64_t chain_overhead_cycles() const {
        return num_ics() > 1 ? config_.inter_ic_shift_overhead_cycles : 0;
    }

    // -- Broadcast primitives (1 lockstep cycle each) --

    /// Compare on every IC; returns whether any row in the chain matched.
    bool compare(const BitPattern& key, const BitPattern& mask);
    void write_tagged(const BitPattern& key, const BitPattern& mask, int32_t gate_col = -1);
    void write_tag_to_column(uint32_t col);
    /// Chained TAG shift: carry ripples IC(k) -> IC(k+1) within the same
    /// step. Returns the bit leaving the last IC.
    bool shift_tag_down(bool carry_in = false);

    // -- TAG register loads (0 cycles) --
    void set_tag_all();
    void set_tag_none();
    void set_tag_global_row(uint64_t row);

    bool tag_any() const;
    /// Global row indices currently tagged.
    std::vector<uint64_t> tagged_rows() const;

    CycleLedger& ledger() { return ledger_; }
    const CycleLedger& ledger() const { return ledger_; }

    // -- Instrumentation (no cycles) --

    bool peek_bit(uint64_t row, uint32_t col) const;
    uint64_t peek_bits(uint64_t row, uint32_t start, uint32_t len) const;
    void poke_bits(uint64_t row, uint32_t start, uint32_t len, uint64_t value);

    /// Raw field words for all rows (row-major over the chain).
    std::vector<uint64_t> peek_field(std::string_view name) const;
    /// 32-bit field decoded as two's-complement.
    std::vector<int32_t> peek_field_signed(std::string_view name) const;
    void poke_field(std::string_view name, uint64_t row, uint64_t raw);

private:
    std::pair<uint32_t, uint32_t> locate(uint64_t row) const; // (ic, local row)

    SystemConfig config_;
    FieldLayout layout_;
    uint32_t rows_per_ic_;
    uint64_t total_rows_;
    std::vector<Crossbar> ics_;
    CycleLedger ledger_;
};

} // namespace recam
