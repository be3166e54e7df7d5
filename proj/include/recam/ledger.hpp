#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace recam {

/// Cycle accounting for one machine (a single crossbar, or a chained
/// array operating in lockstep). Primitives charge one cycle each;
/// instruction-level operations open a macro scope so the per-instruction
/// log carries one entry per instruction rather than one per micro-step.
class CycleLedger {
public:
    struct Entry {
        std::string label;
        std::string operands;
        uint64_t cycles = 0;
    };

    uint64_t total_cycles() const { return total_; }
    const std::vector<Entry>& per_instruction() const { return entries_; }

    /// Per-instruction log recording. Totals are always kept; turning
    /// recording off bounds memory for long batch runs.
    void set_recording(bool on) { recording_ = on; }
    bool recording() const { return recording_; }

    void charge(const char* label, uint64_t cycles);
    void clear();

    /// RAII macro scope: cycles charged while a scope is open accumulate
    /// into a single entry emitted on close. Nested scopes fold into the
    /// outermost one.
    class MacroScope {
    public:
        MacroScope(CycleLedger& ledger, std::string label, std::string operands = "");
        ~MacroScope();
        MacroScope(const MacroScope&) = delete;
        MacroScope& operator=(const MacroScope&) = delete;

        /// Cycles accumulated so far by the enclosing macro (including
        /// nested scopes).
        uint64_t cycles() const;

    private:
        CycleLedger& ledger_;
        bool owner_ = false;
        uint64_t start_ = 0;
    };

private:
    friend class MacroScope;

    uint64_t total_ = 0;
    bool recording_ = true;
    std::vector<Entry> entries_;

    int macro_depth_ = 0;
    uint64_t macro_cycles_ = 0;
    std::string macro_label_;
    std::string macro_operands_;
};

} // namespace recam
