#include "recam/ledger.hpp"

#include <utility>

namespace recam {

void CycleLedger::charge(const char* label, uint64_t cycles) {
    total_ += cycles;
    if (macro_depth_ > 0) {
        macro_cycles_ += cycles;
        return;
    }
    if (recording_)
        entries_.push_back(Entry{label, "", cycles});
}

void CycleLedger::clear() {
    total_ = 0;
    entries_.clear();
    macro_depth_ = 0;
    macro_cycles_ = 0;
}

CycleLedger::MacroScope::MacroScope(CycleLedger& ledger, std::string label,
                                    std::string operands)
    : ledger_(ledger) {
    if (ledger_.macro_depth_ == 0) {
        owner_ = true;
        ledger_.macro_cycles_ = 0;
        ledger_.macro_label_ = std::move(label);
        ledger_.macro_operands_ = std::move(operands);
    }
    ++ledger_.macro_depth_;
    start_ = ledger_.macro_cycles_;
}

CycleLedger::MacroScope::~MacroScope() {
    --ledger_.macro_depth_;
    if (owner_ && ledger_.macro_depth_ == 0 && ledger_.recording_) {
        ledger_.entries_.push_back(Entry{std::move(ledger_.macro_label_),
                                         std::move(ledger_.macro_operands_),
                                         ledger_.macro_cycles_});
    }
}

uint64_t CycleLedger::MacroScope::cycles() const {
    return ledger_.macro_cycles_ - start_;
}

} // namespace recam
