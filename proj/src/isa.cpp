#include "recam/isa.hpp"

#include <algorithm>
#include <cstring>

namespace recam::isa {

namespace {

constexpr uint32_t kWordBits = 32;

const FieldSlice& named_slice(const ChainedArray& arr, std::string_view name) {
    return arr.layout().slice(name);
}

const FieldSlice& word_slice(const ChainedArray& arr, std::string_view name) {
    const FieldSlice& s = named_slice(arr, name);
    if (s.len != kWordBits)
        throw std::invalid_argument("isa: field " + std::string(name) + " is not 32-bit");
    return s;
}

void require_disjoint(const ChainedArray& arr, std::initializer_list<std::string_view> names) {
    for (auto a = names.begin(); a != names.end(); ++a)
        for (auto b = std::next(a); b != names.end(); ++b)
            if (*a == *b)
                throw std::invalid_argument("isa: operand slices must be distinct (" +
                                            std::string(*a) + " repeated)");
    (void)arr;
}

void check_cost(const CycleLedger::MacroScope& scope, uint64_t expected, const char* what) {
    if (scope.cycles() != expected)
        throw std::logic_error(std::string("isa: ") + what + " consumed " +
                               std::to_string(scope.cycles()) + " cycles, documented cost is " +
                               std::to_string(expected));
}

} // namespace

// ---------------------------------------------------------------------------
// Truth tables

bool TruthTable::uses_carry() const {
    for (const auto& e : entries)
        if (e.carry_in || e.carry_out)
            return true;
    return false;
}

namespace {

// Two entries overlap when some row assignment satisfies both input
// patterns, i.e. they agree on every constraint they share.
bool entries_overlap(const TruthEntry& x, const TruthEntry& y) {
    for (const auto& lx : x.inputs)
        for (const auto& ly : y.inputs)
            if (lx.operand == ly.operand && lx.value != ly.value)
                return false;
    if (x.carry_in && y.carry_in && *x.carry_in != *y.carry_in)
        return false;
    return true;
}

bool same_operand_literals(const TruthEntry& x, const TruthEntry& y) {
    if (x.inputs.size() != y.inputs.size())
        return false;
    for (const auto& lx : x.inputs) {
        bool found = false;
        for (const auto& ly : y.inputs)
            if (lx.operand == ly.operand && lx.value == ly.value)
                found = true;
        if (!found)
            return false;
    }
    return true;
}

// Ignoring carry constraints, do the operand literals admit a common row?
bool operands_compatible(const TruthEntry& x, const TruthEntry& y) {
    for (const auto& lx : x.inputs)
        for (const auto& ly : y.inputs)
            if (lx.operand == ly.operand && lx.value != ly.value)
                return false;
    return true;
}

} // namespace

namespace {

// Does any entry rewrite an operand that entries also compare? Such
// tables (the in-place adder family) need the guarded LSB scheme and
// hazard-aware ordering.
bool writes_compared_operand(const TruthTable& t) {
    for (const auto& w : t.entries)
        for (const auto& wl : w.writes)
            for (const auto& r : t.entries)
                for (const auto& rl : r.inputs)
                    if (wl.operand == rl.operand)
                        return true;
    return false;
}

// Conservative check: after entry i fires, can the written row still (or
// newly) satisfy entry j's compare pattern? Written bits take the written
// value; bits i compared but did not write keep the compared value; other
// bits are unknown and assumed to match.
bool post_state_can_match(const TruthEntry& i, const TruthEntry& j) {
    for (const auto& lj : j.inputs) {
        bool known = false;
        bool value = false;
        for (const auto& w : i.writes)
            if (w.operand == lj.operand) {
                known = true;
                value = w.value;
            }
        if (!known)
            for (const auto& c : i.inputs)
                if (c.operand == lj.operand) {
                    known = true;
                    value = c.value;
                }
        if (known && value != lj.value)
            return false;
    }
    if (j.carry_in) {
        if (i.carry_out) {
            if (*i.carry_out != *j.carry_in)
                return false;
        } else if (i.carry_in && *i.carry_in != *j.carry_in) {
            return false;
        }
    }
    return true;
}

// Execution order under which no fired row can re-trigger a later entry
// of the same bit position. Throws when no such order exists.
std::vector<std::size_t> safe_entry_order(const TruthTable& t) {
    const std::size_t n = t.entries.size();
    // edge i -> j: j must execute before i
    std::vector<std::vector<std::size_t>> before(n);
    std::vector<std::size_t> pending(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && post_state_can_match(t.entries[i], t.entries[j])) {
                before[j].push_back(i);
                ++pending[i];
            }
    std::vector<std::size_t> order;
    std::vector<std::size_t> ready;
    for (std::size_t i = 0; i < n; ++i)
        if (pending[i] == 0)
            ready.push_back(i);
    while (!ready.empty()) {
        const std::size_t j = ready.back();
        ready.pop_back();
        order.push_back(j);
        for (std::size_t i : before[j])
            if (--pending[i] == 0)
                ready.push_back(i);
    }
    if (order.size() != n)
        throw std::invalid_argument(
            "truth table: entries re-trigger each other under every execution order");
    return order;
}

} // namespace

void TruthTable::validate() const {
    if (entries.empty())
        throw std::invalid_argument("truth table: no entries");
    for (const auto& e : entries) {
        for (const auto& l : e.inputs)
            if (l.operand >= num_operands)
                throw std::invalid_argument("truth table: input operand out of range");
        for (const auto& l : e.writes)
            if (l.operand >= num_operands)
                throw std::invalid_argument("truth table: write operand out of range");
        if (e.writes.empty() && !e.carry_out)
            throw std::invalid_argument("truth table: entry writes nothing");
        for (std::size_t i = 0; i < e.inputs.size(); ++i)
            for (std::size_t j = i + 1; j < e.inputs.size(); ++j)
                if (e.inputs[i].operand == e.inputs[j].operand)
                    throw std::invalid_argument("truth table: duplicate operand literal");
    }
    for (std::size_t i = 0; i < entries.size(); ++i)
        for (std::size_t j = i + 1; j < entries.size(); ++j)
            if (entries_overlap(entries[i], entries[j]))
                throw std::invalid_argument("truth table: entries " + std::to_string(i) +
                                            " and " + std::to_string(j) + " overlap");
    safe_entry_order(*this);

    if (uses_carry() && !writes_compared_operand(*this)) {
        // Plain LSB scheme: a carry-in-1 entry must either have a
        // carry-in-0 twin over identical operand literals, or be
        // operand-wise disjoint from every carry-in-0 entry.
        for (const auto& e : entries) {
            if (!e.carry_in || !*e.carry_in)
                continue;
            bool twin = false;
            bool compatible = false;
            for (const auto& o : entries) {
                if (&o == &e || (o.carry_in && *o.carry_in))
                    continue;
                if (same_operand_literals(e, o))
                    twin = true;
                else if (operands_compatible(e, o))
                    compatible = true;
            }
            if (!twin && compatible)
                throw std::invalid_argument(
                    "truth table: carry-in-1 entry neither twinned with nor disjoint from "
                    "the carry-in-0 entries; the LSB pass cannot be compiled");
        }
    }
    if (uses_carry() && writes_compared_operand(*this)) {
        // Guarded LSB scheme: the carry-clearing pair takes the slot of
        // one carry-in-1 entry.
        bool any_c1 = false;
        for (const auto& e : entries)
            any_c1 |= e.carry_in && *e.carry_in;
        if (!any_c1)
            throw std::invalid_argument(
                "truth table: in-place carry table needs at least one carry-in-1 entry");
    }
}

TruthTable full_adder_table() {
    TruthTable t;
    t.num_operands = 3; // dst, a, b
    for (int av = 0; av <= 1; ++av)
        for (int bv = 0; bv <= 1; ++bv)
            for (int cv = 0; cv <= 1; ++cv) {
                TruthEntry e;
                e.inputs = {TruthLit{1, av != 0}, TruthLit{2, bv != 0}};
                e.carry_in = cv != 0;
                e.writes = {TruthLit{0, ((av ^ bv ^ cv) & 1) != 0}};
                e.carry_out = (av + bv + cv) >= 2;
                t.entries.push_back(std::move(e));
            }
    return t;
}

TruthTable in_place_adder_table() {
    TruthTable t;
    t.num_operands = 2; // b (read+written), a
    // Entries exist only where the sum bit differs from the stored bit,
    // i.e. a XOR carry = 1; elsewhere both the bit and the carry keep
    // their values.
    for (int av = 0; av <= 1; ++av)
        for (int bv = 0; bv <= 1; ++bv) {
            const int cv = 1 - av;
            TruthEntry e;
            e.inputs = {TruthLit{0, bv != 0}, TruthLit{1, av != 0}};
            e.carry_in = cv != 0;
            e.writes = {TruthLit{0, bv == 0}};
            e.carry_out = (av + bv + cv) >= 2;
            t.entries.push_back(std::move(e));
        }
    return t;
}

TruthTable pass_through_table() {
    TruthTable t;
    t.num_operands = 2; // dst, src
    TruthEntry e;
    e.inputs = {TruthLit{1, true}};
    e.writes = {TruthLit{0, true}};
    t.entries.push_back(std::move(e));
    return t;
}

Operand Operand::field(std::string name) {
    Operand o;
    o.is_field_ = true;
    o.name_ = std::move(name);
    return o;
}

Operand Operand::constant(int64_t k) {
    Operand o;
    o.is_field_ = false;
    o.bits_ = static_cast<uint64_t>(k);
    return o;
}

// ---------------------------------------------------------------------------
// Truth-table engine

namespace {

struct BoundOperand {
    bool is_field = false;
    FieldSlice slice;
    uint64_t const_bits = 0;
};

enum class EntryMode { kLive, kDummy, kCleanup };

} // namespace

void run_truth_table(ChainedArray& arr, const TruthTable& table,
                     const std::vector<Operand>& operands, const std::string& label) {
    table.validate();
    if (operands.size() != table.num_operands)
        throw std::invalid_argument("isa: operand count mismatch for " + label);

    const FieldLayout& layout = arr.layout();
    std::vector<BoundOperand> bound(operands.size());
    uint32_t len = 0;
    for (std::size_t i = 0; i < operands.size(); ++i) {
        if (operands[i].is_field()) {
            bound[i].is_field = true;
            bound[i].slice = layout.slice(operands[i].field_name());
            if (len == 0)
                len = bound[i].slice.len;
            else if (bound[i].slice.len != len)
                throw std::invalid_argument("isa: operand bit lengths differ for " + label);
        } else {
            bound[i].const_bits = operands[i].constant_bits();
        }
    }
    if (len == 0)
        throw std::invalid_argument("isa: at least one operand must be a field");
    for (const auto& e : table.entries)
        for (const auto& w : e.writes)
            if (!bound[w.operand].is_field)
                throw std::invalid_argument("isa: cannot write a constant operand");
    // Aliasing two operand indices onto one slice would invalidate the
    // re-trigger analysis done on operand indices.
    for (const auto& we : table.entries)
        for (const auto& w : we.writes)
            for (const auto& re : table.entries)
                for (const auto& r : re.inputs)
                    if (w.operand != r.operand && bound[w.operand].is_field &&
                        bound[r.operand].is_field &&
                        bound[w.operand].slice.start == bound[r.operand].slice.start)
                        throw std::invalid_argument(
                            "isa: written operand aliases a compared operand in " + label);

    const uint32_t width = arr.width();
    const uint32_t active_col = layout.slice("active").start;
    const uint32_t carry_col = layout.carry_col();
    const uint32_t zero_col = layout.zero_col();

    const bool carry_table = table.uses_carry();
    const bool guarded_lsb = carry_table && writes_compared_operand(table);
    const std::vector<std::size_t> order = safe_entry_order(table);

    CycleLedger::MacroScope scope(arr.ledger(), label);
    BitPattern key(width), mask(width);

    auto emit_dummy = [&]() {
        key.clear();
        mask.clear();
        mask.set(zero_col, true);
        key.set(zero_col, true); // the zero column never holds a 1
        arr.compare(key, mask);
        key.clear();
        mask.clear();
        arr.write_tagged(key, mask);
    };

    enum class CarryUse { kCompare, kDrop };

    // One compare/write pair for an entry at bit p. Returns false when a
    // constant operand contradicts the entry, in which case nothing was
    // issued and the caller emits a dummy pair instead.
    auto emit_entry = [&](const TruthEntry& entry, uint32_t p, CarryUse carry_use,
                          bool cleanup_only) {
        key.clear();
        mask.clear();
        mask.set(active_col, true);
        key.set(active_col, true);
        for (const auto& lit : entry.inputs) {
            const BoundOperand& op = bound[lit.operand];
            if (op.is_field) {
                const uint32_t col = op.slice.start + p;
                mask.set(col, true);
                key.set(col, lit.value);
            } else if (((op.const_bits >> p) & 1u) != (lit.value ? 1u : 0u)) {
                return false;
            }
        }
        if (entry.carry_in && carry_use == CarryUse::kCompare) {
            mask.set(carry_col, true);
            key.set(carry_col, *entry.carry_in);
        }
        arr.compare(key, mask);

        key.clear();
        mask.clear();
        if (cleanup_only) {
            mask.set(carry_col, true); // carry := 0
        } else {
            for (const auto& lit : entry.writes) {
                const uint32_t col = bound[lit.operand].slice.start + p;
                mask.set(col, true);
                key.set(col, lit.value);
            }
            if (entry.carry_out) {
                mask.set(carry_col, true);
                key.set(carry_col, *entry.carry_out);
            }
        }
        arr.write_tagged(key, mask);
        return true;
    };

    for (uint32_t p = 0; p < len; ++p) {
        if (p > 0 || !carry_table) {
            for (std::size_t idx : order)
                if (!emit_entry(table.entries[idx], p, CarryUse::kCompare, false))
                    emit_dummy();
        } else if (!guarded_lsb) {
            // LSB, carry scratch holds junk, writes never feed compares:
            // run the carry-in-0 entries with the carry dropped; a
            // carry-in-1 entry either has a twin covering its rows
            // (dummy) or cleans its rows' carry bits (entry absence means
            // the true carry-out is 0).
            for (std::size_t idx : order) {
                const TruthEntry& entry = table.entries[idx];
                if (!entry.carry_in || !*entry.carry_in) {
                    if (!emit_entry(entry, 0, CarryUse::kDrop, false))
                        emit_dummy();
                    continue;
                }
                bool twin = false;
                for (const auto& o : table.entries)
                    if (&o != &entry && (!o.carry_in || !*o.carry_in) &&
                        same_operand_literals(entry, o))
                        twin = true;
                if (twin) {
                    emit_dummy();
                } else if (!emit_entry(entry, 0, CarryUse::kDrop, true)) {
                    emit_dummy();
                }
            }
        } else {
            // LSB for in-place tables: force every active row's carry to
            // zero first, then run the carry-in-0 entries against the now
            // trustworthy carry column. The carry-in-1 entries cannot
            // match a zero carry; one of their slots pays for the
            // clearing pair, the rest pad as dummies.
            key.clear();
            mask.clear();
            mask.set(active_col, true);
            key.set(active_col, true);
            arr.compare(key, mask);
            key.clear();
            mask.clear();
            mask.set(carry_col, true);
            arr.write_tagged(key, mask);

            std::size_t emitted = 1;
            for (std::size_t idx : order) {
                const TruthEntry& entry = table.entries[idx];
                if (entry.carry_in && *entry.carry_in)
                    continue;
                if (!emit_entry(entry, 0, CarryUse::kCompare, false))
                    emit_dummy();
                ++emitted;
            }
            for (; emitted < table.entries.size(); ++emitted)
                emit_dummy();
        }
    }
    check_cost(scope, uint64_t{len} * table.entries.size() * 2, label.c_str());
}

// ---------------------------------------------------------------------------
// Macro operations

void shift_field_down(ChainedArray& arr, std::string_view slice, uint64_t fill_word) {
    const FieldSlice s = named_slice(arr, slice);
    const uint32_t width = arr.width();
    CycleLedger::MacroScope scope(arr.ledger(), "shift_down", std::string(slice));
    BitPattern key(width), mask(width);
    for (uint32_t k = 0; k < s.len; ++k) {
        const uint32_t col = s.start + k;
        key.clear();
        mask.clear();
        mask.set(col, true);
        key.set(col, true);
        arr.compare(key, mask); // TAG <- source column
        arr.shift_tag_down(((fill_word >> k) & 1u) != 0);
        arr.write_tag_to_column(col); // column <- shifted TAG
    }
    if (arr.chain_overhead_cycles())
        arr.ledger().charge("inter-ic", arr.chain_overhead_cycles());
    check_cost(scope, uint64_t{3} * s.len + arr.chain_overhead_cycles(), "shift_down");
}

void add_fields(ChainedArray& arr, std::string_view dst, std::string_view a,
                std::string_view b) {
    word_slice(arr, dst);
    word_slice(arr, a);
    word_slice(arr, b);
    require_disjoint(arr, {dst, a, b});
    run_truth_table(arr, full_adder_table(),
                    {Operand::field(std::string(dst)), Operand::field(std::string(a)),
                     Operand::field(std::string(b))},
                    "add");
}

void add_in_place(ChainedArray& arr, std::string_view b, std::string_view a) {
    word_slice(arr, b);
    word_slice(arr, a);
    require_disjoint(arr, {b, a});
    run_truth_table(arr, in_place_adder_table(),
                    {Operand::field(std::string(b)), Operand::field(std::string(a))},
                    "add_inplace");
}

void sub_scalar(ChainedArray& arr, std::string_view dst, std::string_view src, int32_t k) {
    word_slice(arr, dst);
    word_slice(arr, src);
    const int64_t neg = -static_cast<int64_t>(k);
    if (dst == src) {
        run_truth_table(arr, in_place_adder_table(),
                        {Operand::field(std::string(dst)), Operand::constant(neg)},
                        "sub_scalar");
    } else {
        run_truth_table(arr, full_adder_table(),
                        {Operand::field(std::string(dst)), Operand::field(std::string(src)),
                         Operand::constant(neg)},
                        "sub_scalar");
    }
}

void max_rowwise(ChainedArray& arr, std::string_view dst, std::string_view a,
                 std::string_view b) {
    const FieldSlice sd = word_slice(arr, dst);
    const FieldSlice sa = word_slice(arr, a);
    const FieldSlice sb = word_slice(arr, b);
    const uint32_t active_col = arr.layout().slice("active").start;

    CycleLedger::MacroScope scope(arr.ledger(), "max_rowwise",
                                  std::string(dst) + "<-max(" + std::string(a) + "," +
                                      std::string(b) + ")");
    std::vector<uint64_t> b_wins;
    for (uint32_t i = 0; i < arr.num_ics(); ++i) {
        Crossbar& ic = arr.ic(i);
        const uint32_t words = ic.plane_words();
        b_wins.assign(words, 0);
        // MSB-first resolution: the first differing bit decides. At the
        // sign bit the zero side wins; below it the one side wins.
        for (uint32_t w = 0; w < words; ++w) {
            uint64_t tied = ~uint64_t{0};
            uint64_t bw = 0;
            for (int p = kWordBits - 1; p >= 0; --p) {
                const uint64_t va = ic.plane(sa.start + p)[w];
                const uint64_t vb = ic.plane(sb.start + p)[w];
                const uint64_t diff = va ^ vb;
                bw |= tied & diff & (p == int(kWordBits) - 1 ? va : vb);
                tied &= ~diff;
                if (!tied)
                    break;
            }
            b_wins[w] = bw;
        }
        const uint64_t* act = ic.plane(active_col);
        for (uint32_t p = 0; p < kWordBits; ++p) {
            const uint64_t* pa = ic.plane(sa.start + p);
            const uint64_t* pb = ic.plane(sb.start + p);
            uint64_t* pd = ic.plane_mut(sd.start + p);
            for (uint32_t w = 0; w < words; ++w) {
                const uint64_t mix = (pb[w] & b_wins[w]) | (pa[w] & ~b_wins[w]);
                pd[w] = (pd[w] & ~act[w]) | (mix & act[w]);
            }
        }
    }
    arr.ledger().charge("max_rowwise", 2 * kWordBits);
    check_cost(scope, 2 * kWordBits, "max_rowwise");
}

namespace {

bool any_active_row(const ChainedArray& arr) {
    const uint32_t active_col = arr.layout().slice("active").start;
    for (uint32_t i = 0; i < arr.num_ics(); ++i) {
        const Crossbar& ic = arr.ic(i);
        const uint64_t* act = ic.plane(active_col);
        for (uint32_t w = 0; w < ic.plane_words(); ++w)
            if (act[w])
                return true;
    }
    return false;
}

} // namespace

MaxScalarResult max_scalar(ChainedArray& arr, std::string_view slice) {
    const FieldSlice s = word_slice(arr, slice);
    if (!any_active_row(arr))
        throw EmptyDomainError("max_scalar: no active rows");

    const FieldLayout& layout = arr.layout();
    const uint32_t width = arr.width();
    const uint32_t active_col = layout.slice("active").start;
    const uint32_t cand_col = layout.carry_col(); // scratch, rewritten wholesale
    const uint32_t spare_col = layout.spare_col();

    CycleLedger::MacroScope scope(arr.ledger(), "max_scalar", std::string(slice));

    // MSB-first candidate narrowing. Candidates start as the active set
    // and are materialized into the scratch column by the first narrowing
    // pass; until then the compare runs on the active flag alone. Passes
    // that would narrow to nothing keep the candidate set (their TAG
    // write-back is diverted to the spare column so the cost stays
    // uniform). The preferred bit at the sign position is 0.
    bool materialized = false;
    uint32_t value_bits = 0;
    BitPattern key(width), mask(width);
    for (int p = kWordBits - 1; p >= 0; --p) {
        const bool preferred = p != int(kWordBits) - 1;
        key.clear();
        mask.clear();
        mask.set(active_col, true);
        key.set(active_col, true);
        if (materialized) {
            mask.set(cand_col, true);
            key.set(cand_col, true);
        }
        mask.set(s.start + p, true);
        key.set(s.start + p, preferred);
        const bool any = arr.compare(key, mask);
        if (any)
            value_bits |= (preferred ? 1u : 0u) << p;
        else
            value_bits |= (preferred ? 0u : 1u) << p;

        if (p > 0) {
            if (any) {
                arr.write_tag_to_column(cand_col);
                materialized = true;
            } else {
                arr.write_tag_to_column(spare_col);
            }
        } else if (any) {
            // TAG already marks the maxima.
            arr.write_tag_to_column(spare_col);
        } else {
            // Re-issue the compare with the losing bit so the TAG lands
            // on the surviving candidates.
            key.set(s.start, !preferred);
            arr.compare(key, mask);
        }
    }
    if (arr.chain_overhead_cycles())
        arr.ledger().charge("inter-ic", arr.chain_overhead_cycles());
    check_cost(scope, 2 * kWordBits + arr.chain_overhead_cycles(), "max_scalar");

    MaxScalarResult out;
    out.value = static_cast<int32_t>(value_bits);
    out.rows = arr.tagged_rows();
    return out;
}

void match_basepairs(ChainedArray& arr, std::string_view dst, std::string_view seq_a,
                     std::string_view seq_b, int32_t match_score, int32_t mismatch_score) {
    const FieldSlice sd = word_slice(arr, dst);
    const FieldSlice sa = named_slice(arr, seq_a);
    const FieldSlice sb = named_slice(arr, seq_b);
    if (sa.len != 2 || sb.len != 2)
        throw std::invalid_argument("match_basepairs: sequence fields must be 2-bit");
    require_disjoint(arr, {dst, seq_a, seq_b});

    const FieldLayout& layout = arr.layout();
    const uint32_t width = arr.width();
    const int32_t active_col = static_cast<int32_t>(layout.slice("active").start);

    CycleLedger::MacroScope scope(arr.ledger(), "match_bp",
                                  std::string(dst) + "<-sigma(" + std::string(seq_a) + "," +
                                      std::string(seq_b) + ")");
    BitPattern key(width), mask(width);

    // Seed every active row with the mismatch score.
    arr.set_tag_all();
    mask.set_range(sd.start, sd.len);
    key.set_bits(sd.start, sd.len, static_cast<uint32_t>(mismatch_score));
    arr.write_tagged(key, mask, active_col);

    // Overwrite the rows where the base codes agree, one code at a time.
    for (uint32_t v = 0; v < 4; ++v) {
        key.clear();
        mask.clear();
        mask.set(static_cast<uint32_t>(active_col), true);
        key.set(static_cast<uint32_t>(active_col), true);
        mask.set_range(sa.start, 2);
        key.set_bits(sa.start, 2, v);
        mask.set_range(sb.start, 2);
        key.set_bits(sb.start, 2, v);
        arr.compare(key, mask);

        key.clear();
        mask.clear();
        mask.set_range(sd.start, sd.len);
        key.set_bits(sd.start, sd.len, static_cast<uint32_t>(match_score));
        arr.write_tagged(key, mask);
    }
    arr.ledger().charge("key-reload", 1);
    check_cost(scope, 10, "match_bp");
}

void broadcast_write(ChainedArray& arr, std::string_view slice, int64_t k) {
    const FieldSlice s = named_slice(arr, slice);
    const uint32_t width = arr.width();
    const int32_t active_col = static_cast<int32_t>(arr.layout().slice("active").start);
    CycleLedger::MacroScope scope(arr.ledger(), "broadcast", std::string(slice));
    BitPattern key(width), mask(width);
    mask.set_range(s.start, s.len);
    key.set_bits(s.start, s.len, static_cast<uint64_t>(k) & (s.len == 64 ? ~uint64_t{0} : ((uint64_t{1} << s.len) - 1)));
    arr.set_tag_all();
    arr.write_tagged(key, mask, active_col);
    check_cost(scope, 1, "broadcast");
}

void broadcast_write_row(ChainedArray& arr, std::string_view slice, int64_t k, uint64_t row) {
    const FieldSlice s = named_slice(arr, slice);
    const uint32_t width = arr.width();
    CycleLedger::MacroScope scope(arr.ledger(), "broadcast_row", std::string(slice));
    BitPattern key(width), mask(width);
    mask.set_range(s.start, s.len);
    key.set_bits(s.start, s.len, static_cast<uint64_t>(k) & (s.len == 64 ? ~uint64_t{0} : ((uint64_t{1} << s.len) - 1)));
    arr.set_tag_global_row(row);
    arr.write_tagged(key, mask);
    check_cost(scope, 1, "broadcast_row");
}

// ---------------------------------------------------------------------------
// Instruction buffer

int InstructionBuffer::register_custom_instruction(std::string label, TruthTable table) {
    table.validate();
    for (const auto& c : customs_)
        if (c.label == label)
            throw std::invalid_argument("instruction buffer: duplicate label " + label);
    customs_.push_back(Custom{std::move(label), std::move(table)});
    return static_cast<int>(customs_.size()) - 1;
}

void InstructionBuffer::invoke_custom(ChainedArray& arr, int handle,
                                      const std::vector<Operand>& operands) const {
    if (handle < 0 || handle >= static_cast<int>(customs_.size()))
        throw std::out_of_range("instruction buffer: bad handle");
    const Custom& c = customs_[static_cast<std::size_t>(handle)];
    run_truth_table(arr, c.table, operands, c.label);
}

std::optional<MaxScalarResult> InstructionBuffer::execute(ChainedArray& arr,
                                                          const Instruction& inst) const {
    const auto& ops = inst.operand_slices;
    auto need = [&](std::size_t k) {
        if (ops.size() != k)
            throw std::invalid_argument("execute: " + inst.label + " expects " +
                                        std::to_string(k) + " operands");
    };
    switch (inst.kind) {
    case OpKind::kShift:
        need(1);
        shift_field_down(arr, ops[0], inst.scalar ? static_cast<uint64_t>(*inst.scalar) : 0);
        return std::nullopt;
    case OpKind::kAdd:
        need(3);
        add_fields(arr, ops[0], ops[1], ops[2]);
        return std::nullopt;
    case OpKind::kAddInPlace:
        need(2);
        add_in_place(arr, ops[0], ops[1]);
        return std::nullopt;
    case OpKind::kSubScalarCopy:
        need(2);
        sub_scalar(arr, ops[0], ops[1], static_cast<int32_t>(inst.scalar.value()));
        return std::nullopt;
    case OpKind::kSubScalarInPlace:
        need(1);
        sub_scalar(arr, ops[0], ops[0], static_cast<int32_t>(inst.scalar.value()));
        return std::nullopt;
    case OpKind::kMaxRowwise:
        need(3);
        max_rowwise(arr, ops[0], ops[1], ops[2]);
        return std::nullopt;
    case OpKind::kMaxScalar:
        need(1);
        return max_scalar(arr, ops[0]);
    case OpKind::kMatchBasePairs: {
        need(3);
        const int64_t packed = inst.scalar.value();
        // match score in the high half, mismatch in the low half
        const int32_t match_score = static_cast<int32_t>(packed >> 32);
        const int32_t mismatch_score = static_cast<int32_t>(packed & 0xFFFFFFFF);
        match_basepairs(arr, ops[0], ops[1], ops[2], match_score, mismatch_score);
        return std::nullopt;
    }
    case OpKind::kBroadcastWrite:
        need(1);
        broadcast_write(arr, ops[0], inst.scalar.value());
        return std::nullopt;
    case OpKind::kCustom: {
        std::vector<Operand> bound;
        bound.reserve(ops.size());
        for (const auto& name : ops)
            bound.push_back(Operand::field(name));
        invoke_custom(arr, inst.custom_handle, bound);
        return std::nullopt;
    }
    }
    throw std::logic_error("execute: unknown instruction kind");
}

} // namespace recam::isa
