// Acceptance suite: drives every top-level requirement end to end and
// prints one PASS/FAIL line per criterion.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <mutex>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "recam/cli.hpp"
#include "recam/isa.hpp"
#include "recam/oracle.hpp"
#include "recam/perf.hpp"
#include "recam/swalign.hpp"
#include "recam/system.hpp"

using namespace recam;

namespace {

int g_failures = 0;

void report(int index, const char* name, bool ok, const std::string& detail) {
    std::printf("[%s] %d. %s: %s\n", ok ? "PASS" : "FAIL", index, name, detail.c_str());
    if (!ok)
        ++g_failures;
}

std::string random_dna(std::mt19937_64& rng, std::size_t len) {
    static const char bases[] = {'A', 'C', 'G', 'T'};
    std::uniform_int_distribution<int> pick(0, 3);
    std::string s;
    s.reserve(len);
    for (std::size_t i = 0; i < len; ++i)
        s.push_back(bases[pick(rng)]);
    return s;
}

ScoringParams random_params(std::mt19937_64& rng) {
    ScoringParams p;
    p.match = std::uniform_int_distribution<int>(1, 6)(rng);
    p.mismatch = -std::uniform_int_distribution<int>(1, 6)(rng);
    p.g_ext = std::uniform_int_distribution<int>(0, 4)(rng);
    p.g_first = p.g_ext + std::uniform_int_distribution<int>(0, 6)(rng);
    return p;
}

SystemConfig config_of(uint32_t ics, uint32_t rows_per_ic) {
    SystemConfig c;
    c.num_ics = ics;
    c.rows_per_ic = rows_per_ic;
    return c;
}

template <typename F>
void parallel_for(uint64_t count, F&& f) {
    const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    std::atomic<uint64_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t)
        pool.emplace_back([&]() {
            for (uint64_t i = next.fetch_add(1); i < count; i = next.fetch_add(1))
                f(i);
        });
    for (auto& th : pool)
        th.join();
}

// 1. Simulator scores equal the scalar reference exactly on randomized jobs.
void criterion_oracle_equivalence() {
    const uint64_t jobs = 1000;
    std::atomic<uint64_t> passed{0};
    std::mutex detail_mutex;
    std::string first_failure;

    parallel_for(jobs, [&](uint64_t i) {
        std::mt19937_64 rng(0xA11CE ^ (i * 0x9E3779B97F4A7C15ull));
        const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 512)(rng);
        const std::size_t m = std::uniform_int_distribution<std::size_t>(1, 512)(rng);
        sw::AlignmentJob job{random_dna(rng, n), random_dna(rng, m), random_params(rng)};

        ChainedArray arr(config_of(1, static_cast<uint32_t>(n)));
        arr.ledger().set_recording(false);
        sw::AlignmentOptions opts;
        opts.record_active_trace = false;
        const auto result = sw::run(arr, job, opts);
        const int32_t expect = oracle::gotoh_score(job.seq_a, job.seq_b, job.params);
        if (result.max_score == expect) {
            ++passed;
        } else {
            std::lock_guard<std::mutex> lock(detail_mutex);
            if (first_failure.empty())
                first_failure = "job " + std::to_string(i) + " (" + std::to_string(n) + "x" +
                                std::to_string(m) + "): simulator " +
                                std::to_string(result.max_score) + " vs reference " +
                                std::to_string(expect);
        }
    });
    const bool ok = passed == jobs;
    report(1, "oracle equivalence",
           ok, ok ? std::to_string(jobs) + "/" + std::to_string(jobs) + " randomized jobs exact"
                  : first_failure);
}

// 2. Every documented macro-instruction cost is hit exactly.
void criterion_instruction_costs() {
    ChainedArray arr(config_of(1, 256));
    for (uint64_t r = 0; r < arr.rows(); ++r)
        arr.poke_field("active", r, 1);
    auto measure = [&](auto&& op) {
        const uint64_t before = arr.ledger().total_cycles();
        op();
        return arr.ledger().total_cycles() - before;
    };
    struct Case {
        const char* name;
        uint64_t expect;
        uint64_t got;
    };
    const Case cases[] = {
        {"shift32", 96, measure([&] { isa::shift_field_down(arr, "AD0"); })},
        {"add_in_place", 256, measure([&] { isa::add_in_place(arr, "E", "F"); })},
        {"add", 512, measure([&] { isa::add_fields(arr, "AD0", "AD1", "AD2"); })},
        {"max_rowwise", 64, measure([&] { isa::max_rowwise(arr, "E", "F", "tmp"); })},
        {"max_scalar", 64, measure([&] { isa::max_scalar(arr, "AD0"); })},
        {"match", 10, measure([&] { isa::match_basepairs(arr, "tmp", "seqA", "seqB", 2, -1); })},
        {"shift2", 6, measure([&] { isa::shift_field_down(arr, "seqB"); })},
    };
    std::string detail;
    bool ok = true;
    for (const auto& c : cases) {
        if (!detail.empty())
            detail += ", ";
        detail += std::string(c.name) + "=" + std::to_string(c.got);
        if (c.got != c.expect) {
            ok = false;
            detail += "(want " + std::to_string(c.expect) + ")";
        }
    }
    report(2, "documented instruction costs", ok, detail);
}

// 3. Bit-serial arithmetic equals wide-integer arithmetic row for row.
void criterion_bit_serial_equivalence() {
    const uint32_t rows = 10000;
    std::mt19937_64 rng(0xB17);
    ChainedArray arr(config_of(1, rows));
    for (uint64_t r = 0; r < rows; ++r)
        arr.poke_field("active", r, 1);

    auto refill = [&](const char* field) {
        // full-range words, with forced corner rows
        for (uint64_t r = 0; r < rows; ++r)
            arr.poke_field(field, r, static_cast<uint32_t>(rng()));
        const uint32_t corners[] = {0u, 1u, 0x7FFFFFFFu, 0x80000000u, 0xFFFFFFFFu};
        for (uint64_t r = 0; r < std::size(corners); ++r)
            for (uint64_t s = 0; s < std::size(corners); ++s)
                arr.poke_field(field, r * std::size(corners) + s,
                               field[0] == 'E' ? corners[r] : corners[s]);
        for (uint64_t r = 0; r < rows; ++r)
            arr.poke_bits(r, arr.layout().carry_col(), 1, rng() & 1);
    };

    uint64_t checked = 0;
    uint64_t wrong = 0;
    auto verify = [&](const std::vector<int32_t>& got, auto&& model,
                      const std::vector<int32_t>& a, const std::vector<int32_t>& b) {
        for (uint64_t r = 0; r < rows; ++r) {
            ++checked;
            if (got[r] != model(a[r], b[r]))
                ++wrong;
        }
    };

    refill("E");
    refill("F");
    auto a = arr.peek_field_signed("E");
    auto b = arr.peek_field_signed("F");
    isa::add_fields(arr, "AD0", "E", "F");
    verify(arr.peek_field_signed("AD0"),
           [](int32_t x, int32_t y) {
               return static_cast<int32_t>(static_cast<uint32_t>(x) + static_cast<uint32_t>(y));
           },
           a, b);

    isa::add_in_place(arr, "E", "F");
    verify(arr.peek_field_signed("E"),
           [](int32_t x, int32_t y) {
               return static_cast<int32_t>(static_cast<uint32_t>(x) + static_cast<uint32_t>(y));
           },
           a, b);

    refill("E");
    a = arr.peek_field_signed("E");
    const int32_t k = std::uniform_int_distribution<int32_t>(-1000000, 1000000)(rng);
    isa::sub_scalar(arr, "AD1", "E", k);
    verify(arr.peek_field_signed("AD1"),
           [k](int32_t x, int32_t) {
               return static_cast<int32_t>(static_cast<uint32_t>(x) - static_cast<uint32_t>(k));
           },
           a, a);
    isa::sub_scalar(arr, "E", "E", k);
    verify(arr.peek_field_signed("E"),
           [k](int32_t x, int32_t) {
               return static_cast<int32_t>(static_cast<uint32_t>(x) - static_cast<uint32_t>(k));
           },
           a, a);

    refill("E");
    refill("F");
    a = arr.peek_field_signed("E");
    b = arr.peek_field_signed("F");
    isa::max_rowwise(arr, "AD2", "E", "F");
    verify(arr.peek_field_signed("AD2"),
           [](int32_t x, int32_t y) { return std::max(x, y); }, a, b);

    const bool ok = wrong == 0;
    report(3, "bit-serial arithmetic equivalence", ok,
           std::to_string(checked) + " row results checked, " + std::to_string(wrong) +
               " mismatches");
}

// 4. Window bookkeeping conserves cells exactly.
void criterion_cell_conservation() {
    std::mt19937_64 rng(0xCE11);
    uint64_t bad = 0;
    for (int it = 0; it < 100; ++it) {
        const uint64_t n = std::uniform_int_distribution<uint64_t>(1, 512)(rng);
        const uint64_t m = std::uniform_int_distribution<uint64_t>(1, 512)(rng);
        uint64_t total = 0;
        for (uint64_t d = 0; d < n + m; ++d) {
            const uint64_t size = sw::active_window(d, n, m).size();
            const uint64_t expect =
                std::min({n, m, d + 1, d + 1 < n + m ? n + m - 1 - d : uint64_t{0}});
            if (size != expect)
                ++bad;
            total += size;
        }
        if (total != n * m)
            ++bad;
    }
    // and on the simulator's own per-iteration trace
    for (int it = 0; it < 5; ++it) {
        const uint64_t n = std::uniform_int_distribution<uint64_t>(1, 64)(rng);
        const uint64_t m = std::uniform_int_distribution<uint64_t>(1, 64)(rng);
        ChainedArray arr(config_of(1, static_cast<uint32_t>(n)));
        arr.ledger().set_recording(false);
        const auto result =
            sw::run(arr, sw::AlignmentJob{random_dna(rng, n), random_dna(rng, m), {}});
        if (result.cells_computed != n * m || result.active_rows_trace.size() != n + m)
            ++bad;
        for (uint64_t d = 0; d < n + m; ++d)
            if (result.active_rows_trace[d] != sw::active_window(d, n, m).size())
                ++bad;
    }
    report(4, "cell conservation", bad == 0,
           bad == 0 ? "window sums equal n*m on 100 shapes plus 5 simulated traces"
                    : std::to_string(bad) + " deviations");
}

// 5. A chained array behaves bit-identically to one large IC.
void criterion_chained_equivalence() {
    std::mt19937_64 rng(0xC4A1);
    uint64_t bad = 0;
    std::string detail;
    for (int it = 0; it < 50; ++it) {
        const uint64_t n = std::uniform_int_distribution<uint64_t>(1, 128)(rng);
        const uint64_t m = std::uniform_int_distribution<uint64_t>(1, 128)(rng);
        sw::AlignmentJob job{random_dna(rng, n), random_dna(rng, m), random_params(rng)};

        const SystemConfig split_cfg = config_of(4, 32);
        const SystemConfig whole_cfg = config_of(1, 128);
        ChainedArray split(split_cfg);
        ChainedArray whole(whole_cfg);
        split.ledger().set_recording(false);
        whole.ledger().set_recording(false);
        sw::AlignmentOptions opts;
        opts.record_active_trace = false;
        const auto rs = sw::run(split, job, opts);
        const auto rw = sw::run(whole, job, opts);

        bool same_fields = true;
        for (const char* f :
             {"seqA", "seqB", "E", "F", "AD0", "AD1", "AD2", "tmp", "active"})
            same_fields &= split.peek_field(f) == whole.peek_field(f);

        // three chained shifts per iteration, one chained scalar max per
        // nonempty iteration
        const uint64_t chained_instructions = 3 * (n + m) + (n + m - 1);
        const uint64_t expect_extra =
            split_cfg.inter_ic_shift_overhead_cycles * chained_instructions;
        if (!same_fields || rs.max_score != rw.max_score ||
            rs.total_cycles != rw.total_cycles + expect_extra) {
            ++bad;
            if (detail.empty())
                detail = "job " + std::to_string(it) + ": fields " +
                         (same_fields ? "equal" : "DIFFER") + ", scores " +
                         std::to_string(rs.max_score) + "/" + std::to_string(rw.max_score) +
                         ", cycle delta " + std::to_string(rs.total_cycles - rw.total_cycles) +
                         " want " + std::to_string(expect_extra);
        }
    }
    report(5, "chained-array equivalence", bad == 0,
           bad == 0 ? "50 jobs bit-identical; cycle deltas equal overhead x chained instructions"
                    : detail);
}

// Analytic per-iteration cost model, summed instruction by instruction.
uint64_t analytic_cycles(uint64_t n, uint64_t m, const SystemConfig& cfg, bool restore) {
    const uint64_t ov = cfg.num_ics > 1 ? cfg.inter_ic_shift_overhead_cycles : 0;
    uint64_t total = 1 + n; // init: full-width clear, then one write per seqA row
    total += 1;             // activate row 0
    for (uint64_t d = 0; d < n + m; ++d) {
        total += (6 + ov) + 1;      // advance seqB, inject next base
        total += 96 + ov;           // shift the old H column
        total += 10 + 512;          // match, add
        total += 1 + 64;            // clamp against a zeroed column
        total += 512;               // shared gap-open term
        total += 512 + 64 + 64;     // same-row gap column
        total += 512 + 64 + (96 + ov) + 64; // shifted gap column
        if (d >= m)
            total += 1; // retire the row that left the window
        if (d != n + m - 1)
            total += 64 + ov; // scalar max over the window
        if (restore && d >= m)
            total += 6; // cyclic seqB restoration
        if (d + 1 <= n - 1)
            total += 1; // activate the next row
    }
    return total;
}

// 6. Measured ledgers equal the analytic sum exactly.
void criterion_ledger_closed_form() {
    std::mt19937_64 rng(0x1ED6E4);
    uint64_t bad = 0;
    std::string detail;
    for (int it = 0; it < 100; ++it) {
        const uint64_t n = std::uniform_int_distribution<uint64_t>(1, 256)(rng);
        const uint64_t m = std::uniform_int_distribution<uint64_t>(1, 256)(rng);
        const bool chained = it % 3 == 0;
        const bool restore = it % 4 == 0;
        const SystemConfig cfg =
            chained ? config_of(4, static_cast<uint32_t>((n + 3) / 4))
                    : config_of(1, static_cast<uint32_t>(n));
        ChainedArray arr(cfg);
        arr.ledger().set_recording(false);
        sw::AlignmentOptions opts;
        opts.restore_seqb = restore;
        opts.record_active_trace = false;
        const auto result =
            sw::run(arr, sw::AlignmentJob{random_dna(rng, n), random_dna(rng, m), {}}, opts);
        const uint64_t expect = analytic_cycles(n, m, cfg, restore);
        if (result.total_cycles != expect ||
            result.total_cycles != sw::predicted_total_cycles(n, m, cfg, restore)) {
            ++bad;
            if (detail.empty())
                detail = std::to_string(n) + "x" + std::to_string(m) + ": measured " +
                         std::to_string(result.total_cycles) + ", analytic " +
                         std::to_string(expect);
        }
    }
    report(6, "ledger closed form", bad == 0,
           bad == 0 ? "100 measured ledgers equal the analytic sum exactly" : detail);
}

// 7. Efficiency arithmetic reproduces the published rounded figures.
void criterion_reference_arithmetic() {
    struct Row {
        double tcups;
        double kw;
        double published;
    };
    const Row rows[] = {{53.0, 6.6, 8.0}, {6.0, 1.3, 4.7}, {11.1, 100.0, 0.1}, {0.23, 0.8, 0.3}};
    bool ok = true;
    std::string detail;
    for (const auto& r : rows) {
        const double got = perf::gcups_per_watt(r.tcups, r.kw);
        if (!detail.empty())
            detail += ", ";
        detail += std::to_string(got).substr(0, 5);
        if (std::abs(got - r.published) > 0.15)
            ok = false;
    }
    const double speedup = 41.8 / 11.1;
    detail += "; speedup " + std::to_string(speedup).substr(0, 4) + "x";
    if (std::abs(speedup - 3.7) > 0.1)
        ok = false;
    report(7, "published efficiency arithmetic", ok, detail);
}

// 8. Simulated antidiagonal columns equal the reference matrix.
void criterion_column_crosscheck() {
    std::mt19937_64 rng(0xC01);
    uint64_t bad = 0;
    std::string detail;
    for (int it = 0; it < 20; ++it) {
        const uint64_t n = std::uniform_int_distribution<uint64_t>(1, 64)(rng);
        const uint64_t m = std::uniform_int_distribution<uint64_t>(1, 64)(rng);
        sw::AlignmentJob job{random_dna(rng, n), random_dna(rng, m), random_params(rng)};
        const auto full = oracle::gotoh_full_matrix(job.seq_a, job.seq_b, job.params);

        ChainedArray arr(config_of(1, static_cast<uint32_t>(n)));
        arr.ledger().set_recording(false);
        sw::AlignmentRun run(arr, job);
        run.init_layout();
        for (uint64_t d = 0; d < n + m; ++d) {
            const auto w = run.window(d);
            run.step();
            if (w.empty)
                continue;
            const auto col = arr.peek_field_signed(sw::AlignmentRun::ad_column(d));
            const auto expect = full.h_antidiagonal(d);
            if (expect.size() != w.size()) {
                ++bad;
                continue;
            }
            for (uint64_t r = w.lo; r <= w.hi; ++r)
                if (col[r] != expect[r - w.lo]) {
                    ++bad;
                    if (detail.empty())
                        detail = "job " + std::to_string(it) + " d=" + std::to_string(d) +
                                 " row " + std::to_string(r) + ": " + std::to_string(col[r]) +
                                 " vs " + std::to_string(expect[r - w.lo]);
                }
        }
    }
    report(8, "antidiagonal cross-check", bad == 0,
           bad == 0 ? "20 jobs, every iteration column equals the reference antidiagonal"
                    : detail);
}

// 9. Command-line runs are byte-identical across repetitions.
void criterion_cli_determinism() {
    struct TempFile {
        std::string path;
        TempFile(const char* name, const std::string& content)
            : path(std::string("recam_acceptance_") + name + ".tmp") {
            std::ofstream out(path);
            out << content;
        }
        ~TempFile() { std::remove(path.c_str()); }
    };
    TempFile fa("a", ">a\nGATTACAGATTACA\n");
    TempFile fb("b", ">b\nGCATGCTTGCA\n");
    TempFile cfg("cfg", "num_ics = 2\nrows_per_ic = 8\n");

    auto run_once = [&](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int rc = cli::run(args, out, err);
        return std::make_pair(rc, out.str() + "\x01" + err.str());
    };
    const std::vector<std::string> align_args = {"align", fa.path, fb.path, "--config",
                                                 cfg.path,  "--verify"};
    const std::vector<std::string> bench_args = {"bench",  "--lengths", "8,12", "--pairs", "2",
                                                 "--seed", "42",        "--config", cfg.path};
    const auto a1 = run_once(align_args);
    const auto a2 = run_once(align_args);
    const auto b1 = run_once(bench_args);
    const auto b2 = run_once(bench_args);
    const bool ok = a1 == a2 && b1 == b2 && a1.first == 0 && b1.first == 0;
    report(9, "command-line determinism", ok,
           ok ? "align and bench byte-identical across repeated runs"
              : "outputs differ or commands failed (align rc " + std::to_string(a1.first) +
                    ", bench rc " + std::to_string(b1.first) + ")");
}

} // namespace

int main() {
    std::printf("acceptance suite (hardware model + alignment kernel + reporting)\n");
    criterion_oracle_equivalence();
    criterion_instruction_costs();
    criterion_bit_serial_equivalence();
    criterion_cell_conservation();
    criterion_chained_equivalence();
    criterion_ledger_closed_form();
    criterion_reference_arithmetic();
    criterion_column_crosscheck();
    criterion_cli_determinism();
    if (g_failures == 0)
        std::printf("all 9 criteria passed\n");
    else
        std::printf("%d criteria FAILED\n", g_failures);
    return g_failures;
}
