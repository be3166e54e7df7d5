#include "recam/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "recam/fasta.hpp"
#include "recam/oracle.hpp"
#include "recam/perf.hpp"
#include "recam/swalign.hpp"
#include "recam/system.hpp"

namespace recam::cli {

namespace {

struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct VerifyMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

AmbiguityPolicy parse_policy(const std::string& s) {
    if (s == "reject")
        return AmbiguityPolicy::kReject;
    if (s == "skip-record")
        return AmbiguityPolicy::kSkipRecord;
    throw std::invalid_argument("--ambiguous must be 'reject' or 'skip-record'");
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

void write_trace(const std::string& path, const CycleLedger& ledger) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open trace file " + path);
    for (const auto& e : ledger.per_instruction()) {
        nlohmann::ordered_json j;
        j["label"] = e.label;
        j["operands"] = e.operands;
        j["cycles"] = e.cycles;
        out << j.dump() << "\n";
    }
}

struct AlignArgs {
    std::string fasta_a;
    std::string fasta_b;
    std::string config_path;
    std::string out_path;
    std::string trace_path;
    std::string ambiguous = "reject";
    ScoringParams params;
    bool verify = false;
    bool restore_seqb = false;
};

int cmd_align(const AlignArgs& a, std::ostream& out, std::ostream& err) {
    const SystemConfig config =
        a.config_path.empty() ? SystemConfig::desk() : SystemConfig::from_file(a.config_path);
    config.validate();
    a.params.validate();
    const AmbiguityPolicy policy = parse_policy(a.ambiguous);

    const auto records_a = parse_fasta_file(a.fasta_a, policy);
    const auto records_b = parse_fasta_file(a.fasta_b, policy);
    if (records_a.empty() || records_b.empty())
        throw std::runtime_error("no usable FASTA records after the ambiguity policy");

    sw::AlignmentJob job;
    job.seq_a = records_a.front().sequence;
    job.seq_b = records_b.front().sequence;
    job.params = a.params;
    std::string id_a = records_a.front().id;
    std::string id_b = records_b.front().id;

    // seq_a maps one base per row; exploit score symmetry when only the
    // transposed job fits.
    bool swapped = false;
    const uint64_t rows = config.total_rows();
    if (job.seq_a.size() > rows && job.seq_b.size() <= rows) {
        std::swap(job.seq_a, job.seq_b);
        std::swap(id_a, id_b);
        swapped = true;
    }
    if (std::min(job.seq_a.size(), job.seq_b.size()) > rows)
        throw CapacityError("the shorter sequence (" +
                            std::to_string(std::min(job.seq_a.size(), job.seq_b.size())) +
                            " bases) exceeds the configured " + std::to_string(rows) +
                            " rows; add ICs (num_ics) to grow capacity at no throughput cost");

    ChainedArray arr(config);
    if (a.trace_path.empty())
        arr.ledger().set_recording(false);
    sw::AlignmentOptions opts;
    opts.restore_seqb = a.restore_seqb;
    const sw::AlignmentResult result = sw::run(arr, job, opts);

    bool verified = false;
    if (a.verify) {
        const int32_t expect = oracle::gotoh_score(job.seq_a, job.seq_b, job.params);
        if (expect != result.max_score)
            throw VerifyMismatch("simulator score " + std::to_string(result.max_score) +
                                 " != reference score " + std::to_string(expect));
        verified = true;
    }

    const perf::PerfReport report = perf::cups_from_ledger(result, config);

    out << "pair " << id_a << " x " << id_b << "\n";
    out << "n " << job.seq_a.size() << "\n";
    out << "m " << job.seq_b.size() << "\n";
    if (swapped)
        out << "sequences_swapped 1\n";
    out << "max_score " << result.max_score << "\n";
    out << "cells " << result.cells_computed << "\n";
    out << "iterations " << result.total_iterations << "\n";
    out << "total_cycles " << result.total_cycles << "\n";
    out << "per_iteration_cycles " << fmt("%.6g", report.per_iteration_cycles) << "\n";
    out << "seconds " << fmt("%.9g", report.seconds) << "\n";
    out << "cups " << fmt("%.9g", report.cups) << "\n";
    out << "gcups_per_watt " << fmt("%.9g", report.gcups_per_watt) << "\n";
    if (verified)
        out << "verified yes\n";

    if (!a.out_path.empty()) {
        std::ofstream rf(a.out_path);
        if (!rf)
            throw std::runtime_error("cannot open report file " + a.out_path);
        nlohmann::ordered_json j = nlohmann::ordered_json::parse(report.to_json());
        j["command"] = "align";
        j["id_a"] = id_a;
        j["id_b"] = id_b;
        j["n"] = job.seq_a.size();
        j["m"] = job.seq_b.size();
        j["sequences_swapped"] = swapped;
        j["max_score"] = result.max_score;
        if (verified)
            j["verified"] = true;
        rf << j.dump() << "\n";
    }
    if (!a.trace_path.empty())
        write_trace(a.trace_path, arr.ledger());

    (void)err;
    return kExitOk;
}

struct BenchArgs {
    std::string lengths = "64,128,256";
    std::string config_path;
    std::string out_path;
    uint64_t seed = 1;
    uint32_t pairs = 2;
};

int cmd_bench(const BenchArgs& b, std::ostream& out, std::ostream& err) {
    const SystemConfig config =
        b.config_path.empty() ? SystemConfig::desk() : SystemConfig::from_file(b.config_path);
    config.validate();

    std::vector<uint64_t> lengths;
    std::stringstream ls(b.lengths);
    std::string item;
    while (std::getline(ls, item, ','))
        if (!item.empty())
            lengths.push_back(std::stoull(item));
    if (lengths.empty())
        throw std::invalid_argument("bench: no lengths given");
    for (uint64_t len : lengths)
        if (len == 0 || len > config.total_rows())
            throw CapacityError("bench length " + std::to_string(len) +
                                " does not fit the configured " +
                                std::to_string(config.total_rows()) + " rows");

    std::ofstream rf;
    if (!b.out_path.empty()) {
        rf.open(b.out_path);
        if (!rf)
            throw std::runtime_error("cannot open report file " + b.out_path);
        rf << perf::PerfReport::csv_header() << ",length,pair,max_score\n";
    }

    out << "length pair max_score total_cycles cups gcups_per_watt verified\n";
    for (uint64_t len : lengths) {
        for (uint32_t k = 0; k < b.pairs; ++k) {
            // Independent deterministic stream per job.
            std::mt19937_64 rng(b.seed ^ (0x9E3779B97F4A7C15ull * (len * 1000 + k + 1)));
            sw::AlignmentJob job;
            job.seq_a = random_dna(rng, len);
            job.seq_b = random_dna(rng, len);

            ChainedArray arr(config);
            arr.ledger().set_recording(false);
            sw::AlignmentOptions opts;
            opts.record_active_trace = false;
            const sw::AlignmentResult result = sw::run(arr, job, opts);

            const int32_t expect = oracle::gotoh_score(job.seq_a, job.seq_b, job.params);
            if (expect != result.max_score)
                throw VerifyMismatch("length " + std::to_string(len) + " pair " +
                                     std::to_string(k) + ": simulator score " +
                                     std::to_string(result.max_score) + " != reference score " +
                                     std::to_string(expect));

            const perf::PerfReport report = perf::cups_from_ledger(result, config);
            out << len << " " << k << " " << result.max_score << " " << result.total_cycles
                << " " << fmt("%.9g", report.cups) << " " << fmt("%.9g", report.gcups_per_watt)
                << " yes\n";
            if (rf)
                rf << report.to_csv_row() << "," << len << "," << k << "," << result.max_score
                   << "\n";
        }
    }
    (void)err;
    return kExitOk;
}

struct ProjectArgs {
    uint64_t n = 0;
    uint64_t m = 0;
    std::string preset = "desk";
    std::string config_path;
    std::optional<double> cycles_per_iteration;
    std::optional<uint64_t> calibrate;
    std::string out_path;
};

int cmd_project(const ProjectArgs& p, std::ostream& out, std::ostream& err) {
    SystemConfig config;
    if (!p.config_path.empty())
        config = SystemConfig::from_file(p.config_path);
    else if (p.preset == "desk")
        config = SystemConfig::desk();
    else if (p.preset == "paper")
        config = SystemConfig::paper_scale();
    else
        throw std::invalid_argument("--preset must be 'desk' or 'paper'");
    config.validate();

    double c = 0;
    std::string c_source;
    if (p.cycles_per_iteration) {
        c = *p.cycles_per_iteration;
        c_source = "given";
    } else if (p.calibrate) {
        // Measure C on a miniature array with the same chaining behavior.
        const uint64_t len = *p.calibrate;
        if (len == 0)
            throw std::invalid_argument("--calibrate length must be positive");
        SystemConfig mini = config;
        mini.num_ics = config.num_ics > 1 ? 2 : 1;
        mini.rows_per_ic = static_cast<uint32_t>((len + mini.num_ics - 1) / mini.num_ics);
        ChainedArray arr(mini);
        arr.ledger().set_recording(false);
        std::mt19937_64 rng(12345);
        sw::AlignmentJob job;
        job.seq_a = random_dna(rng, len);
        job.seq_b = random_dna(rng, len);
        sw::AlignmentOptions opts;
        opts.record_active_trace = false;
        const sw::AlignmentResult r = sw::run(arr, job, opts);
        c = static_cast<double>(r.total_cycles) / static_cast<double>(r.total_iterations);
        c_source = "calibrated on a " + std::to_string(len) + "x" + std::to_string(len) +
                   " measured run";
    } else {
        throw std::invalid_argument(
            "project: missing cycles-per-iteration source; pass --cycles-per-iteration or "
            "--calibrate");
    }

    const perf::PerfReport report = perf::project(p.n, p.m, config, c);
    out << "projection for " << p.n << " x " << p.m << " cells\n";
    out << "per_iteration_cycles " << fmt("%.6g", c) << " (" << c_source << ")\n";
    out << "total_cycles " << report.total_cycles << "\n";
    out << "seconds " << fmt("%.9g", report.seconds) << "\n";
    out << "cups " << fmt("%.9g", report.cups) << "\n";
    out << "tcups " << fmt("%.9g", report.tcups) << "\n";
    out << "power_watt " << fmt("%.6g", report.power_watt) << "\n";
    out << "gcups_per_watt " << fmt("%.9g", report.gcups_per_watt) << "\n";
    out << perf::format_reference_tables();

    if (!p.out_path.empty()) {
        std::ofstream rf(p.out_path);
        if (!rf)
            throw std::runtime_error("cannot open report file " + p.out_path);
        rf << report.to_json() << "\n";
    }
    (void)err;
    return kExitOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Associative processing-in-storage simulator for Smith-Waterman scoring"};
    app.require_subcommand(1);

    AlignArgs aa;
    auto* align = app.add_subcommand("align", "Score one pair of FASTA sequences");
    align->add_option("fasta_a", aa.fasta_a, "first FASTA file")->required();
    align->add_option("fasta_b", aa.fasta_b, "second FASTA file")->required();
    align->add_option("--match", aa.params.match, "match score (default 2)");
    align->add_option("--mismatch", aa.params.mismatch, "mismatch score (default -1)");
    align->add_option("--gap-open", aa.params.g_first, "gap open penalty (default 2)");
    align->add_option("--gap-extend", aa.params.g_ext, "gap extension penalty (default 1)");
    align->add_option("--config", aa.config_path, "system configuration file");
    align->add_option("--out", aa.out_path, "write a JSON report line");
    align->add_option("--trace", aa.trace_path, "write the per-instruction cycle trace (JSONL)");
    align->add_option("--ambiguous", aa.ambiguous, "IUPAC ambiguity policy: reject|skip-record");
    align->add_flag("--verify", aa.verify, "also run the scalar reference and compare");
    align->add_flag("--restore-seqb", aa.restore_seqb,
                    "charge the cyclic seqB restoration cycles");

    BenchArgs ba;
    auto* bench = app.add_subcommand("bench", "Random-pair benchmark with verification");
    bench->add_option("--lengths", ba.lengths, "comma-separated lengths (default 64,128,256)");
    bench->add_option("--seed", ba.seed, "RNG seed (default 1)");
    bench->add_option("--pairs", ba.pairs, "pairs per length (default 2)");
    bench->add_option("--config", ba.config_path, "system configuration file");
    bench->add_option("--out", ba.out_path, "write a CSV report");

    ProjectArgs pa;
    auto* project = app.add_subcommand("project", "Analytic large-scale throughput projection");
    project->add_option("--n", pa.n, "first sequence length")->required();
    project->add_option("--m", pa.m, "second sequence length")->required();
    project->add_option("--preset", pa.preset, "desk|paper (default desk)");
    project->add_option("--config", pa.config_path, "system configuration file (overrides preset)");
    double cpi = 0;
    auto* cpi_opt = project->add_option("--cycles-per-iteration", cpi, "iteration cost C");
    uint64_t cal = 0;
    auto* cal_opt = project->add_option("--calibrate", cal,
                                        "measure C from an LxL simulated run");
    project->add_option("--out", pa.out_path, "write a JSON report line");

    std::vector<const char*> argv;
    argv.push_back("recam");
    for (const auto& s : args)
        argv.push_back(s.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (align->parsed())
            return cmd_align(aa, out, err);
        if (bench->parsed())
            return cmd_bench(ba, out, err);
        if (project->parsed()) {
            if (*cpi_opt)
                pa.cycles_per_iteration = cpi;
            if (*cal_opt)
                pa.calibrate = cal;
            return cmd_project(pa, out, err);
        }
    } catch (const CapacityError& e) {
        err << "error: " << e.what() << "\n";
        return kExitCapacity;
    } catch (const VerifyMismatch& e) {
        err << "error: score verification failed: " << e.what() << "\n";
        return kExitVerifyMismatch;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}

} // namespace recam::cli
