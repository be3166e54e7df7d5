#include "recam/perf.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include <json.hpp>

namespace recam::perf {

namespace {

void fill_rates(PerfReport& r) {
    r.cups = static_cast<double>(r.cells) / r.seconds;
    r.tcups = r.cups / 1e12;
    r.power_watt = r.config.total_power_watt();
    r.gcups_per_watt = (r.cups / 1e9) / r.power_watt;
}

} // namespace

PerfReport cups_from_ledger(const sw::AlignmentResult& result, const SystemConfig& config) {
    config.validate();
    if (result.total_cycles == 0)
        throw std::invalid_argument("perf: zero-cycle result");
    PerfReport r;
    r.config = config;
    r.cells = result.cells_computed;
    r.total_cycles = result.total_cycles;
    r.iterations = result.total_iterations;
    r.per_iteration_cycles =
        static_cast<double>(result.total_cycles) / static_cast<double>(result.total_iterations);
    r.seconds = static_cast<double>(result.total_cycles) / config.frequency_hz;
    fill_rates(r);
    return r;
}

double gcups_per_watt(double tcups, double kilowatts) {
    if (kilowatts <= 0)
        throw std::invalid_argument("gcups_per_watt: power must be positive");
    return tcups * 1e3 / (kilowatts * 1e3);
}

PerfReport project(uint64_t n, uint64_t m, const SystemConfig& config,
                   double per_iteration_cycles) {
    config.validate();
    if (per_iteration_cycles <= 0)
        throw std::invalid_argument("project: cycles per iteration must be positive");
    if (std::min(n, m) > config.total_rows())
        throw std::invalid_argument(
            "project: the shorter sequence (" + std::to_string(std::min(n, m)) +
            " rows) exceeds the configured " + std::to_string(config.total_rows()) +
            " rows; add ICs to grow capacity at no throughput cost");
    PerfReport r;
    r.config = config;
    r.projected = true;
    r.cells = n * m;
    r.iterations = n + m;
    r.per_iteration_cycles = per_iteration_cycles;
    r.total_cycles = static_cast<uint64_t>(
        std::llround(static_cast<double>(n + m) * per_iteration_cycles));
    r.seconds = static_cast<double>(r.total_cycles) / config.frequency_hz;
    fill_rates(r);
    return r;
}

std::string PerfReport::to_json() const {
    nlohmann::ordered_json j;
    j["schema_version"] = kReportSchemaVersion;
    j["projected"] = projected;
    j["cells"] = cells;
    j["iterations"] = iterations;
    j["total_cycles"] = total_cycles;
    j["per_iteration_cycles"] = per_iteration_cycles;
    j["seconds"] = seconds;
    j["cups"] = cups;
    j["tcups"] = tcups;
    j["power_watt"] = power_watt;
    j["gcups_per_watt"] = gcups_per_watt;
    j["config"]["num_ics"] = config.num_ics;
    j["config"]["rows_per_ic"] = config.rows_per_ic;
    j["config"]["frequency_hz"] = config.frequency_hz;
    j["config"]["power_per_ic_watt"] = config.power_per_ic_watt;
    if (config.total_power_watt_override)
        j["config"]["total_power_watt_override"] = *config.total_power_watt_override;
    j["config"]["inter_ic_shift_overhead_cycles"] = config.inter_ic_shift_overhead_cycles;
    return j.dump();
}

std::string PerfReport::csv_header() {
    return "schema_version,projected,cells,iterations,total_cycles,per_iteration_cycles,"
           "seconds,cups,tcups,power_watt,gcups_per_watt,num_ics,rows_per_ic,frequency_hz";
}

std::string PerfReport::to_csv_row() const {
    char buf[512];
    std::snprintf(buf, sizeof buf, "%d,%d,%llu,%llu,%llu,%.6g,%.9g,%.9g,%.9g,%.6g,%.6g,%u,%u,%.9g",
                  kReportSchemaVersion, projected ? 1 : 0,
                  static_cast<unsigned long long>(cells),
                  static_cast<unsigned long long>(iterations),
                  static_cast<unsigned long long>(total_cycles), per_iteration_cycles, seconds,
                  cups, tcups, power_watt, gcups_per_watt, config.num_ics, config.rows_per_ic,
                  config.frequency_hz);
    return buf;
}

namespace {

constexpr ReferenceSystem kReferenceSystems[] = {
    {"Xeon Phi", 0.23, 4, 0.8, 0.3},
    {"FPGA", 6.0, 128, 1.3, 4.7},
    {"GPU", 11.1, 384, 100.0, 0.1},
    {"ReCAM", 53.0, 32, 6.6, 8.0},
};

constexpr ChromosomeComparison kChromosomeComparisons[] = {
    {"chr1", 57.2, -1.0, 53.0},
    {"chr5", 33.5, 11.1, 41.8},
    {"chr8", 21.1, 10.4, 30.8},
    {"chr16", 8.1, 9.7, 19.3},
};

} // namespace

std::span<const ReferenceSystem> reference_systems() {
    return kReferenceSystems;
}

std::span<const ChromosomeComparison> chromosome_comparisons() {
    return kChromosomeComparisons;
}

std::string format_reference_tables() {
    std::string out;
    out += "published reference systems (S-W scoring):\n";
    out += "  accelerator   TCUPS    ICs   power(kW)   GCUPS/Watt\n";
    for (const auto& s : reference_systems()) {
        char line[128];
        std::snprintf(line, sizeof line, "  %-11s %6.4g  %5d  %9.4g  %10.4g\n", s.name, s.tcups,
                      s.num_ics, s.kilowatts, s.published_gcups_per_watt);
        out += line;
    }
    out += "published chromosome-scale comparison:\n";
    out += "  chr     cells(1e12)   GPU TCUPS   ReCAM TCUPS\n";
    for (const auto& c : chromosome_comparisons()) {
        char line[128];
        if (c.gpu_tcups > 0)
            std::snprintf(line, sizeof line, "  %-6s %11.4g  %10.4g  %12.4g\n", c.chromosome,
                          c.cells_e12, c.gpu_tcups, c.recam_tcups);
        else
            std::snprintf(line, sizeof line, "  %-6s %11.4g  %10s  %12.4g\n", c.chromosome,
                          c.cells_e12, "-", c.recam_tcups);
        out += line;
    }
    return out;
}

} // namespace recam::perf
