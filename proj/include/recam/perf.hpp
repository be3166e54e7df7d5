#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "recam/swalign.hpp"
#include "recam/system.hpp"

// Throughput and efficiency reporting. Measured results come from cycle
// ledgers; large-scale numbers come from the analytic projection; the
// published figures of comparable systems are carried as constants and
// displayed alongside, never blended into measurements.

namespace recam::perf {

constexpr int kReportSchemaVersion = 1;

struct PerfReport {
    uint64_t cells = 0;
    uint64_t total_cycles = 0;
    uint64_t iterations = 0;
    double per_iteration_cycles = 0; ///< derived constant C
    double seconds = 0;
    double cups = 0;
    double tcups = 0;
    double power_watt = 0;
    double gcups_per_watt = 0;
    SystemConfig config;
    bool projected = false;

    std::string to_json() const; ///< one line, schema-versioned
    static std::string csv_header();
    std::string to_csv_row() const;
};

/// Builds a report from a measured run: seconds = cycles / frequency,
/// CUPS = cells / seconds.
PerfReport cups_from_ledger(const sw::AlignmentResult& result, const SystemConfig& config);

/// GCUPS per watt from a TCUPS throughput at a kilowatt power draw.
double gcups_per_watt(double tcups, double kilowatts);

/// Analytic projection for an n x m job at C cycles per iteration:
/// cycles = (n + m) C, cells = n m. Rejects jobs whose shorter sequence
/// exceeds the configured rows (capacity grows with the IC count at no
/// throughput cost).
PerfReport project(uint64_t n, uint64_t m, const SystemConfig& config,
                   double per_iteration_cycles);

/// Published throughput/power figures of large-scale aligners, kept
/// verbatim for side-by-side display.
struct ReferenceSystem {
    const char* name;
    double tcups;
    int num_ics;
    double kilowatts;
    double published_gcups_per_watt;
};

std::span<const ReferenceSystem> reference_systems();

/// Published per-chromosome comparison (table sizes in 1e12 cells;
/// gpu_tcups <= 0 means not reported).
struct ChromosomeComparison {
    const char* chromosome;
    double cells_e12;
    double gpu_tcups;
    double recam_tcups;
};

std::span<const ChromosomeComparison> chromosome_comparisons();

/// Aligned-text rendering of the published reference figures.
std::string format_reference_tables();

} // namespace recam::perf
