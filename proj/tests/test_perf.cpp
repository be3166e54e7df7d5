#include <doctest.h>

#include <cmath>

#include <json.hpp>

#include "recam/perf.hpp"

using namespace recam;

TEST_CASE("cups_from_ledger unit arithmetic") {
    SystemConfig c;
    c.frequency_hz = 1e9;
    sw::AlignmentResult r;
    r.cells_computed = 1000000;
    r.total_cycles = 1000000;
    r.total_iterations = 2000;
    const auto report = perf::cups_from_ledger(r, c);
    CHECK(report.seconds == doctest::Approx(1e-3));
    CHECK(report.cups == doctest::Approx(1e9));
    CHECK(report.tcups == doctest::Approx(1e-3));
    CHECK(report.per_iteration_cycles == doctest::Approx(500.0));

    SystemConfig doubled = c;
    doubled.frequency_hz = 2e9;
    CHECK(perf::cups_from_ledger(r, doubled).cups == doctest::Approx(2e9));

    r.total_cycles = 0;
    CHECK_THROWS(perf::cups_from_ledger(r, c));
}

TEST_CASE("gcups_per_watt reproduces the published ratios") {
    CHECK(std::abs(perf::gcups_per_watt(53.0, 6.6) - 8.0) <= 0.15);
    CHECK(std::abs(perf::gcups_per_watt(6.0, 1.3) - 4.7) <= 0.15);
    CHECK(std::abs(perf::gcups_per_watt(11.1, 100.0) - 0.1) <= 0.15);
    CHECK(std::abs(perf::gcups_per_watt(0.23, 0.8) - 0.3) <= 0.15);
    CHECK_THROWS(perf::gcups_per_watt(1.0, 0.0));
}

TEST_CASE("projection formula") {
    SystemConfig paper = SystemConfig::paper_scale();
    SUBCASE("plug-in example") {
        const auto r = perf::project(1000000, 1000000, paper, 2400.0);
        CHECK(r.tcups == doctest::Approx(0.2083).epsilon(1e-3));
    }
    SUBCASE("doubling the side doubles throughput for square jobs") {
        const auto r1 = perf::project(1 << 20, 1 << 20, paper, 2500.0);
        const auto r2 = perf::project(2 << 20, 2 << 20, paper, 2500.0);
        CHECK(r2.cups == doctest::Approx(2.0 * r1.cups));
    }
    SUBCASE("capacity is bounded by rows, not throughput") {
        SystemConfig tiny;
        tiny.num_ics = 1;
        tiny.rows_per_ic = 64;
        CHECK_THROWS_WITH_AS(perf::project(65, 65, tiny, 2500.0),
                             doctest::Contains("add ICs"), std::invalid_argument);
        // A longer second sequence is fine as long as the shorter fits.
        CHECK_NOTHROW(perf::project(64, 1 << 20, tiny, 2500.0));
    }
    SUBCASE("monotone in frequency") {
        SystemConfig slow = paper;
        slow.frequency_hz = 5e8;
        CHECK(perf::project(1000, 1000, slow, 2500.0).cups <
              perf::project(1000, 1000, paper, 2500.0).cups);
    }
}

TEST_CASE("measured report and projection agree when fed the measured C") {
    SystemConfig c;
    c.num_ics = 1;
    c.rows_per_ic = 64;
    sw::AlignmentResult r;
    r.cells_computed = 48 * 31;
    r.total_iterations = 48 + 31;
    r.total_cycles = 208838;
    const auto measured = perf::cups_from_ledger(r, c);
    const auto projected = perf::project(48, 31, c, measured.per_iteration_cycles);
    CHECK(projected.total_cycles == r.total_cycles);
    CHECK(projected.cups == doctest::Approx(measured.cups).epsilon(1e-12));
}

TEST_CASE("published reference data is stored verbatim") {
    const auto systems = perf::reference_systems();
    REQUIRE(systems.size() == 4);
    CHECK(systems[0].tcups == doctest::Approx(0.23));
    CHECK(systems[1].published_gcups_per_watt == doctest::Approx(4.7));
    CHECK(systems[2].kilowatts == doctest::Approx(100.0));
    CHECK(systems[3].tcups == doctest::Approx(53.0));
    CHECK(systems[3].num_ics == 32);

    const auto chromo = perf::chromosome_comparisons();
    REQUIRE(chromo.size() == 4);
    CHECK(chromo[0].cells_e12 == doctest::Approx(57.2));
    CHECK(chromo[1].gpu_tcups == doctest::Approx(11.1));
    CHECK(chromo[1].recam_tcups == doctest::Approx(41.8));
    // The published headline speedup.
    CHECK(std::abs(chromo[1].recam_tcups / chromo[1].gpu_tcups - 3.7) <= 0.1);
}

TEST_CASE("report serialization") {
    SystemConfig c = SystemConfig::desk();
    sw::AlignmentResult r;
    r.cells_computed = 100;
    r.total_iterations = 20;
    r.total_cycles = 52900;
    const auto report = perf::cups_from_ledger(r, c);
    const auto j = nlohmann::json::parse(report.to_json());
    CHECK(j["schema_version"] == perf::kReportSchemaVersion);
    CHECK(j["cells"] == 100);
    CHECK(j["config"]["num_ics"] == 4);
    CHECK(j["projected"] == false);
    CHECK(perf::PerfReport::csv_header().find("gcups_per_watt") != std::string::npos);
    CHECK(report.to_csv_row().find("52900") != std::string::npos);
    CHECK(perf::format_reference_tables().find("ReCAM") != std::string::npos);
}
