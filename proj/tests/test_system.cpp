#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <random>

#include "recam/isa.hpp"
#include "recam/system.hpp"

using namespace recam;

namespace {

SystemConfig chained(uint32_t ics, uint32_t rows_per_ic) {
    SystemConfig c;
    c.num_ics = ics;
    c.rows_per_ic = rows_per_ic;
    return c;
}

std::string temp_path(const char* name) {
    return std::string("recam_test_") + name + ".tmp";
}

} // namespace

TEST_CASE("config file round trip") {
    const std::string path = temp_path("config");
    {
        std::ofstream out(path);
        out << "# system under test\n";
        out << "num_ics = 8\n";
        out << "rows_per_ic = 123\n";
        out << "frequency_hz = 5e8\n";
        out << "power_per_ic_watt = 150\n";
        out << "total_power_watt_override = 1300\n";
        out << "inter_ic_shift_overhead_cycles = 3\n";
    }
    const SystemConfig c = SystemConfig::from_file(path);
    CHECK(c.num_ics == 8);
    CHECK(c.rows_per_ic == 123);
    CHECK(c.frequency_hz == doctest::Approx(5e8));
    CHECK(c.power_per_ic_watt == doctest::Approx(150));
    REQUIRE(c.total_power_watt_override.has_value());
    CHECK(*c.total_power_watt_override == doctest::Approx(1300));
    CHECK(c.inter_ic_shift_overhead_cycles == 3);
    CHECK(c.total_rows() == 8 * 123);
    CHECK(c.total_power_watt() == doctest::Approx(1300));
    std::remove(path.c_str());
}

TEST_CASE("config file rejects unknown keys and bad syntax") {
    const std::string path = temp_path("badconfig");
    {
        std::ofstream out(path);
        out << "frequency 1e9\n";
    }
    CHECK_THROWS(SystemConfig::from_file(path));
    {
        std::ofstream out(path);
        out << "bogus_key = 3\n";
    }
    CHECK_THROWS(SystemConfig::from_file(path));
    std::remove(path.c_str());
}

TEST_CASE("power model") {
    SUBCASE("product rule") {
        SystemConfig c = chained(32, 16);
        c.power_per_ic_watt = 200.0;
        const PowerReport r = power_report(c, 1000);
        CHECK(r.watts == doctest::Approx(6400.0));
    }
    SUBCASE("zero cycles dissipate zero energy") {
        const PowerReport r = power_report(SystemConfig::desk(), 0);
        CHECK(r.joules == 0.0);
        CHECK(r.seconds == 0.0);
    }
    SUBCASE("override carries the full-scale figure") {
        const SystemConfig c = SystemConfig::paper_scale();
        const PowerReport r = power_report(c, 1000000000ull);
        CHECK(r.seconds == doctest::Approx(1.0));
        CHECK(r.watts == doctest::Approx(6600.0));
        CHECK(r.joules == doctest::Approx(6600.0));
    }
}

TEST_CASE("chained shift crosses IC boundaries") {
    SUBCASE("two ICs of two rows") {
        ChainedArray arr(chained(2, 2));
        for (uint64_t r = 0; r < 4; ++r)
            arr.poke_field("AD0", r, static_cast<uint32_t>(r + 1)); // (1,2,3,4)
        const uint64_t before = arr.ledger().total_cycles();
        isa::shift_field_down(arr, "AD0");
        CHECK(arr.ledger().total_cycles() - before == 96 + 2);
        const auto out = arr.peek_field("AD0");
        CHECK(out[0] == 0);
        CHECK(out[1] == 1);
        CHECK(out[2] == 2);
        CHECK(out[3] == 3);
    }
    SUBCASE("single IC costs exactly the base amount") {
        ChainedArray arr(chained(1, 4));
        const uint64_t before = arr.ledger().total_cycles();
        isa::shift_field_down(arr, "AD0");
        CHECK(arr.ledger().total_cycles() - before == 96);
    }
    SUBCASE("all-zero column stays zero across four ICs") {
        ChainedArray arr(chained(4, 3));
        isa::shift_field_down(arr, "E");
        for (uint64_t r = 0; r < arr.rows(); ++r)
            CHECK(arr.peek_field("E")[r] == 0);
    }
}

TEST_CASE("chained max scalar reduces across ICs") {
    SUBCASE("per-IC maxima") {
        ChainedArray arr(chained(3, 2));
        const int32_t vals[] = {5, 4, 9, 8, 3, 2};
        for (uint64_t r = 0; r < 6; ++r) {
            arr.poke_field("active", r, 1);
            arr.poke_field("AD0", r, static_cast<uint32_t>(vals[r]));
        }
        const uint64_t before = arr.ledger().total_cycles();
        const auto ms = isa::max_scalar(arr, "AD0");
        CHECK(arr.ledger().total_cycles() - before == 64 + 2);
        CHECK(ms.value == 9);
        CHECK(ms.rows == std::vector<uint64_t>{2});
    }
    SUBCASE("random rows match a global scan") {
        std::mt19937_64 rng(99);
        ChainedArray arr(chained(4, 1024));
        int32_t best = INT32_MIN;
        for (uint64_t r = 0; r < arr.rows(); ++r) {
            arr.poke_field("active", r, 1);
            const int32_t v = static_cast<int32_t>(rng());
            arr.poke_field("AD1", r, static_cast<uint32_t>(v));
            best = std::max(best, v);
        }
        const auto ms = isa::max_scalar(arr, "AD1");
        CHECK(ms.value == best);
    }
}

TEST_CASE("chained array equals one large crossbar bit for bit") {
    std::mt19937_64 rng(7);
    ChainedArray split(chained(4, 16));
    ChainedArray whole(chained(1, 64));

    auto drive = [&](ChainedArray& arr) {
        std::mt19937_64 r2(2024);
        for (uint64_t r = 0; r < arr.rows(); ++r) {
            arr.poke_field("active", r, 1);
            arr.poke_field("AD1", r, static_cast<uint32_t>(r2()));
            arr.poke_field("AD2", r, static_cast<uint32_t>(r2()));
            arr.poke_field("seqA", r, r2() & 3);
            arr.poke_field("seqB", r, r2() & 3);
        }
        isa::add_fields(arr, "AD0", "AD1", "AD2");
        isa::shift_field_down(arr, "AD0");
        isa::match_basepairs(arr, "tmp", "seqA", "seqB", 2, -1);
        isa::max_rowwise(arr, "E", "AD0", "AD1");
        isa::sub_scalar(arr, "F", "E", 7);
        isa::shift_field_down(arr, "F");
        isa::max_scalar(arr, "F");
    };
    drive(split);
    drive(whole);
    for (const char* f : {"E", "F", "tmp", "AD0", "AD1", "AD2"})
        CHECK(split.peek_field(f) == whole.peek_field(f));
    // Costs differ exactly by the overhead of the three chained
    // instructions (two field shifts and one scalar max).
    CHECK(split.ledger().total_cycles() ==
          whole.ledger().total_cycles() + 3 * split.config().inter_ic_shift_overhead_cycles);
    (void)rng;
}

TEST_CASE("oversized arrays are refused") {
    SystemConfig c = chained(32, 8u * 1024 * 1024);
    CHECK_THROWS(ChainedArray{c});
}

TEST_CASE("global row addressing") {
    ChainedArray arr(chained(2, 4));
    arr.poke_field("E", 5, 42); // IC 1, local row 1
    CHECK(arr.ic(1).peek_bits(1, arr.layout().slice("E").start, 32) == 42);
    isa::broadcast_write_row(arr, "F", 7, 6);
    CHECK(arr.peek_field("F")[6] == 7);
    CHECK(arr.peek_field("F")[5] == 0);
    CHECK_THROWS(isa::broadcast_write_row(arr, "F", 7, 8));
}
