#include <doctest.h>

#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "fmm/grid_io.hpp"
#include "fmm/speed_catalog.hpp"

using namespace fmm;
namespace fs = std::filesystem;

TEST_CASE("speed csv loads row i as x-index i") {
    std::istringstream in("# comment\n1,2,3\n4,5,6\n\n7,8,9\n");
    const auto f = read_speed_csv(in);
    CHECK(f.spec().n() == 2);
    CHECK(f.at(0, 2) == 3.0);
    CHECK(f.at(1, 0) == 4.0);
    CHECK(f.at(2, 1) == 8.0);
    CHECK(f.f_min() == 1.0);
    CHECK(f.f_max() == 9.0);
}

TEST_CASE("speed csv validation") {
    {
        std::istringstream in("1,1,1\n1,0,1\n1,1,1\n");
        try {
            read_speed_csv(in);
            FAIL("expected InvalidSpeedError");
        } catch (const InvalidSpeedError& e) {
            CHECK(e.where() == GridIndex{1, 1});
        }
    }
    std::istringstream ragged("1,1,1\n1,1\n1,1,1\n");
    CHECK_THROWS_AS(read_speed_csv(ragged), std::invalid_argument);
    std::istringstream junk("1,1,1\n1,x,1\n1,1,1\n");
    CHECK_THROWS_AS(read_speed_csv(junk), std::invalid_argument);
    std::istringstream tiny("1,1\n1,1\n");
    CHECK_THROWS_AS(read_speed_csv(tiny), std::invalid_argument);
    std::istringstream negative("1,1,1\n1,-2,1\n1,1,1\n");
    CHECK_THROWS_AS(read_speed_csv(negative), InvalidSpeedError);
}

TEST_CASE("grid csv round trip is exact") {
    std::mt19937_64 gen(12);
    std::uniform_real_distribution<double> dist(1e-3, 1e3);
    for (int trial = 0; trial < 5; ++trial) {
        const GridSpec spec(2 + 3 * trial);
        std::vector<double> v(spec.size());
        for (auto& x : v) x = dist(gen);
        std::stringstream ss;
        write_grid_csv(ss, spec, v);
        const auto f = read_speed_csv(ss);
        CHECK(f.spec() == spec);
        CHECK(std::equal(v.begin(), v.end(), f.samples().begin()));
    }
}

TEST_CASE("raw dump is little-endian binary64") {
    const std::vector<double> v{1.0, -0.5, INFINITY};
    std::ostringstream os;
    write_grid_raw(os, v);
    const std::string bytes = os.str();
    REQUIRE(bytes.size() == 24u);
    // 1.0 = 0x3ff0000000000000
    CHECK(static_cast<unsigned char>(bytes[7]) == 0x3f);
    CHECK(static_cast<unsigned char>(bytes[6]) == 0xf0);
    CHECK(static_cast<unsigned char>(bytes[0]) == 0x00);
    for (std::size_t k = 0; k < v.size(); ++k) {
        std::uint64_t bits = 0;
        for (int b = 7; b >= 0; --b) {
            bits = (bits << 8) | static_cast<unsigned char>(bytes[k * 8 + static_cast<std::size_t>(b)]);
        }
        CHECK(std::bit_cast<double>(bits) == v[k]);
    }
}

TEST_CASE("format_real") {
    CHECK(format_real(0.1) == "0.1");
    CHECK(format_real(INFINITY) == "inf");
    CHECK(format_real(1.0) == "1");
    CHECK(parse_dump_format("raw") == DumpFormat::Raw);
    CHECK_THROWS_AS(parse_dump_format("hdf5"), std::invalid_argument);
}

TEST_CASE("atomic writes leave no temp file behind") {
    const auto dir = fs::temp_directory_path() / "fmm_io_test";
    fs::create_directories(dir);
    const auto path = dir / "grid.csv";
    const GridFunction t(GridSpec(2), 0.5);
    save_grid(path, t, DumpFormat::Csv);
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == "0.5,0.5,0.5\n0.5,0.5,0.5\n0.5,0.5,0.5\n");
    CHECK_FALSE(fs::exists(dir / "grid.csv.tmp"));
    CHECK_THROWS(write_file_atomically(dir / "missing" / "x.csv", "abc"));
    fs::remove_all(dir);
}
