#include "tempest/csv.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>

using namespace tempest;

namespace {

struct TempFile {
    std::string path;

    explicit TempFile(const std::string& name)
        : path((std::filesystem::temp_directory_path() / name).string()) {}
    ~TempFile() { std::remove(path.c_str()); }

    void write(const std::string& content) const {
        std::ofstream out(path, std::ios::binary);
        out << content;
    }
    std::string read() const {
        std::ifstream in(path, std::ios::binary);
        return {std::istreambuf_iterator<char>(in),
                std::istreambuf_iterator<char>()};
    }
};

std::string message_of(const std::string& path, auto&& fn) {
    try {
        fn();
    } catch (const std::exception& e) {
        return e.what();
    }
    (void)path;
    return {};
}

}  // namespace

TEST_CASE("loading") {
    SUBCASE("3x2 numeric file") {
        TempFile f("tempest_csv_basic.csv");
        f.write("1,2\n3.5,-4\n5e-1,6\n");
        const TimeSeries z = load_csv(f.path);
        REQUIRE(z.n() == 3);
        REQUIRE(z.dim() == 2);
        CHECK(z.values()(0, 0) == 1.0);
        CHECK(z.values()(1, 1) == -4.0);
        CHECK(z.values()(2, 0) == 0.5);
    }
    SUBCASE("header skip") {
        TempFile f("tempest_csv_header.csv");
        f.write("x,y\n1,2\n3,4\n");
        const TimeSeries z = load_csv(f.path, true);
        CHECK(z.n() == 2);
        CHECK(z.values()(0, 1) == 2.0);
        CHECK_THROWS_AS(load_csv(f.path, false), std::runtime_error);
    }
    SUBCASE("whitespace and CRLF tolerance") {
        TempFile f("tempest_csv_crlf.csv");
        f.write(" 1 , 2 \r\n3,4\r\n");
        const TimeSeries z = load_csv(f.path);
        CHECK(z.n() == 2);
        CHECK(z.values()(0, 0) == 1.0);
        CHECK(z.values()(0, 1) == 2.0);
    }
    SUBCASE("errors carry the physical line number") {
        TempFile f("tempest_csv_bad.csv");
        f.write("1,2\nabc,4\n");
        const std::string msg =
            message_of(f.path, [&] { (void)load_csv(f.path); });
        CHECK(msg.find(":2:") != std::string::npos);
        CHECK(msg.find(f.path) != std::string::npos);

        TempFile g("tempest_csv_ragged.csv");
        g.write("1,2\n3\n");
        const std::string ragged =
            message_of(g.path, [&] { (void)load_csv(g.path); });
        CHECK(ragged.find(":2:") != std::string::npos);

        // Header shifts the physical numbering: the bad row is line 3.
        TempFile h("tempest_csv_hdr_bad.csv");
        h.write("x\n1\nnan\n");
        const std::string nan_msg =
            message_of(h.path, [&] { (void)load_csv(h.path, true); });
        CHECK(nan_msg.find(":3:") != std::string::npos);
    }
    SUBCASE("empty file") {
        TempFile f("tempest_csv_empty.csv");
        f.write("");
        CHECK_THROWS_AS(load_csv(f.path), std::runtime_error);
    }
    SUBCASE("missing file") {
        CHECK_THROWS_AS(load_csv("/nonexistent/definitely_missing.csv"),
                        std::runtime_error);
    }
}

TEST_CASE("round trip") {
    Matrix m(3, 2);
    m << 0.1, -2.5, 1e-17, 3.0, 1234567.875, -0.0625;
    const TimeSeries z{m};

    SUBCASE("values survive exactly") {
        TempFile f("tempest_csv_roundtrip.csv");
        save_csv(f.path, z);
        const TimeSeries back = load_csv(f.path);
        CHECK(back.values() == z.values());
    }
    SUBCASE("header row is written and skipped symmetrically") {
        TempFile f("tempest_csv_roundtrip_hdr.csv");
        save_csv(f.path, z, true);
        CHECK(f.read().rfind("c0,c1\n", 0) == 0);
        const TimeSeries back = load_csv(f.path, true);
        CHECK(back.values() == z.values());
    }
}

TEST_CASE("double formatting") {
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(-3.0) == "-3");
    CHECK(format_double(0.1) == "0.1");
    // Shortest representation must round-trip exactly.
    const double tricky = 0.1 + 0.2;
    CHECK(std::stod(format_double(tricky)) == tricky);
}
