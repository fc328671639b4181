#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "moyal/io.hpp"
#include "moyal/phasespace.hpp"
#include "moyal/states.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace moyal;
namespace fs = std::filesystem;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(bool(in));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("moyal_io_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const {
        return (path / name).string();
    }
};

}  // namespace

TEST_CASE("field csv round-trips values at full precision") {
    TempDir tmp;
    GridSpec g(16, 8.0);
    PhaseSpaceField F(g);
    for (int j = 0; j < g.n; ++j)
        for (int k = 0; k < g.n; ++k)
            F.at(j, k) = std::sin(0.37 * j) * std::cos(0.11 * k) / 3.0;

    std::string path = tmp.file("field.csv");
    io::write_field_csv(path, F);
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header == "x,p,value");
    int rows = 0;
    double x, p, v;
    char c1, c2;
    while (in >> x >> c1 >> p >> c2 >> v) {
        int j = int(std::lround((x + g.length / 2) / g.dx()));
        int k = int(std::lround(p / g.dp())) + g.n / 2;
        CHECK(v == F.at(j, k).real());  // 17 digits: exact round trip
        ++rows;
    }
    CHECK(rows == g.n * g.n);
    CHECK(!fs::exists(path + ".tmp"));

    // repeated runs produce identical bytes
    std::string again = tmp.file("field2.csv");
    io::write_field_csv(again, F);
    CHECK(slurp(path) == slurp(again));

    PhaseSpaceField C(g);
    C.at(0, 0) = cplx(0.0, 1.0);
    CHECK_THROWS_AS(io::write_field_csv(tmp.file("bad.csv"), C), Error);
    io::write_complex_field_csv(tmp.file("cplx.csv"), C);
    std::ifstream cin(tmp.file("cplx.csv"));
    std::getline(cin, header);
    CHECK(header == "x,p,re,im");
}

TEST_CASE("kernel and profile writers use the documented headers") {
    TempDir tmp;
    GridSpec g(16, 8.0);
    weyl::OperatorKernel A(g);
    A.at(1, 2) = cplx(0.5, -0.25);
    io::write_kernel_csv(tmp.file("k.csv"), A);
    std::ifstream in(tmp.file("k.csv"));
    std::string header;
    std::getline(in, header);
    CHECK(header == "x1,x2,re,im");

    io::write_profile_csv(tmp.file("m.csv"), "x", {0.0, 1.0}, {2.0, 3.0});
    std::ifstream pin(tmp.file("m.csv"));
    std::getline(pin, header);
    CHECK(header == "x,value");
    CHECK_THROWS_AS(
        io::write_profile_csv(tmp.file("bad.csv"), "x", {0.0}, {1.0, 2.0}),
        Error);
}

TEST_CASE("grid json survives a round trip and sidecars carry the basics") {
    GridSpec g(64, 12.5, 0.5);
    GridSpec back = io::grid_from_json(io::grid_json(g));
    CHECK(back == g);

    nlohmann::json side = io::sidecar(g, 1.25);
    CHECK(side.at("time").get<double>() == 1.25);
    CHECK(side.at("grid").at("n").get<int>() == 64);
    CHECK(side.contains("tool_version"));

    TempDir tmp;
    io::write_json(tmp.file("s.json"), side);
    nlohmann::json readback =
        nlohmann::json::parse(std::ifstream(tmp.file("s.json")));
    CHECK(readback == side);
}
