#include "twostage/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "doctest.h"

using namespace twostage;
using io::RunConfig;

TEST_CASE("run config round-trips through json losslessly") {
    RunConfig c;
    c.subcommand = "simulate";
    c.family = "xyz";
    c.az = 0.1 + 0.2;  // deliberately non-representable
    c.ax = 1.0 / 3.0;
    c.L = 14;
    c.T = 61;
    c.seed = 0xdeadbeefcafeULL;
    c.first_window = FitWindow{2, 5};
    c.out = "some/prefix";

    io::json j = io::to_json(c);
    RunConfig back = io::run_config_from_json(j);
    CHECK(back.az == c.az);
    CHECK(back.ax == c.ax);
    CHECK(back.seed == c.seed);
    CHECK(back.L == c.L);
    CHECK(back.T == c.T);
    REQUIRE(back.first_window.has_value());
    CHECK(back.first_window->t_min == 2);
    CHECK(back.first_window->t_max == 5);
    CHECK_FALSE(back.second_window.has_value());
    CHECK(io::to_json(back) == j);
}

TEST_CASE("config parsing helpers reject unknown names") {
    RunConfig c;
    c.family = "squeezed";
    CHECK_THROWS_AS(c.gate_family(), std::invalid_argument);
    c.family = "haar";
    c.geometry = "triangle";
    CHECK_THROWS_AS(c.parsed_geometry(), std::invalid_argument);
    c.geometry = "brickwall";
    c.boundary = "twisted";
    CHECK_THROWS_AS(c.parsed_boundary(), std::invalid_argument);
    c.boundary = "open";
    c.reduction = "median";
    CHECK_THROWS_AS(c.parsed_reduction(), std::invalid_argument);
}

TEST_CASE("doubles survive the text format") {
    for (double v : {1.0 / 3.0, 0.1, 2.5e-300, -7.25, 3.141592653589793}) {
        std::string s = io::format_double(v);
        CHECK(std::stod(s) == v);
    }
}

TEST_CASE("series csv layout") {
    RunConfig c;
    c.subcommand = "simulate";
    std::string csv = io::series_csv(c, {1.0, 0.5, 0.25}, "deltaZ");

    CHECK(csv.find("# version: ") == 0);
    CHECK(csv.find("# config: ") != std::string::npos);
    CHECK(csv.find("# time_convention: ") != std::string::npos);
    CHECK(csv.find("t,deltaZ\r\n") != std::string::npos);
    CHECK(csv.find("0,1\r\n") != std::string::npos);
    CHECK(csv.find("2,0.25\r\n") != std::string::npos);

    // identical inputs, identical bytes
    CHECK(csv == io::series_csv(c, {1.0, 0.5, 0.25}, "deltaZ"));

    // the embedded config parses back
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);  // version
    std::getline(in, line);  // config
    io::json j = io::json::parse(line.substr(std::string("# config: ").size()));
    CHECK(io::run_config_from_json(j).subcommand == "simulate");
}

TEST_CASE("table csv carries the pinning and all cells") {
    SpaceTimeTable tab;
    tab.L = 2;
    tab.T = 1;
    tab.pinning = Pinning::Magnon;
    tab.z = {1.0, 0.0, 0.25, 0.5};
    RunConfig c;
    std::string csv = io::table_csv(c, tab);
    CHECK(csv.find("# pinning: magnon") != std::string::npos);
    CHECK(csv.find("x,t,Z\r\n") != std::string::npos);
    CHECK(csv.find("1,0,1\r\n") != std::string::npos);
    CHECK(csv.find("2,1,0.5\r\n") != std::string::npos);
}

TEST_CASE("atomic write replaces the file completely") {
    std::string path = "io_test_tmp_file.txt";
    io::write_text_atomic(path, "first\n");
    io::write_text_atomic(path, "second\n");
    std::ifstream f(path);
    std::string content((std::istreambuf_iterator<char>(f)),
                        std::istreambuf_iterator<char>());
    CHECK(content == "second\n");
    std::remove(path.c_str());
    std::remove((path + ".tmp").c_str());
}
