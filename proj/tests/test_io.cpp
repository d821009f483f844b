#include "doctest.h"

#include "bathent/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace bathent;

TEST_CASE("number formatting") {
    CHECK(io::format_number(0.0) == "0");
    CHECK(io::format_number(1.0) == "1");
    CHECK(io::format_number(0.1) == "0.10000000000000001");
    CHECK(io::format_number(-2.5e-30) == "-2.4999999999999999e-30");
    CHECK(io::format_number(1.0 / 3.0, 6) == "0.333333");
}

TEST_CASE("sha256") {
    CHECK(io::sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(io::sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("csv layout") {
    const auto path = std::filesystem::temp_directory_path() / "bathent_io.csv";
    io::write_csv(path, {{"t", Eigen::Vector2d(0.0, 0.5)}, {"x", Eigen::Vector2d(1.0, 0.25)}});
    std::ifstream in(path, std::ios::binary);
    std::stringstream text;
    text << in.rdbuf();
    CHECK(text.str() == "t,x\n0,1\n0.5,0.25\n");
    CHECK_THROWS_AS(io::write_csv(path, {{"t", Eigen::Vector2d(0, 1)}, {"x", Eigen::Vector3d(0, 1, 2)}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(io::write_text("/nonexistent_dir/x.csv", "x"), io::OutputError);
}
