#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "ridgelab/errors.hpp"
#include "ridgelab/grid_io.hpp"

using namespace ridgelab;

TEST_CASE("grid csv round trip is exact") {
    std::mt19937_64 rng(41);
    std::normal_distribution<double> normal;
    RidgeletCoeffs w(PrimeModulus(5), 2);
    for (auto& v : w.values()) v = {normal(rng), normal(rng) * 1e-300};
    std::stringstream ss;
    write_grid_csv(ss, w);
    const auto table = read_grid_csv(ss);
    CHECK(table.p == 5);
    CHECK(table.d == 2);
    const auto back = to_ridgelet_coeffs(table);
    CHECK(back.values() == w.values());
    CHECK_THROWS_AS(to_grid_function(table), DimensionError);
}

TEST_CASE("grid csv layout") {
    GridFunction f(PrimeModulus(3), 1);
    f[1] = {0.5, -2.0};
    std::stringstream ss;
    write_grid_csv(ss, f);
    CHECK(ss.str() == "p,d\n3,1\nindex,re,im\n0,0,0\n1,0.5,-2\n2,0,0\n");
}

TEST_CASE("malformed grid csv") {
    for (const char* text : {"", "x,y\n3,1\nindex,re,im\n", "p,d\n4,1\nindex,re,im\n0,0,0\n1,0,0\n2,0,0\n3,0,0\n",
                             "p,d\n3,1\nindex,re,im\n0,0,0\n2,0,0\n1,0,0\n", "p,d\n3,1\nindex,re,im\n0,a,0\n"}) {
        std::stringstream ss(text);
        CHECK_THROWS_AS(to_grid_function(read_grid_csv(ss)), Error);
    }
}

TEST_CASE("dataset csv") {
    std::stringstream ss("x0,x1,y\n1,2,0.5\n0,0,-1\n");
    const auto rows = read_dataset_csv(ss);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].x.coords == std::vector<std::uint64_t>{1, 2});
    CHECK(rows[0].y == 0.5);
    CHECK(rows[1].y == -1.0);

    std::stringstream bad_header("a,y\n1,2\n");
    CHECK_THROWS_AS(read_dataset_csv(bad_header), IoError);
    std::stringstream short_row("x0,y\n1\n");
    CHECK_THROWS_AS(read_dataset_csv(short_row), IoError);
    CHECK_THROWS_AS(read_dataset_csv(std::filesystem::path("/nonexistent/data.csv")), IoError);
}

TEST_CASE("activation csv") {
    const auto path = std::filesystem::temp_directory_path() / "ridgelab_activation_test.csv";
    {
        std::ofstream os(path);
        os << "b,value\n0,0\n1,1\n2,0.5\n";
    }
    CHECK(read_activation_csv(path) == std::vector<double>{0.0, 1.0, 0.5});
    {
        std::ofstream os(path);
        os << "b,value\n1,1\n";
    }
    CHECK_THROWS_AS(read_activation_csv(path), IoError);
    std::filesystem::remove(path);
}
