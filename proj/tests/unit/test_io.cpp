#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "helpers.hpp"
#include "nccover/io.hpp"

using namespace nccover;
using test::dist;

TEST_CASE("matrix json round trip") {
    std::mt19937_64 rng(1);
    const Mat m = random_matrix(3, 4, rng);
    const json j = matrix_to_json(m);
    CHECK(j[0][0].size() == 2);
    CHECK(dist(matrix_from_json(j), m) == 0.0);
}

TEST_CASE("algebra and action json round trip") {
    const BoringCover b = boring_cover(StarAlgebra::full_matrix(2), cyclic_table(3));
    const StarAlgebra a = algebra_from_json(algebra_to_json(b.cover));
    CHECK(a.dim() == b.cover.dim());
    const GroupAction g = action_from_json(a, action_to_json(b.action));
    CHECK(g.table == b.action.table);
    CHECK(validate_action(a, g) < 1e-12);
}

TEST_CASE("torus json round trip") {
    std::mt19937_64 rng(2);
    const TorusElement x = TorusElement::random(0.25, 2, rng);
    const json j = torus_to_json(x);
    CHECK(j.contains("theta"));
    CHECK(j.contains("R"));
    CHECK(j["coeffs"][0].size() == 4);
    CHECK((torus_from_json(j) - x).max_abs() == 0.0);
}

TEST_CASE("csv round trip") {
    const auto path = std::filesystem::temp_directory_path() / "nccover_io_test.csv";
    const std::vector<std::vector<double>> rows{{1.0, 2.5}, {-3.0, 1e-17}};
    write_csv(path.string(), {"a", "b"}, rows);
    CHECK(read_csv(path.string()) == rows);
    std::filesystem::remove(path);
}
