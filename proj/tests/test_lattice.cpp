#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "speclab/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <set>

using namespace speclab;

namespace {

// Independent box-scan oracle (no ordering, just the set).
std::set<LatticeMode> ball_oracle(int n, double lambda) {
    std::set<LatticeMode> modes;
    const int jmax = static_cast<int>(lambda);
    const double r2 = lambda * lambda;
    for (int a = -jmax; a <= jmax; ++a)
        for (int b = -jmax; b <= jmax; ++b)
            for (int c = -jmax; c <= jmax; ++c) {
                if (n < 2 && b != 0) continue;
                if (n < 3 && c != 0) continue;
                if (static_cast<double>(a) * a + static_cast<double>(b) * b +
                        static_cast<double>(c) * c <=
                    r2)
                    modes.insert({a, b, c});
            }
    return modes;
}

}  // namespace

TEST_CASE("modes_in_ball canonical order, n = 1") {
    const auto modes = modes_in_ball(1, 2.0);
    const std::vector<LatticeMode> expected = {
        {0, 0, 0}, {-1, 0, 0}, {1, 0, 0}, {-2, 0, 0}, {2, 0, 0}};
    CHECK(modes == expected);
}

TEST_CASE("modes_in_ball canonical order, n = 2") {
    const auto modes = modes_in_ball(2, 1.0);
    const std::vector<LatticeMode> expected = {
        {0, 0, 0}, {-1, 0, 0}, {0, -1, 0}, {0, 1, 0}, {1, 0, 0}};
    CHECK(modes == expected);
}

TEST_CASE("mode count at radius 10 in the plane") {
    CHECK(modes_in_ball(2, 10.0).size() == 317);
    CHECK(ball_oracle(2, 10.0).size() == 317);
}

TEST_CASE("modes_in_ball matches the box-scan oracle") {
    const std::vector<std::pair<int, double>> cases = {
        {1, 0.0}, {1, 7.3}, {1, 50.0}, {2, 7.5}, {2, 20.0}, {3, 4.999}, {3, 12.2}};
    for (const auto& [n, lambda] : cases) {
        CAPTURE(n);
        CAPTURE(lambda);
        const auto modes = modes_in_ball(n, lambda);
        const auto oracle = ball_oracle(n, lambda);
        CHECK(modes.size() == oracle.size());
        CHECK(std::set<LatticeMode>(modes.begin(), modes.end()) == oracle);
        CHECK(std::is_sorted(modes.begin(), modes.end(), ModeOrder{}));
    }
}

TEST_CASE("boundary modes are included") {
    // |j| = lambda exactly
    const auto modes = modes_in_ball(2, 5.0);
    CHECK(std::count(modes.begin(), modes.end(), LatticeMode{3, 4, 0}) == 1);
    CHECK(std::count(modes.begin(), modes.end(), LatticeMode{0, 5, 0}) == 1);
}

TEST_CASE("weyl ratio on the line is exact") {
    // count = 2*lambda + 1 for integer lambda
    CHECK(weyl_count_ratio(1, 100.0) == doctest::Approx(201.0 / 200.0).epsilon(1e-14));
}

TEST_CASE("weyl ratio tends to one") {
    CHECK(std::abs(weyl_count_ratio(2, 100.0) - 1.0) < 0.01);
    CHECK(std::abs(weyl_count_ratio(3, 30.0) - 1.0) < 0.02);
}

TEST_CASE("gauss-circle style envelope in the plane") {
    for (double lambda : {20.0, 50.0, 113.0, 200.0}) {
        CAPTURE(lambda);
        CHECK(std::abs(weyl_count_ratio(2, lambda) - 1.0) <= 5.0 / lambda);
    }
}

TEST_CASE("argument validation") {
    CHECK_THROWS_AS(modes_in_ball(4, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(modes_in_ball(2, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(weyl_count_ratio(2, 0.5), std::invalid_argument);
}
