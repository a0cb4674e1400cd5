#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <optional>

#include "jlb/errors.hpp"
#include "jlb/grid.hpp"

using namespace jlb;

namespace {
const double kPi = 3.14159265358979323846;
}

TEST_CASE("grid spec validation") {
    CHECK_THROWS_AS(GridSpec(1.0, 1.0, 0.1), ConfigError);
    CHECK_THROWS_AS(GridSpec(2.0, 1.0, 0.1), ConfigError);
    CHECK_THROWS_AS(GridSpec(0.0, 1.0, 0.0), ConfigError);
    CHECK_THROWS_AS(GridSpec(0.0, 1.0, -0.5), ConfigError);
    CHECK_THROWS_AS(GridSpec(0.0, 1.0, 1.5), ConfigError);
    CHECK_THROWS_AS(GridSpec(0.0, 1.0, 0.1, Refine{0, 0.1}), ConfigError);
    CHECK_THROWS_AS(GridSpec(0.0, 1.0, 0.1, Refine{3, 1.0}), ConfigError);
    CHECK_THROWS_AS(GridSpec(0.0, 1.0, 0.1, Refine{3, 0.0}), ConfigError);
    CHECK_NOTHROW(GridSpec(0.0, 1.0, 1.0));
}

TEST_CASE("right endpoint is always searched") {
    // 0, 0.3, 0.6, 0.9 then the appended endpoint 1.0
    const auto res = grid_max([](double x) { return std::optional<double>(x); },
                              GridSpec(0.0, 1.0, 0.3));
    CHECK(res.argmax == 1.0);
    CHECK(res.max == 1.0);
    CHECK(res.feasible_count == 5);
    CHECK(res.skipped_count == 0);
}

TEST_CASE("locates an interior optimum") {
    const auto res = grid_max(
        [](double x) {
            const double d = x - 0.37;
            return std::optional<double>(-d * d);
        },
        GridSpec(0.0, 1.0, 0.01));
    CHECK(res.argmax == doctest::Approx(0.37).epsilon(1e-9));
    CHECK(res.max > -1e-28);
}

TEST_CASE("ties resolve to the smallest argument") {
    const auto flat = grid_max([](double) { return std::optional<double>(2.0); },
                               GridSpec(-1.0, 1.0, 0.25));
    CHECK(flat.argmax == -1.0);
    CHECK(flat.max == 2.0);

    const auto twin = grid_max(
        [](double x) { return std::optional<double>(x == 0.25 || x == 0.75 ? 1.0 : 0.0); },
        GridSpec(0.0, 1.0, 0.25));
    CHECK(twin.argmax == 0.25);
}

TEST_CASE("infeasible points are skipped and counted") {
    const auto res = grid_max(
        [](double x) -> std::optional<double> {
            if (x < 0.5) return std::nullopt;
            return x;
        },
        GridSpec(0.0, 1.0, 0.1));
    CHECK(res.argmax == 1.0);
    CHECK(res.feasible_count == 6);
    CHECK(res.skipped_count == 5);

    CHECK_THROWS_AS(
        grid_max([](double) -> std::optional<double> { return std::nullopt; },
                 GridSpec(0.0, 1.0, 0.1)),
        InfeasibleError);
}

TEST_CASE("refinement sharpens the incumbent and never hurts") {
    const auto objective = [](double x) { return std::optional<double>(std::sin(x)); };
    const auto coarse = grid_max(objective, GridSpec(0.0, 4.0, 0.5));
    const auto fine = grid_max(objective, GridSpec(0.0, 4.0, 0.5, Refine{3, 0.1}));
    CHECK(fine.max >= coarse.max);
    CHECK(std::fabs(fine.argmax - kPi / 2.0) < 1e-3);
    CHECK(fine.max > 1.0 - 1e-6);
    CHECK(fine.max <= 1.0);
    // the reported max is the objective at the reported argmax
    CHECK(fine.max == std::sin(fine.argmax));
}

TEST_CASE("two-dimensional search finds a separable peak") {
    const auto res = grid_max_2d(
        [](double a, double b) {
            const double da = a - 1.0;
            const double db = b - 3.0;
            return std::optional<double>(-da * da - db * db);
        },
        GridSpec(0.0, 2.0, 0.5), GridSpec(2.0, 4.0, 0.5));
    CHECK(res.argmax_a == 1.0);
    CHECK(res.argmax_b == 3.0);
    CHECK(res.max == 0.0);
    CHECK(res.feasible_count == 25);
}

TEST_CASE("two-dimensional ties resolve lexicographically") {
    const auto res = grid_max_2d(
        [](double, double) { return std::optional<double>(1.0); },
        GridSpec(0.0, 1.0, 0.5), GridSpec(5.0, 6.0, 0.5));
    CHECK(res.argmax_a == 0.0);
    CHECK(res.argmax_b == 5.0);
}

TEST_CASE("two-dimensional infeasibility and skip counting") {
    const auto res = grid_max_2d(
        [](double a, double b) -> std::optional<double> {
            if (a + b > 1.0) return std::nullopt;
            return a + b;
        },
        GridSpec(0.0, 1.0, 0.5), GridSpec(0.0, 1.0, 0.5));
    CHECK(res.max == 1.0);
    CHECK(res.argmax_a == 0.0);  // lexicographic among the three maximizers
    CHECK(res.argmax_b == 1.0);
    CHECK(res.feasible_count + res.skipped_count == 9);
    CHECK(res.skipped_count == 3);

    CHECK_THROWS_AS(grid_max_2d([](double, double) -> std::optional<double> { return std::nullopt; },
                                GridSpec(0.0, 1.0, 0.5), GridSpec(0.0, 1.0, 0.5)),
                    InfeasibleError);
}

TEST_CASE("two-dimensional refinement narrows both axes") {
    const auto res = grid_max_2d(
        [](double a, double b) {
            const double da = a - 0.77;
            const double db = b - 1.33;
            return std::optional<double>(-da * da - db * db);
        },
        GridSpec(0.0, 2.0, 0.25, Refine{3, 0.1}), GridSpec(0.0, 2.0, 0.25));
    CHECK(std::fabs(res.argmax_a - 0.77) < 1e-3);
    CHECK(std::fabs(res.argmax_b - 1.33) < 1e-3);
}
