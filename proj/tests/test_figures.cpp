#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>

#include "jlb/errors.hpp"
#include "jlb/figures.hpp"

using namespace jlb;

TEST_CASE("antenna sweep rows are ordered and oracle-consistent") {
    Fig1Options opt;
    opt.k_max = 2;
    opt.resolution = 0.01;
    opt.samples = 20000;
    opt.seed = 3;
    const auto rows = fig1_rows(opt);
    REQUIRE(rows.size() == 2);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& row = rows[i];
        CHECK(row.x == static_cast<double>(i + 1));
        CHECK(row.jensen_direction == Direction::upper);
        REQUIRE(row.heuristic_bound.has_value());
        REQUIRE(row.oracle.has_value());
        REQUIRE(row.oracle_err.has_value());
        CHECK(*row.heuristic_bound <= row.family_bound);
        CHECK(row.family_bound <= row.jensen_bound);
        CHECK(row.family_bound <= *row.oracle + 5.0 * *row.oracle_err);
        CHECK(*row.oracle <= row.jensen_bound + 5.0 * *row.oracle_err);
    }
    // regenerating with identical options reproduces every byte
    const auto again = fig1_rows(opt);
    std::ostringstream a, b;
    write_csv(a, rows);
    write_csv(b, again);
    CHECK(a.str() == b.str());

    opt.k_max = 0;
    CHECK_THROWS_AS(fig1_rows(opt), ConfigError);
}

TEST_CASE("snr sweep rows bracket the quadrature capacity") {
    Fig2Options opt;
    opt.theta_lo = 0.5;
    opt.theta_hi = 1.5;
    opt.theta_step = 0.5;
    opt.resolution = 0.01;
    const auto rows = fig2_rows(opt);
    REQUIRE(rows.size() == 3);
    for (const auto& row : rows) {
        REQUIRE(row.oracle.has_value());
        CHECK(row.family_bound <= *row.oracle);
        CHECK(*row.oracle <= row.jensen_bound);
        CHECK_FALSE(row.heuristic_bound.has_value());
    }
    CHECK(rows[0].x == 0.5);
    CHECK(rows[2].x == 1.5);
    // the Jensen ceiling ln(1+g/θ) falls as θ grows
    CHECK(rows[0].jensen_bound > rows[1].jensen_bound);
    CHECK(rows[1].jensen_bound > rows[2].jensen_bound);

    Fig2Options bad = opt;
    bad.theta_lo = 0.0;
    CHECK_THROWS_AS(fig2_rows(bad), ConfigError);
    bad = opt;
    bad.theta_lo = 2.0;
    CHECK_THROWS_AS(fig2_rows(bad), ConfigError);
}

TEST_CASE("moment sweep rows sit between bound and exact sum") {
    Fig3Options opt;
    opt.n_max = 5;
    opt.resolution = 0.05;
    const auto rows = fig3_rows(opt);
    REQUIRE(rows.size() == 5);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& row = rows[i];
        CHECK(row.x == static_cast<double>(i + 1));
        CHECK(row.jensen_bound ==
              doctest::Approx(std::pow((i + 1) * 0.2, 0.5)).epsilon(1e-14));
        CHECK(row.jensen_direction == Direction::upper);  // t in [0,1]: concave
        REQUIRE(row.oracle.has_value());
        // n=1 attains the exact moment, so allow rounding-level slack there
        CHECK(row.family_bound <= *row.oracle * (1.0 + 1e-12));
        CHECK(*row.oracle <= row.jensen_bound);
        CHECK(*row.oracle_err == 0.0);  // finite support: the sum is exact
    }
    Fig3Options bad = opt;
    bad.n_max = 0;
    CHECK_THROWS_AS(fig3_rows(bad), ConfigError);
    bad = opt;
    bad.p = 1.0;
    CHECK_THROWS_AS(fig3_rows(bad), ConfigError);
}

TEST_CASE("gap-factor sweep carries the maximizing exponent") {
    Fig4Options opt;
    opt.t_lo = 0.5;
    opt.t_hi = 1.0;
    opt.t_step = 0.25;
    const auto rows = fig4_rows(opt);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].x == 0.5);
    CHECK(rows[1].x == 0.75);
    CHECK(rows[2].x == 1.0);
    CHECK(rows[0].family_bound == doctest::Approx(0.5522140130625625).epsilon(1e-12));
    CHECK(rows[2].family_bound == doctest::Approx(0.6345931122744153).epsilon(1e-12));
    // the normalized gap closes monotonically as t grows
    CHECK(rows[0].family_bound < rows[1].family_bound);
    CHECK(rows[1].family_bound < rows[2].family_bound);
    for (const auto& row : rows) {
        CHECK(row.jensen_bound == 1.0);
        CHECK(row.family_bound <= 1.0);
        REQUIRE(row.heuristic_bound.has_value());  // maximizing s
        CHECK_FALSE(row.oracle.has_value());
    }
    // the supremum sits at the left edge of the admissible s-range
    CHECK(*rows[2].heuristic_bound == doctest::Approx((1.0 - 0.5) + 1e-9).epsilon(1e-12));

    Fig4Options bad = opt;
    bad.t_lo = 0.0;
    CHECK_THROWS_AS(fig4_rows(bad), ConfigError);
    bad = opt;
    bad.t_lo = 1.5;
    CHECK_THROWS_AS(fig4_rows(bad), ConfigError);
}

TEST_CASE("twelve significant digits, shortest form") {
    CHECK(format_sig(1.0 / 3.0) == "0.333333333333");
    CHECK(format_sig(2.0) == "2");
    CHECK(format_sig(-0.5) == "-0.5");
    CHECK(format_sig(1e-9) == "1e-09");
    CHECK(format_sig(0.6931471805599453) == "0.69314718056");
}

TEST_CASE("csv layout with and without optional columns") {
    FigureRow full;
    full.x = 1.0;
    full.jensen_bound = 0.5;
    full.jensen_direction = Direction::upper;
    full.family_bound = 0.25;
    full.heuristic_bound = 0.125;
    full.oracle = 0.3;
    full.oracle_err = 0.001;
    FigureRow sparse;
    sparse.x = 2.0;
    sparse.jensen_bound = 1.5;
    sparse.jensen_direction = Direction::lower;
    sparse.family_bound = 0.75;
    std::ostringstream out;
    write_csv(out, {full, sparse});
    CHECK(out.str() ==
          "x,jensen_bound,jensen_direction,family_bound,heuristic_bound,oracle,oracle_err\n"
          "1,0.5,upper,0.25,0.125,0.3,0.001\n"
          "2,1.5,lower,0.75,,,\n");
}

TEST_CASE("oracle columns disappear when disabled") {
    Fig2Options opt;
    opt.theta_lo = 1.0;
    opt.theta_hi = 1.5;
    opt.theta_step = 0.5;
    opt.resolution = 0.05;
    opt.with_oracle = false;
    const auto rows = fig2_rows(opt);
    REQUIRE(rows.size() == 2);
    for (const auto& row : rows) {
        CHECK_FALSE(row.oracle.has_value());
        CHECK_FALSE(row.oracle_err.has_value());
    }
    std::ostringstream out;
    write_csv(out, rows);
    const std::string text = out.str();
    // every data line ends with the three empty optional cells
    std::size_t lines = 0;
    std::size_t pos = 0;
    while ((pos = text.find(",,,\n", pos)) != std::string::npos) {
        ++lines;
        pos += 4;
    }
    CHECK(lines == 2);
}
