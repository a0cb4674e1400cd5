#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "jlb/bounds.hpp"

namespace jlb {

// One row of a figure sweep: the x-coordinate (k, θ, n, or t), the plain
// Jensen bound with its direction, the family bound, and optional heuristic
// and oracle columns.
struct FigureRow {
    double x = 0.0;
    double jensen_bound = 0.0;
    Direction jensen_direction = Direction::upper;
    double family_bound = 0.0;
    std::optional<double> heuristic_bound;
    std::optional<double> oracle;
    std::optional<double> oracle_err;
};

// Channels with k receive antennas: capacity bounds vs k.
struct Fig1Options {
    double sigma2 = 1.0;
    int k_max = 100;
    double resolution = 0.001;
    double alpha_max = 10.0;
    std::size_t samples = 1'000'000;
    std::uint64_t seed = 1;
    bool with_oracle = true;
};
std::vector<FigureRow> fig1_rows(const Fig1Options& opt);

// Exponentially distributed SNR: capacity bounds vs the rate θ.
struct Fig2Options {
    double gain = 5.0;
    double theta_lo = 0.1;
    double theta_hi = 5.0;
    double theta_step = 0.05;
    double resolution = 0.001;
    double alpha_max = 10.0;
    double quad_tol = 1e-8;
    bool with_oracle = true;
};
std::vector<FigureRow> fig2_rows(const Fig2Options& opt);

// Fractional moment of a Bernoulli sum: bounds vs n.
struct Fig3Options {
    double p = 0.2;
    int n_max = 100;
    double t = 0.5;
    double resolution = 0.01;
    double alpha_max = 10.0;
    double s_lo = 0.5;
    double s_hi = 10.0;
    bool with_oracle = true;
};
std::vector<FigureRow> fig3_rows(const Fig3Options& opt);

// Gap factor μ_t vs t.  Per row: jensen_bound is the normalized ceiling 1,
// family_bound is μ_t, and the heuristic column carries the maximizing s.
struct Fig4Options {
    double t_lo = 0.1;
    double t_hi = 2.0;
    double t_step = 0.01;
    double s_resolution = 0.001;
    double s_max = 10.0;
};
std::vector<FigureRow> fig4_rows(const Fig4Options& opt);

// Formats v with 12 significant digits.
std::string format_sig(double v);

// Writes the header and rows; optional fields render as empty cells.
void write_csv(std::ostream& out, const std::vector<FigureRow>& rows);

}  // namespace jlb
