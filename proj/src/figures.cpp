#include "jlb/figures.hpp"

#include <cmath>
#include <cstdio>

#include "jlb/errors.hpp"
#include "jlb/oracles.hpp"

namespace jlb {

std::vector<FigureRow> fig1_rows(const Fig1Options& opt) {
    if (opt.k_max < 1) throw ConfigError("fig1: k_max must be >= 1");
    const GridSpec grid(0.0, opt.alpha_max, opt.resolution);
    std::vector<FigureRow> rows;
    rows.reserve(opt.k_max);
    for (int k = 1; k <= opt.k_max; ++k) {
        const BoundResult lower = simo_capacity_lower(k, opt.sigma2, grid);
        FigureRow row;
        row.x = k;
        row.jensen_bound = std::log1p(k * opt.sigma2);
        row.jensen_direction = Direction::upper;
        row.family_bound = lower.value;
        row.heuristic_bound = lower.optimizer_value("heuristic_value");
        if (opt.with_oracle) {
            const DistributionModel model = shifted_chi_square_sum(k, opt.sigma2);
            const OracleEstimate est =
                mc_expectation(model, [](double x) { return std::log(x); }, opt.samples,
                               opt.seed + static_cast<std::uint64_t>(k));
            row.oracle = est.value;
            row.oracle_err = est.uncertainty;
        }
        rows.push_back(row);
    }
    return rows;
}

std::vector<FigureRow> fig2_rows(const Fig2Options& opt) {
    if (!(opt.theta_lo > 0.0 && opt.theta_lo < opt.theta_hi))
        throw ConfigError("fig2: need 0 < theta_lo < theta_hi");
    const GridSpec grid(0.0, opt.alpha_max, opt.resolution);
    std::vector<FigureRow> rows;
    const auto n = static_cast<std::size_t>(
        std::floor((opt.theta_hi - opt.theta_lo) / opt.theta_step * (1.0 + 1e-12)));
    for (std::size_t i = 0; i <= n; ++i) {
        double theta = opt.theta_lo + static_cast<double>(i) * opt.theta_step;
        if (theta > opt.theta_hi) theta = opt.theta_hi;
        const BoundResult lower = exp_snr_capacity_lower(theta, opt.gain, grid);
        FigureRow row;
        row.x = theta;
        row.jensen_bound = std::log1p(opt.gain / theta);
        row.jensen_direction = Direction::upper;
        row.family_bound = lower.value;
        if (opt.with_oracle) {
            const double g = opt.gain;
            const OracleEstimate est = quad_expectation(
                [theta](double z) { return theta * std::exp(-theta * z); },
                Interval::positive(), [g](double z) { return std::log1p(g * z); }, opt.quad_tol);
            row.oracle = est.value;
            row.oracle_err = est.uncertainty;
        }
        rows.push_back(row);
    }
    return rows;
}

std::vector<FigureRow> fig3_rows(const Fig3Options& opt) {
    if (opt.n_max < 1) throw ConfigError("fig3: n_max must be >= 1");
    if (!(opt.p > 0.0 && opt.p < 1.0)) throw ConfigError("fig3: p must be in (0,1)");
    const GridSpec alpha_grid(0.0, opt.alpha_max, opt.resolution);
    const GridSpec s_grid(opt.s_lo, opt.s_hi, opt.resolution);
    std::vector<FigureRow> rows;
    rows.reserve(opt.n_max);
    for (int n = 1; n <= opt.n_max; ++n) {
        const DistributionModel model = bernoulli_sum(n, opt.p);
        const BoundResult lower = power_moment_lower_joint(model, opt.t, alpha_grid, s_grid);
        FigureRow row;
        row.x = n;
        row.jensen_bound = std::pow(n * opt.p, opt.t);
        row.jensen_direction =
            (opt.t >= 0.0 && opt.t <= 1.0) ? Direction::upper : Direction::lower;
        row.family_bound = lower.value;
        if (opt.with_oracle) {
            const double t = opt.t;
            const OracleEstimate est = discrete_expectation(
                binomial_terms(n, opt.p), [t](double x) { return std::pow(x, t); }, 1e-15);
            row.oracle = est.value;
            row.oracle_err = est.uncertainty;
        }
        rows.push_back(row);
    }
    return rows;
}

std::vector<FigureRow> fig4_rows(const Fig4Options& opt) {
    if (!(opt.t_lo > 0.0 && opt.t_lo <= opt.t_hi))
        throw ConfigError("fig4: need 0 < t_lo <= t_hi <= 2");
    std::vector<FigureRow> rows;
    const auto n = static_cast<std::size_t>(
        std::floor((opt.t_hi - opt.t_lo) / opt.t_step * (1.0 + 1e-12)));
    for (std::size_t i = 0; i <= n; ++i) {
        double t = opt.t_lo + static_cast<double>(i) * opt.t_step;
        if (t > opt.t_hi) t = opt.t_hi;
        // the s-range is open on the left with the supremum at the edge;
        // start a hair inside so the edge value is still captured
        const double s_lo = (1.0 - 0.5 * t) + 1e-9;
        const GapFactor gf = gap_factor_mu(t, GridSpec(s_lo, opt.s_max, opt.s_resolution));
        FigureRow row;
        row.x = t;
        row.jensen_bound = 1.0;  // the gap factor is relative to the plain Jensen ceiling
        row.jensen_direction = Direction::upper;
        row.family_bound = gf.mu_t;
        row.heuristic_bound = gf.s_star;  // maximizing s, for reference
        rows.push_back(row);
    }
    return rows;
}

std::string format_sig(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void write_csv(std::ostream& out, const std::vector<FigureRow>& rows) {
    out << "x,jensen_bound,jensen_direction,family_bound,heuristic_bound,oracle,oracle_err\n";
    for (const FigureRow& row : rows) {
        out << format_sig(row.x) << ',' << format_sig(row.jensen_bound) << ','
            << to_string(row.jensen_direction) << ',' << format_sig(row.family_bound) << ',';
        if (row.heuristic_bound) out << format_sig(*row.heuristic_bound);
        out << ',';
        if (row.oracle) out << format_sig(*row.oracle);
        out << ',';
        if (row.oracle_err) out << format_sig(*row.oracle_err);
        out << '\n';
    }
}

}  // namespace jlb
