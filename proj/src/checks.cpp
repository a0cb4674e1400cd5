#include "jlb/checks.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>
#include <vector>

#include "jlb/bounds.hpp"
#include "jlb/distributions.hpp"
#include "jlb/errors.hpp"
#include "jlb/figures.hpp"
#include "jlb/funcs.hpp"
#include "jlb/grid.hpp"
#include "jlb/oracles.hpp"
#include "jlb/rng.hpp"

namespace jlb {

namespace {

class Registry {
public:
    void add(const std::string& id, bool pass, const std::string& detail) {
        results_.push_back({id, pass, detail});
    }

    // Runs body, recording an exception as a failure of this check.
    void guarded(const std::string& id, const std::function<void()>& body) {
        try {
            body();
        } catch (const std::exception& e) {
            add(id, false, std::string("unexpected exception: ") + e.what());
        }
    }

    std::vector<CheckResult> take() { return std::move(results_); }

private:
    std::vector<CheckResult> results_;
};

std::string num(double v) { return format_sig(v); }

bool close_rel(double a, double b, double tol) {
    return std::fabs(a - b) <= tol * std::max({1.0, std::fabs(a), std::fabs(b)});
}

// Interior sample points for a catalog function, away from the edges.
std::vector<double> domain_probe_points(const DifferentiableFunction& f, int count) {
    const double lo = std::isfinite(f.domain().lo) ? f.domain().lo : -4.0;
    const double hi = std::isfinite(f.domain().hi) ? f.domain().hi : 4.0;
    const double a = lo + 0.05 * (hi - lo);
    const double b = hi - 0.05 * (hi - lo);
    std::vector<double> pts;
    pts.reserve(count);
    for (int i = 0; i < count; ++i)
        pts.push_back(a + (b - a) * (static_cast<double>(i) + 0.5) / count);
    return pts;
}

std::vector<DifferentiableFunction> catalog_zoo() {
    return {catalog("neg_log"),
            catalog("x_log_x"),
            catalog("power", {2.0}),
            catalog("power", {0.5}),
            catalog("power", {-1.0}),
            catalog("exp_scale", {1.0}),
            catalog("exp_scale", {-0.5}),
            catalog("half_quadratic", {2.0}),
            catalog("log1p_gain", {5.0}),
            catalog("log1p_gain_squared", {5.0}),
            catalog("scaled_neg_log", {2.0})};
}

std::vector<DistributionModel> model_zoo() {
    return {gaussian(1.0, 0.5),
            exponential(2.0),
            bernoulli_sum(10, 0.2),
            geometric(0.3),
            shifted_chi_square_sum(3, 1.0),
            sample_mean_sq_error(25, 4.0),
            affine_of(exponential(1.0), 1.0, 5.0)};
}

// Window of the cumulant domain where the doubled argument also stays
// inside, so the Monte Carlo comparison has a finite-variance integrand.
std::pair<double, double> safe_cgf_window(const DistributionModel& m) {
    const Interval& d = m.cgf_domain();
    const double lo = std::isfinite(d.lo) ? 0.4 * d.lo : -2.0;
    const double hi = std::isfinite(d.hi) ? 0.4 * d.hi : 2.0;
    return {lo, hi};
}

// Mean plug-in entropy over `sims` simulated batches of N draws from P.
void simulate_plugin_entropy(const PmfTable& P, long N, std::size_t sims, std::uint64_t seed,
                             double& mean_out, double& se_out) {
    std::vector<double> cum(P.probs.size());
    double acc = 0.0;
    for (std::size_t j = 0; j < P.probs.size(); ++j) {
        acc += P.probs[j];
        cum[j] = acc;
    }
    cum.back() = 1.0;
    double mean = 0.0, m2 = 0.0;
    std::vector<long> counts(P.probs.size());
    for (std::size_t i = 0; i < sims; ++i) {
        RngStream rng(seed, 40000 + i);
        std::fill(counts.begin(), counts.end(), 0L);
        for (long d = 0; d < N; ++d) {
            const double u = rng.uniform();
            std::size_t j = 0;
            while (j + 1 < cum.size() && u > cum[j]) ++j;
            ++counts[j];
        }
        double h = 0.0;
        for (const long c : counts) {
            if (c > 0) {
                const double frac = static_cast<double>(c) / static_cast<double>(N);
                h -= frac * std::log(frac);
            }
        }
        const double delta = h - mean;
        mean += delta / static_cast<double>(i + 1);
        m2 += delta * (h - mean);
    }
    mean_out = mean;
    se_out = std::sqrt(m2 / static_cast<double>(sims - 1) / static_cast<double>(sims));
}

DistributionModel point_mass(double c) {
    // a unit point mass, shifted: exact CGF s·c
    return affine_of(geometric(1.0), 0.0, c);
}

// ---------------------------------------------------------------- properties

void check_funcs(Registry& reg) {
    reg.guarded("funcs-tangent-dominance", [&] {
        bool ok = true;
        std::ostringstream detail;
        for (const auto& f : catalog_zoo()) {
            if (f.convexity() != Convexity::convex && f.convexity() != Convexity::concave)
                continue;
            const bool convex = f.convexity() == Convexity::convex;
            const auto pts = domain_probe_points(f, 12);
            for (const double a : pts) {
                const double fa = f.value(a), da = f.deriv(a);
                for (const double x : pts) {
                    const double fx = f.value(x);
                    const double line = fa + da * (x - a);
                    const double slack = 1e-12 * (1.0 + std::fabs(fx));
                    const bool holds = convex ? fx >= line - slack : fx <= line + slack;
                    if (!holds) {
                        ok = false;
                        detail << f.name() << " fails at a=" << num(a) << " x=" << num(x) << "; ";
                    }
                }
            }
        }
        reg.add("funcs-tangent-dominance", ok,
                ok ? "tangent lines stay on the declared side for every tagged catalog entry"
                   : detail.str());
    });

    reg.guarded("funcs-tangent-exact", [&] {
        bool ok = true;
        for (const auto& f : catalog_zoo()) {
            for (const double a : domain_probe_points(f, 7)) {
                const auto line = tangent_at(f, a);
                if (line.value(a) != f.value(a)) ok = false;
            }
        }
        reg.add("funcs-tangent-exact", ok, "tangent at the touch point reproduces f(a) exactly");
    });

    reg.guarded("funcs-derivative-fd", [&] {
        bool ok = true;
        double worst = 0.0;
        std::string worst_name;
        for (const auto& f : catalog_zoo()) {
            for (const double x : domain_probe_points(f, 100)) {
                const double err = derivative_check_error(f, x);
                if (err > worst) {
                    worst = err;
                    worst_name = f.name();
                }
                if (err > 1e-5) ok = false;
            }
        }
        reg.add("funcs-derivative-fd", ok,
                "worst relative finite-difference mismatch " + num(worst) + " (" + worst_name +
                    "), tolerance 1e-05");
    });

    reg.guarded("funcs-second-derivative-sign", [&] {
        bool ok = true;
        for (const auto& f : catalog_zoo()) {
            if (!f.has_second_deriv()) continue;
            for (const double x : domain_probe_points(f, 40)) {
                const double s = f.second_deriv(x);
                if (f.convexity() == Convexity::convex && s < -1e-12) ok = false;
                if (f.convexity() == Convexity::concave && s > 1e-12) ok = false;
            }
        }
        reg.add("funcs-second-derivative-sign", ok,
                "second derivatives match the declared curvature sign on probe grids");
    });
}

void check_distributions(Registry& reg, std::uint64_t seed) {
    reg.guarded("dist-cumulants-at-zero", [&] {
        bool ok = true;
        std::ostringstream detail;
        for (const auto& m : model_zoo()) {
            const double c0 = m.cgf(0.0);
            const double c1 = m.cgf_prime(0.0) - m.mean();
            const double c2 = m.cgf_second(0.0) - m.variance();
            if (std::fabs(c0) > 1e-10 || std::fabs(c1) > 1e-10 || std::fabs(c2) > 1e-10) {
                ok = false;
                detail << m.name() << " off by (" << num(c0) << "," << num(c1) << "," << num(c2)
                       << "); ";
            }
        }
        reg.add("dist-cumulants-at-zero", ok,
                ok ? "value, slope, and curvature at 0 match (0, mean, variance) to 1e-10"
                   : detail.str());
    });

    reg.guarded("dist-cgf-convexity", [&] {
        bool ok = true;
        for (const auto& m : model_zoo()) {
            const auto [lo, hi] = safe_cgf_window(m);
            for (int i = 0; i < 50; ++i) {
                const double s = lo + (hi - lo) * (i + 0.5) / 50.0;
                if (m.cgf_second(s) < -1e-12) ok = false;
            }
        }
        reg.add("dist-cgf-convexity", ok, "second derivative of every cumulant function is >= 0");
    });

    reg.guarded("dist-cgf-derivative-fd", [&] {
        bool ok = true;
        double worst = 0.0;
        for (const auto& m : model_zoo()) {
            const auto [lo, hi] = safe_cgf_window(m);
            for (int i = 0; i < 50; ++i) {
                const double s = lo + (hi - lo) * (i + 0.5) / 50.0;
                const double step = 1e-7 * std::max(1.0, std::fabs(s));
                const double fd =
                    central_difference([&m](double u) { return m.cgf(u); }, s, step);
                const double d = m.cgf_prime(s);
                const double err = std::fabs(fd - d) / std::max({1.0, std::fabs(d), std::fabs(fd)});
                worst = std::max(worst, err);
                if (err > 1e-6) ok = false;
            }
        }
        reg.add("dist-cgf-derivative-fd", ok,
                "worst relative mismatch between the slope and its finite difference: " +
                    num(worst) + ", tolerance 1e-06");
    });

    reg.guarded("dist-mgf-vs-monte-carlo", [&] {
        bool ok = true;
        std::ostringstream detail;
        std::size_t model_index = 0;
        for (const auto& m : model_zoo()) {
            const auto [lo, hi] = safe_cgf_window(m);
            RngStream picker(seed, 500 + model_index);
            for (int i = 0; i < 100; ++i) {
                const double s = lo + (hi - lo) * picker.uniform();
                const double target = std::exp(m.cgf(s));
                const auto est = mc_expectation(
                    m, [s](double x) { return std::exp(s * x); }, 100000,
                    seed + 1000 * model_index + static_cast<std::uint64_t>(i));
                if (std::fabs(est.value - target) > 5.0 * est.uncertainty) {
                    ok = false;
                    detail << m.name() << " at s=" << num(s) << ": est " << num(est.value)
                           << " vs " << num(target) << " (se " << num(est.uncertainty) << "); ";
                }
            }
            ++model_index;
        }
        reg.add("dist-mgf-vs-monte-carlo", ok,
                ok ? "sampled exponential moments replicate exp(cgf) within 5 standard errors "
                     "(100 random s per model, 1e5 samples)"
                   : detail.str());
    });

    reg.guarded("dist-affine-composition", [&] {
        bool ok = true;
        const DistributionModel base = exponential(1.3);
        const double combos[][4] = {
            {0.5, 2.0, -1.0, -0.7}, {0.0, 1.0, 0.0, 1.0}, {2.0, -3.0, 1.0, 0.5}};
        for (const auto& c : combos) {
            const auto nested = affine_of(affine_of(base, c[0], c[1]), c[2], c[3]);
            const auto flat = affine_of(base, c[2] + c[3] * c[0], c[3] * c[1]);
            const auto [lo, hi] = safe_cgf_window(nested);
            for (int i = 0; i < 21; ++i) {
                const double s = lo + (hi - lo) * (i + 0.5) / 21.0;
                if (!close_rel(nested.cgf(s), flat.cgf(s), 1e-12)) ok = false;
                if (!close_rel(nested.cgf_prime(s), flat.cgf_prime(s), 1e-12)) ok = false;
            }
        }
        reg.add("dist-affine-composition", ok,
                "composing two affine maps matches the single combined map pointwise to 1e-12");
    });

    reg.guarded("dist-samples-in-support", [&] {
        bool ok = true;
        std::ostringstream detail;
        std::size_t model_index = 0;
        for (const auto& m : model_zoo()) {
            for (int i = 0; i < 300; ++i) {
                RngStream rng(seed, 30000 + 1000 * model_index + static_cast<std::uint64_t>(i));
                const double x = m.sample(rng);
                if (!m.support().contains_closed(x)) {
                    ok = false;
                    detail << m.name() << " sampled " << num(x) << " outside "
                           << m.support().str() << "; ";
                }
            }
            ++model_index;
        }
        reg.add("dist-samples-in-support", ok,
                ok ? "300 draws per model all fall inside the declared support" : detail.str());
    });

    reg.guarded("dist-mc-determinism", [&] {
        const auto m = shifted_chi_square_sum(4, 0.7);
        const auto h = [](double x) { return std::log(x); };
        const auto a = mc_expectation(m, h, 20000, seed);
        const auto b = mc_expectation(m, h, 20000, seed);
        const bool ok = a.value == b.value && a.uncertainty == b.uncertainty;
        reg.add("dist-mc-determinism", ok,
                "repeated estimates with one seed agree bit for bit: " + num(a.value));
    });
}

void check_oracles(Registry& reg, std::uint64_t seed) {
    reg.guarded("oracle-quadrature-basics", [&] {
        const double theta = 2.0;
        const auto dens = [theta](double z) { return theta * std::exp(-theta * z); };
        const auto one = quad_expectation(dens, Interval::positive(), [](double) { return 1.0; },
                                          1e-10);
        const auto mean =
            quad_expectation(dens, Interval::positive(), [](double z) { return z; }, 1e-10);
        bool ok = std::fabs(one.value - 1.0) <= 1e-9 && std::fabs(mean.value - 0.5) <= 1e-9;

        // cross-oracle agreement on a curved integrand
        const auto dens1 = [](double z) { return std::exp(-z); };
        const auto h = [](double z) { return std::log1p(5.0 * z); };
        const auto q = quad_expectation(dens1, Interval::positive(), h, 1e-10);
        const auto mc = mc_expectation(exponential(1.0), h, 200000, seed + 17);
        if (std::fabs(q.value - mc.value) > 5.0 * (mc.uncertainty + q.uncertainty)) ok = false;
        reg.add("oracle-quadrature-basics", ok,
                "normalization 1, mean 0.5, and sampled/quadrature agreement on ln(1+5z): " +
                    num(q.value) + " vs " + num(mc.value));
    });

    reg.guarded("oracle-discrete-basics", [&] {
        const auto ident = [](double x) { return x; };
        const auto mean5 = discrete_expectation(binomial_terms(5, 0.2), ident, 1e-15);
        bool ok = close_rel(mean5.value, 1.0, 1e-12);

        const auto g = discrete_expectation(
            geometric_terms(0.3), [](double k) { return std::pow(k, 1.5); }, 1e-10,
            geometric_power_tail(0.3, 1.5));
        if (!(g.value >= 7.486 && g.value <= 7.487)) ok = false;

        const auto unit = discrete_expectation(geometric_terms(1.0),
                                               [](double k) { return 3.0 * k; }, 1e-12);
        if (!close_rel(unit.value, 3.0, 1e-15)) ok = false;
        reg.add("oracle-discrete-basics", ok,
                "finite sums are exact; the tail-bounded series reaches " + num(g.value));
    });
}

void check_grid(Registry& reg) {
    reg.guarded("grid-known-optima", [&] {
        const auto quad = grid_max(
            [](double x) -> std::optional<double> { return -(x - 2.0) * (x - 2.0); },
            GridSpec(0.0, 10.0, 0.001));
        bool ok = std::fabs(quad.argmax - 2.0) <= 5.5e-4 && quad.max >= -1e-6;

        const auto ridge = grid_max(
            [](double a) -> std::optional<double> { return a * std::exp(-a); },
            GridSpec(0.0, 10.0, 0.001));
        if (std::fabs(ridge.argmax - 1.0) > 5.5e-4) ok = false;
        if (std::fabs(ridge.max - std::exp(-1.0)) > 1e-6) ok = false;
        reg.add("grid-known-optima", ok,
                "quadratic peak at " + num(quad.argmax) + ", exponential ridge at " +
                    num(ridge.argmax));
    });

    reg.guarded("grid-feasibility-and-refine", [&] {
        const auto gate = grid_max(
            [](double x) -> std::optional<double> {
                if (x < 5.0) return std::nullopt;
                return x;
            },
            GridSpec(0.0, 10.0, 1.0));
        bool ok = gate.argmax == 10.0 && gate.feasible_count == 6 && gate.skipped_count == 5;

        const auto objective = [](double x) -> std::optional<double> {
            return -(x - 3.14159265358979) * (x - 3.14159265358979);
        };
        const auto coarse = grid_max(objective, GridSpec(0.0, 10.0, 0.1));
        const auto refined = grid_max(objective, GridSpec(0.0, 10.0, 0.1, Refine{3, 0.1}));
        if (!(refined.max >= coarse.max)) ok = false;
        if (std::fabs(refined.argmax - 3.14159265358979) > 2e-4) ok = false;
        reg.add("grid-feasibility-and-refine", ok,
                "feasibility filter keeps " + std::to_string(gate.feasible_count) +
                    " points; refined peak " + num(refined.argmax));
    });

    reg.guarded("grid-2d", [&] {
        const auto res = grid_max_2d(
            [](double a, double b) -> std::optional<double> {
                return -(a - 1.0) * (a - 1.0) - (b - 3.0) * (b - 3.0);
            },
            GridSpec(0.0, 5.0, 0.5), GridSpec(0.0, 5.0, 0.5));
        const bool ok = res.argmax_a == 1.0 && res.argmax_b == 3.0;
        reg.add("grid-2d", ok,
                "separable quadratic peaks at (" + num(res.argmax_a) + "," + num(res.argmax_b) +
                    ")");
    });
}

void check_bounds(Registry& reg, std::uint64_t seed) {
    const GridSpec alpha_grid(0.0, 10.0, 0.001);

    reg.guarded("bounds-direction-soundness", [&] {
        bool ok = true;
        std::ostringstream detail;
        auto expect = [&](const char* what, bool cond) {
            if (!cond) {
                ok = false;
                detail << what << " violated; ";
            }
        };

        // two-outcome law on {1,2}: closed-form moments
        const auto f_neglog = catalog("neg_log");
        const auto two_point = product_convex_positive(f_neglog, 1.5, 2.5);
        expect("product bound vs exact E{-X ln X}", two_point.value <= -std::log(2.0) + 1e-12);

        const auto tilted =
            exp_tilted(catalog("half_quadratic", {2.0}), gaussian(0.0, 1.0), 1.0);
        expect("tilted bound vs exact 2*sqrt(e)",
               tilted.value <= 2.0 * std::exp(0.5) + 1e-12);

        const auto m2p = moment_two_point(1.5, 2.5, 3.0, 1.0);
        expect("two-point moment vs exact 4.5", m2p.value <= 4.5 + 1e-12);

        const auto simo = simo_capacity_lower(10, 1.0, alpha_grid);
        const auto simo_mc = mc_expectation(
            shifted_chi_square_sum(10, 1.0), [](double x) { return std::log(x); }, 100000,
            seed + 101);
        expect("receive-diversity lower vs sampled",
               simo.value <= simo_mc.value + 5.0 * simo_mc.uncertainty);
        expect("sampled vs plain upper",
               simo_mc.value <= std::log1p(10.0) + 5.0 * simo_mc.uncertainty);

        const auto snr = exp_snr_capacity_lower(1.0, 5.0, alpha_grid);
        const auto snr_quad = quad_expectation(
            [](double z) { return std::exp(-z); }, Interval::positive(),
            [](double z) { return std::log1p(5.0 * z); }, 1e-9);
        expect("snr lower vs quadrature", snr.value <= snr_quad.value + 1e-8);
        expect("quadrature vs plain upper", snr_quad.value <= std::log1p(5.0) + 1e-8);

        const auto pm = power_moment_lower_joint(bernoulli_sum(50, 0.2), 0.5,
                                                 GridSpec(0.0, 10.0, 0.01),
                                                 GridSpec(0.5, 10.0, 0.01));
        const auto pm_sum = discrete_expectation(
            binomial_terms(50, 0.2), [](double x) { return std::sqrt(x); }, 1e-15);
        expect("power-moment lower vs exact sum", pm.value <= pm_sum.value + 1e-12);
        expect("exact sum vs plain upper", pm_sum.value <= std::sqrt(10.0) + 1e-12);

        const auto eoc = exp_of_convex(catalog("half_quadratic", {1.0}), gaussian(1.0, 0.5),
                                       alpha_grid);
        expect("exp-of-convex vs closed form",
               eoc.value <= gaussian_exp_square(1.0, 0.5, 1.0).exact + 1e-12);

        const auto pec = product_exp_composition(catalog("scaled_neg_log", {1.0}),
                                                 catalog("x_log_x"),
                                                 shifted_chi_square_sum(3, 1.0), alpha_grid);
        const auto pec_mc = mc_expectation(
            shifted_chi_square_sum(3, 1.0), [](double x) { return std::log(x); }, 100000,
            seed + 102);
        expect("product-composition lower vs sampled E{ln X}",
               pec.value <= pec_mc.value + 5.0 * pec_mc.uncertainty);

        const auto cap = catalog("log1p_gain", {5.0});
        const auto second_upper =
            product_two_convex(cap, cap, 1.0, 2.0, PairOrientation::concave_pair);
        const auto second_quad = quad_expectation(
            [](double z) { return std::exp(-z); }, Interval::positive(),
            [](double z) {
                const double l = std::log1p(5.0 * z);
                return l * l;
            },
            1e-9);
        expect("concave-pair upper vs quadrature second moment",
               second_upper.value >= second_quad.value - 1e-8);

        const auto var_upper = capacity_variance_upper(1.0, 5.0, alpha_grid);
        const double var_exact =
            second_quad.value - snr_quad.value * snr_quad.value;
        expect("variance upper vs quadrature variance", var_upper.value >= var_exact - 1e-8);

        reg.add("bounds-direction-soundness", ok,
                ok ? "every lower bound sits below its oracle and every upper bound above"
                   : detail.str());
    });

    reg.guarded("bounds-jensen-reductions", [&] {
        bool ok = true;
        const auto f = catalog("neg_log");
        const auto m = exponential(0.8);
        const double at_mean = f.value(m.mean());
        if (!close_rel(product_convex_positive(f, 1.0, m.mean()).value, at_mean, 1e-12))
            ok = false;
        if (!close_rel(exp_tilted(f, m, 0.0).value, at_mean, 1e-12)) ok = false;
        if (!close_rel(moment_two_point(1.0, m.mean(), 2.0, 0.0).value,
                       m.mean() * m.mean(), 1e-12))
            ok = false;
        reg.add("bounds-jensen-reductions", ok,
                "degenerate calls reproduce the plain Jensen value to 1e-12");
    });

    reg.guarded("bounds-gauss-exp-square-ratio", [&] {
        bool ok = true;
        for (const double mu : {-2.0, 0.0, 1.0, 3.0}) {
            for (const double s2 : {0.2, 0.7, 1.5}) {
                for (const double s : {0.1, 0.3, 0.6}) {
                    if (s2 * s >= 1.0) continue;
                    const auto r = gaussian_exp_square(mu, s2, s);
                    if (!close_rel(r.exact / r.bound, 1.0 / std::sqrt(1.0 - s2 * s), 1e-12))
                        ok = false;
                }
            }
        }
        reg.add("bounds-gauss-exp-square-ratio", ok,
                "exact/bound equals (1-sigma2*s)^{-1/2} to 1e-12 across the parameter box");
    });

    reg.guarded("bounds-grid-dominance", [&] {
        bool ok = true;
        std::ostringstream detail;
        for (const int k : {1, 10, 100}) {
            const auto fine = simo_capacity_lower(k, 1.0, alpha_grid);
            const auto coarse = simo_capacity_lower(k, 1.0, GridSpec(0.0, 10.0, 0.013));
            if (!(coarse.value <= fine.value + 1e-9 * (1.0 + std::fabs(fine.value)))) {
                ok = false;
                detail << "k=" << k << " coarse exceeds fine; ";
            }
            const double heuristic = *fine.optimizer_value("heuristic_value");
            if (!(heuristic <= fine.value)) {
                ok = false;
                detail << "k=" << k << " heuristic exceeds reported value; ";
            }
        }
        const auto mu_fine = gap_factor_mu(1.0, GridSpec(0.5 + 1e-9, 10.0, 0.001));
        const auto mu_coarse = gap_factor_mu(1.0, GridSpec(0.5 + 1e-9, 10.0, 0.017));
        if (!(mu_coarse.mu_t <= mu_fine.mu_t + 1e-9)) {
            ok = false;
            detail << "gap factor coarse exceeds fine; ";
        }
        reg.add("bounds-grid-dominance", ok,
                ok ? "reported suprema dominate coarser sub-searches and the closed-form points"
                   : detail.str());
    });

    reg.guarded("bounds-point-mass-equality", [&] {
        bool ok = true;
        std::ostringstream detail;
        for (const double c : {2.0, 10.0}) {
            const auto res = log_expectation_lower(point_mass(c), alpha_grid);
            const double target = std::log(c);
            if (std::fabs(res.value - target) > 0.001 * std::fabs(target) + 1e-6) {
                ok = false;
                detail << "log-expectation at point mass " << num(c) << " returned "
                       << num(res.value) << "; ";
            }
        }
        const auto cap = catalog("log1p_gain", {5.0});
        const double x0 = 1.7;
        const auto pt =
            product_two_convex(cap, cap, x0, x0 * x0, PairOrientation::concave_pair);
        const double exact = cap.value(x0) * cap.value(x0);
        if (!close_rel(pt.value, exact, 1e-12)) {
            ok = false;
            detail << "two-function product at a point mass returned " << num(pt.value)
                   << " vs " << num(exact) << "; ";
        }
        const auto eoc = exp_of_convex(catalog("half_quadratic", {1.0}), point_mass(1.5),
                                       GridSpec(0.0, 10.0, 0.001));
        const double eoc_exact = std::exp(0.5 * 1.5 * 1.5);
        if (std::fabs(eoc.value - eoc_exact) > 1e-4 * eoc_exact) {
            ok = false;
            detail << "exp-of-convex at a point mass returned " << num(eoc.value) << " vs "
                   << num(eoc_exact) << "; ";
        }
        reg.add("bounds-point-mass-equality", ok,
                ok ? "deterministic inputs attain the exact expectation within grid resolution"
                   : detail.str());
    });

    reg.guarded("bounds-entropy-b1-b2", [&] {
        bool ok = true;
        RngStream rng(seed, 888);
        for (int trial = 0; trial < 6; ++trial) {
            const int m = 2 + trial;
            std::vector<double> probs(m);
            double total = 0.0;
            for (auto& p : probs) {
                p = 0.05 + rng.uniform();
                total += p;
            }
            double running = 0.0;
            for (std::size_t j = 0; j + 1 < probs.size(); ++j) {
                probs[j] /= total;
                running += probs[j];
            }
            probs.back() = 1.0 - running;  // exact unit sum
            std::vector<std::string> letters(m);
            for (int j = 0; j < m; ++j) letters[j] = std::string(1, static_cast<char>('a' + j));
            const PmfTable table(letters, probs);
            const auto [b1, b2] = empirical_entropy_lower(table, 40 + 10 * trial);
            if (!(b1 >= b2 - 1e-15)) ok = false;
            if (!(b1 <= table.entropy() + 1e-15)) ok = false;
        }
        double sim_mean = 0.0, sim_se = 0.0;
        const PmfTable table({"a", "b"}, {0.3, 0.7});
        const auto [b1, b2] = empirical_entropy_lower(table, 50);
        simulate_plugin_entropy(table, 50, 10000, seed, sim_mean, sim_se);
        if (!(sim_mean >= b1 - 3.0 * sim_se)) ok = false;
        if (!(sim_mean <= table.entropy() + 3.0 * sim_se)) ok = false;
        reg.add("bounds-entropy-b1-b2", ok,
                "B1 >= B2 on random tables; simulated mean plug-in entropy " + num(sim_mean) +
                    " respects [B1 - 3se, H + 3se] = [" + num(b1 - 3.0 * sim_se) + ", " +
                    num(table.entropy() + 3.0 * sim_se) + "]");
    });

    reg.guarded("bounds-concentration-tightening", [&] {
        const auto f = catalog("half_quadratic", {1.0});
        double prev_gap = 2.0;
        bool ok = true;
        std::ostringstream gaps;
        for (const double s2 : {0.5, 0.05, 0.005}) {
            const auto b = exp_of_convex(f, gaussian(1.0, s2), alpha_grid);
            const double exact = gaussian_exp_square(1.0, s2, 1.0).exact;
            const double gap = (exact - b.value) / exact;
            gaps << num(gap) << " ";
            if (!(gap < prev_gap)) ok = false;
            prev_gap = gap;
        }
        reg.add("bounds-concentration-tightening", ok,
                "relative gap shrinks as the law concentrates: " + gaps.str());
    });

    reg.guarded("csv-determinism", [&] {
        Fig2Options f2;
        f2.theta_lo = 0.5;
        f2.theta_hi = 1.5;
        f2.theta_step = 0.5;
        f2.resolution = 0.01;
        std::ostringstream a, b;
        write_csv(a, fig2_rows(f2));
        write_csv(b, fig2_rows(f2));
        bool ok = a.str() == b.str();

        Fig4Options f4;
        f4.t_lo = 0.5;
        f4.t_hi = 1.0;
        f4.t_step = 0.25;
        f4.s_resolution = 0.01;
        std::ostringstream c, d;
        write_csv(c, fig4_rows(f4));
        write_csv(d, fig4_rows(f4));
        if (c.str() != d.str()) ok = false;
        reg.add("csv-determinism", ok, "regenerated sweeps are byte-identical in process");
    });
}

}  // namespace

std::vector<CheckResult> run_property_checks(std::uint64_t seed) {
    Registry reg;
    check_funcs(reg);
    check_distributions(reg, seed);
    check_oracles(reg, seed);
    check_grid(reg);
    check_bounds(reg, seed);
    return reg.take();
}

namespace {

using Clock = std::chrono::steady_clock;

// True while the elapsed time since `start` is under the stated budget.
// The measured time is never printed, so reports stay byte-stable.
bool budget_ok(Clock::time_point start, double seconds) {
    return std::chrono::duration<double>(Clock::now() - start).count() < seconds;
}

void acceptance_a1(Registry& reg, bool inject_failure) {
    reg.guarded("A1", [&] {
        const auto t0 = Clock::now();
        const double tol = inject_failure ? 0.0 : 1e-12;
        bool ok = true;
        std::ostringstream detail;
        for (const double mu : {-2.0, -0.5, 0.0, 1.0, 3.0}) {
            for (const double s2 : {0.1, 0.2, 0.4, 0.8, 1.6}) {
                for (const double s : {0.05, 0.1, 0.2, 0.4, 0.55}) {
                    if (s2 * s >= 1.0) continue;
                    const auto r = gaussian_exp_square(mu, s2, s);
                    const double ratio = r.bound / r.exact;
                    const double target = std::sqrt(1.0 - s2 * s);
                    if (std::fabs(ratio - target) > tol * std::max(1.0, target)) {
                        ok = false;
                        detail << "ratio off at mu=" << num(mu) << " s2=" << num(s2)
                               << " s=" << num(s) << ": " << num(ratio) << " vs "
                               << num(target) << "; ";
                    }
                }
            }
        }
        const auto pinned = gaussian_exp_square(1.0, 0.5, 1.0);
        if (!close_rel(pinned.bound, std::exp(1.0), tol) ||
            !close_rel(pinned.exact, std::sqrt(2.0) * std::exp(1.0), tol)) {
            ok = false;
            detail << "pinned case returned bound " << num(pinned.bound) << ", exact "
                   << num(pinned.exact) << "; ";
        }
        if (!budget_ok(t0, 1.0)) {
            ok = false;
            detail << "runtime budget (1 s) exceeded; ";
        }
        reg.add("A1", ok,
                ok ? "closed-form Gaussian bound/exact ratio equals sqrt(1-sigma2*s) to 1e-12 "
                     "across the grid; pinned case (e, sqrt(2)e) matches"
                   : detail.str());
    });
}

void acceptance_a2(Registry& reg, std::uint64_t seed) {
    reg.guarded("A2", [&] {
        const auto t0 = Clock::now();
        bool ok = true;
        std::ostringstream detail;
        const GridSpec grid(0.0, 10.0, 0.001);
        for (const int k : {1, 10, 100}) {
            const auto bound = simo_capacity_lower(k, 1.0, grid);
            const auto mc = mc_expectation(
                shifted_chi_square_sum(k, 1.0), [](double x) { return std::log(x); },
                1000000, seed + static_cast<std::uint64_t>(k));
            const double se = mc.uncertainty;
            const double upper = std::log1p(static_cast<double>(k));
            if (!(bound.value <= mc.value + 5.0 * se)) {
                ok = false;
                detail << "k=" << k << ": lower " << num(bound.value) << " exceeds sampled "
                       << num(mc.value) << " + 5se; ";
            }
            if (!(mc.value + 5.0 * se <= upper + 5.0 * se)) {
                ok = false;
                detail << "k=" << k << ": sampled " << num(mc.value) << " exceeds upper "
                       << num(upper) << "; ";
            }
            const double heuristic = *bound.optimizer_value("heuristic_value");
            const double gap = std::fabs(heuristic - bound.value);
            if (!(gap <= 0.02 * bound.value)) {
                ok = false;
                detail << "k=" << k << ": closed-form candidate " << num(heuristic)
                       << " is " << num(100.0 * gap / bound.value)
                       << "% away from the optimized value " << num(bound.value)
                       << " (allowed 2%); ";
            }
        }
        if (!budget_ok(t0, 60.0)) {
            ok = false;
            detail << "runtime budget (60 s) exceeded; ";
        }
        reg.add("A2", ok,
                ok ? "diversity-order sweep: lower <= sampled + 5se <= upper + 5se and the "
                     "closed-form candidate is within 2% at k in {1,10,100}"
                   : detail.str());
    });
}

void acceptance_a3(Registry& reg) {
    reg.guarded("A3", [&] {
        const auto t0 = Clock::now();
        bool ok = true;
        std::ostringstream detail;
        const GridSpec grid(0.0, 10.0, 0.001);
        for (const double theta : {0.2, 1.0, 5.0}) {
            const auto bound = exp_snr_capacity_lower(theta, 5.0, grid);
            const auto q = quad_expectation(
                [theta](double z) { return theta * std::exp(-theta * z); },
                Interval::positive(), [](double z) { return std::log1p(5.0 * z); }, 1e-8);
            const double upper = std::log1p(5.0 / theta);
            if (!(bound.value <= q.value && q.value <= upper)) {
                ok = false;
                detail << "theta=" << num(theta) << ": " << num(bound.value) << " vs "
                       << num(q.value) << " vs " << num(upper) << "; ";
            }
        }
        if (!budget_ok(t0, 10.0)) {
            ok = false;
            detail << "runtime budget (10 s) exceeded; ";
        }
        reg.add("A3", ok,
                ok ? "faded-capacity chain lower <= quadrature <= ln(1+gain/theta) holds at "
                     "theta in {0.2,1,5}"
                   : detail.str());
    });
}

void acceptance_a4(Registry& reg) {
    reg.guarded("A4", [&] {
        const auto t0 = Clock::now();
        bool ok = true;
        std::ostringstream detail;
        double gap10 = 0.0, gap100 = 0.0;
        for (const int n : {10, 50, 100}) {
            const auto model = bernoulli_sum(n, 0.2);
            const auto bound = power_moment_lower_joint(model, 0.5, GridSpec(0.0, 10.0, 0.01),
                                                        GridSpec(0.5, 10.0, 0.01));
            const auto exact = discrete_expectation(
                binomial_terms(n, 0.2), [](double x) { return std::sqrt(x); }, 1e-15);
            const double upper = std::sqrt(0.2 * n);
            if (!(bound.value <= exact.value && exact.value <= upper)) {
                ok = false;
                detail << "n=" << n << ": chain " << num(bound.value) << " <= "
                       << num(exact.value) << " <= " << num(upper) << " broken; ";
            }
            const double gap = (exact.value - bound.value) / exact.value;
            if (n == 10) gap10 = gap;
            if (n == 100) gap100 = gap;
        }
        if (!(gap100 < gap10)) {
            ok = false;
            detail << "relative gap failed to shrink: " << num(gap10) << " -> " << num(gap100)
                   << "; ";
        }
        if (!budget_ok(t0, 60.0)) {
            ok = false;
            detail << "runtime budget (60 s) exceeded; ";
        }
        reg.add("A4", ok,
                ok ? "square-root moment chain holds at n in {10,50,100} and the relative gap "
                     "shrinks from " + num(gap10) + " to " + num(gap100)
                   : detail.str());
    });
}

void acceptance_a5(Registry& reg) {
    reg.guarded("A5", [&] {
        bool ok = true;
        std::ostringstream detail;
        const auto at2 = gap_factor_mu(2.0, GridSpec(1e-9, 10.0, 0.001));
        if (!(std::fabs(at2.mu_t - 1.0) <= 1e-3)) {
            ok = false;
            detail << "mu at t=2 is " << num(at2.mu_t) << ", not within 1e-3 of 1; ";
        }
        for (int i = 0; i <= 190; ++i) {
            const double t = 0.1 + 0.01 * i;
            const auto r = gap_factor_mu(t, GridSpec(1.0 - t / 2.0 + 1e-9, 10.0, 0.001));
            if (!(r.mu_t <= 1.0)) {
                ok = false;
                detail << "mu exceeds 1 at t=" << num(t) << ": " << num(r.mu_t) << "; ";
                break;
            }
        }
        reg.add("A5", ok,
                ok ? "gap factor stays <= 1 across t in [0.1,2] and reaches " + num(at2.mu_t) +
                         " at t=2"
                   : detail.str());
    });
}

void acceptance_a6(Registry& reg, std::uint64_t seed) {
    reg.guarded("A6", [&] {
        const auto t0 = Clock::now();
        bool ok = true;
        std::ostringstream detail;
        const PmfTable table({"a", "b"}, {0.3, 0.7});
        const long N = 100;
        const auto [b1, b2] = empirical_entropy_lower(table, N);
        const double H = table.entropy();
        double mean = 0.0, se = 0.0;
        simulate_plugin_entropy(table, N, 100000, seed, mean, se);
        if (!(mean >= b1 - 3.0 * se)) {
            ok = false;
            detail << "simulated mean " << num(mean) << " fell below B1 " << num(b1)
                   << " - 3se; ";
        }
        if (!(b1 >= b2)) {
            ok = false;
            detail << "B1 " << num(b1) << " < B2 " << num(b2) << "; ";
        }
        if (b2 != H - (2.0 - 1.0) / static_cast<double>(N)) {
            ok = false;
            detail << "B2 " << num(b2) << " differs from H - (m-1)/N = "
                   << num(H - (2.0 - 1.0) / static_cast<double>(N)) << "; ";
        }
        if (!(mean <= H + 3.0 * se)) {
            ok = false;
            detail << "simulated mean " << num(mean) << " exceeds H " << num(H) << " + 3se; ";
        }
        if (!budget_ok(t0, 30.0)) {
            ok = false;
            detail << "runtime budget (30 s) exceeded; ";
        }
        reg.add("A6", ok,
                ok ? "entropy-estimate chain B2 <= B1 <= simulated mean <= H holds with "
                     "3-standard-error slack (mean " + num(mean) + ", B1 " + num(b1) + ")"
                   : detail.str());
    });
}

void acceptance_a7(Registry& reg) {
    reg.guarded("A7", [&] {
        const auto t0 = Clock::now();
        bool ok = true;
        std::ostringstream detail;
        for (const double p : {0.1, 0.3, 0.7}) {
            for (const double s : {1.2, 1.5, 1.9}) {
                const double bound = guessing_moment_lower(p, s);
                const auto sum = discrete_expectation(
                    geometric_terms(p), [s](double k) { return std::pow(k, s); }, 1e-10,
                    geometric_power_tail(p, s));
                if (!(bound <= sum.value)) {
                    ok = false;
                    detail << "p=" << num(p) << " s=" << num(s) << ": " << num(bound)
                           << " > " << num(sum.value) << "; ";
                }
            }
        }
        for (const double p : {0.1, 0.3, 0.7}) {
            const double bound = guessing_moment_lower(p, 1.0);
            if (std::fabs(bound - 1.0 / p) > 1e-12 / p) {
                ok = false;
                detail << "s=1 value at p=" << num(p) << " is " << num(bound)
                       << ", expected " << num(1.0 / p) << "; ";
            }
        }
        if (!budget_ok(t0, 5.0)) {
            ok = false;
            detail << "runtime budget (5 s) exceeded; ";
        }
        reg.add("A7", ok,
                ok ? "guessing-moment values sit below the exact series for s in (1,2) and "
                     "match 1/p at s=1"
                   : detail.str());
    });
}

void acceptance_a8(Registry& reg, std::uint64_t seed) {
    reg.guarded("A8", [&] {
        bool ok = true;
        std::ostringstream detail;
        RngStream rng(seed, 9000);
        for (int trial = 0; trial < 20; ++trial) {
            DistributionModel model = [&]() -> DistributionModel {
                switch (trial % 5) {
                    case 0: return exponential(0.5 + 2.5 * rng.uniform());
                    case 1: return gaussian(0.5 + 2.5 * rng.uniform(),
                                            0.2 + 1.8 * rng.uniform());
                    case 2: return shifted_chi_square_sum(
                                1 + static_cast<int>(4.0 * rng.uniform()),
                                0.3 + 1.2 * rng.uniform());
                    case 3: return geometric(0.2 + 0.7 * rng.uniform());
                    default: return bernoulli_sum(2 + static_cast<int>(18.0 * rng.uniform()),
                                                  0.1 + 0.8 * rng.uniform());
                }
            }();
            DifferentiableFunction f = [&]() -> DifferentiableFunction {
                switch (trial % 4) {
                    case 0: return catalog("neg_log");
                    case 1: return catalog("x_log_x");
                    case 2: return catalog("power", {1.0 + 2.0 * rng.uniform()});
                    default: return catalog("half_quadratic", {0.1 + 2.9 * rng.uniform()});
                }
            }();
            const double mean = model.mean();
            const double at_mean = f.value(mean);
            const auto prod = product_convex_positive(f, 1.0, mean);
            if (!close_rel(prod.value, at_mean, 1e-12)) {
                ok = false;
                detail << "trial " << trial << ": product form gave " << num(prod.value)
                       << " vs f(mean) " << num(at_mean) << "; ";
            }
            const auto tilt = exp_tilted(f, model, 0.0);
            if (!close_rel(tilt.value, at_mean, 1e-12)) {
                ok = false;
                detail << "trial " << trial << ": zero-tilt gave " << num(tilt.value)
                       << " vs f(mean) " << num(at_mean) << "; ";
            }
            const double s_pick = (trial % 3 == 0) ? 1.5 : (trial % 3 == 1 ? 2.0 : -0.7);
            const auto m2p = moment_two_point(1.0, mean, s_pick, 0.0);
            if (!close_rel(m2p.value, std::pow(mean, s_pick), 1e-12)) {
                ok = false;
                detail << "trial " << trial << ": interpolated moment gave " << num(m2p.value)
                       << " vs " << num(std::pow(mean, s_pick)) << "; ";
            }
        }
        reg.add("A8", ok,
                ok ? "20 randomized degenerate calls all collapse to the plain Jensen value "
                     "f(mean) within 1e-12"
                   : detail.str());
    });
}

void acceptance_a9(Registry& reg) {
    reg.guarded("A9", [&] {
        bool ok = true;
        std::ostringstream detail;
        for (const double c : {2.0, std::exp(1.0), 10.0}) {
            const auto res = log_expectation_lower(point_mass(c), GridSpec(0.0, 10.0, 0.001));
            const double target = std::log(c);
            const double err = std::fabs(res.value - target);
            if (!(err <= 0.001 * std::fabs(target) + 1e-6)) {
                ok = false;
                detail << "c=" << num(c) << ": value " << num(res.value) << " vs ln c "
                       << num(target) << " (err " << num(err) << "); ";
            }
        }
        reg.add("A9", ok,
                ok ? "log-expectation bound recovers ln c at point masses c in {2, e, 10} "
                     "within grid resolution"
                   : detail.str());
    });
}

void acceptance_a10(Registry& reg) {
    reg.guarded("A10", [&] {
        const auto t0 = Clock::now();
        bool ok = true;
        std::ostringstream detail;
        const GridSpec grid(0.0, 10.0, 0.001);
        const auto var_upper = capacity_variance_upper(1.0, 5.0, grid);
        const auto second_quad = quad_expectation(
            [](double z) { return std::exp(-z); }, Interval::positive(),
            [](double z) {
                const double l = std::log1p(5.0 * z);
                return l * l;
            },
            1e-8);
        const auto mean_quad = quad_expectation(
            [](double z) { return std::exp(-z); }, Interval::positive(),
            [](double z) { return std::log1p(5.0 * z); }, 1e-8);
        const double second_upper = *var_upper.optimizer_value("second_moment_upper");
        const double var_exact = second_quad.value - mean_quad.value * mean_quad.value;
        if (!(second_upper >= second_quad.value)) {
            ok = false;
            detail << "second-moment upper " << num(second_upper) << " < quadrature "
                   << num(second_quad.value) << "; ";
        }
        if (!(var_upper.value >= var_exact)) {
            ok = false;
            detail << "variance upper " << num(var_upper.value) << " < quadrature variance "
                   << num(var_exact) << "; ";
        }
        if (!budget_ok(t0, 10.0)) {
            ok = false;
            detail << "runtime budget (10 s) exceeded; ";
        }
        reg.add("A10", ok,
                ok ? "log-gain second moment upper " + num(second_upper) +
                         " >= " + num(second_quad.value) + " and variance upper " +
                         num(var_upper.value) + " >= " + num(var_exact)
                   : detail.str());
    });
}

void acceptance_a11(Registry& reg) {
    reg.guarded("A11", [&] {
        const auto f = catalog("half_quadratic", {1.0});
        const GridSpec grid(0.0, 10.0, 0.001);
        bool ok = true;
        double prev = 2.0;
        std::ostringstream gaps;
        for (const double s2 : {0.5, 0.05, 0.005}) {
            const auto b = exp_of_convex(f, gaussian(1.0, s2), grid);
            const double exact = gaussian_exp_square(1.0, s2, 1.0).exact;
            const double gap = (exact - b.value) / exact;
            gaps << num(gap) << " ";
            if (!(gap < prev)) ok = false;
            prev = gap;
        }
        reg.add("A11", ok,
                (ok ? std::string("relative gap strictly decreases as variance shrinks: ")
                    : std::string("relative gap failed to decrease: ")) +
                    gaps.str());
    });
}

void acceptance_a12(Registry& reg, std::uint64_t seed) {
    reg.guarded("A12", [&] {
        bool ok = true;
        std::ostringstream detail;

        Fig1Options f1;
        f1.k_max = 3;
        f1.samples = 2000;
        f1.resolution = 0.01;
        f1.seed = seed;
        std::ostringstream a1, b1;
        write_csv(a1, fig1_rows(f1));
        write_csv(b1, fig1_rows(f1));
        if (a1.str() != b1.str()) {
            ok = false;
            detail << "diversity sweep differed between regenerations; ";
        }

        Fig2Options f2;
        f2.theta_lo = 0.5;
        f2.theta_hi = 1.5;
        f2.theta_step = 0.5;
        f2.resolution = 0.01;
        std::ostringstream a2, b2;
        write_csv(a2, fig2_rows(f2));
        write_csv(b2, fig2_rows(f2));
        if (a2.str() != b2.str()) {
            ok = false;
            detail << "snr sweep differed between regenerations; ";
        }

        Fig4Options f4;
        f4.t_lo = 0.5;
        f4.t_hi = 1.0;
        f4.t_step = 0.25;
        f4.s_resolution = 0.01;
        std::ostringstream a4, b4;
        write_csv(a4, fig4_rows(f4));
        write_csv(b4, fig4_rows(f4));
        if (a4.str() != b4.str()) {
            ok = false;
            detail << "gap-factor sweep differed between regenerations; ";
        }

        reg.add("A12", ok,
                ok ? "regenerated CSV sweeps are byte-identical in process (the test harness "
                     "additionally compares full subprocess runs)"
                   : detail.str());
    });
}

}  // namespace

std::vector<CheckResult> run_acceptance_checks(std::uint64_t seed, bool inject_failure) {
    Registry reg;
    acceptance_a1(reg, inject_failure);
    acceptance_a2(reg, seed);
    acceptance_a3(reg);
    acceptance_a4(reg);
    acceptance_a5(reg);
    acceptance_a6(reg, seed);
    acceptance_a7(reg);
    acceptance_a8(reg, seed);
    acceptance_a9(reg);
    acceptance_a10(reg);
    acceptance_a11(reg);
    acceptance_a12(reg, seed);
    return reg.take();
}

}  // namespace jlb
