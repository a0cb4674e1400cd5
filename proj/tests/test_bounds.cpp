#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <string>

#include "jlb/bounds.hpp"
#include "jlb/distributions.hpp"
#include "jlb/errors.hpp"
#include "jlb/funcs.hpp"
#include "jlb/grid.hpp"
#include "jlb/oracles.hpp"

using namespace jlb;

namespace {

const double kE = 2.718281828459045;

DistributionModel point_mass(double c) {
    // degenerate geometric shifted to sit at c
    return affine_of(geometric(1.0), c - 1.0, 1.0);
}

DifferentiableFunction constant_one() {
    return DifferentiableFunction(
        "one", [](double) { return 1.0; }, [](double) { return 0.0; }, Interval::all(),
        Convexity::convex, [](double) { return 0.0; });
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("bound result helpers") {
    BoundResult r;
    r.optimizer = {{"alpha", 0.25}};
    r.validity = {{"cond", true}};
    CHECK(r.valid());
    CHECK(r.optimizer_value("alpha") == 0.25);
    CHECK_FALSE(r.optimizer_value("beta").has_value());
    r.validity.push_back({"other", false});
    CHECK_FALSE(r.valid());
    CHECK(std::string(to_string(Direction::lower)) == "lower");
    CHECK(std::string(to_string(Direction::upper)) == "upper");
}

TEST_CASE("pmf table validation and entropy") {
    CHECK_THROWS_AS(PmfTable({}, {}), ConfigError);
    CHECK_THROWS_AS(PmfTable({"a", "b"}, {1.0}), ConfigError);
    CHECK_THROWS_AS(PmfTable({"a", "b"}, {1.5, -0.5}), ConfigError);
    CHECK_THROWS_AS(PmfTable({"a", "b"}, {0.6, 0.6}), ConfigError);
    const PmfTable fair({"a", "b"}, {0.5, 0.5});
    CHECK(fair.entropy() == doctest::Approx(0.6931471805599453).epsilon(1e-14));
    const PmfTable with_zero({"a", "b", "c"}, {0.5, 0.5, 0.0});
    CHECK(with_zero.entropy() == doctest::Approx(0.6931471805599453).epsilon(1e-14));
}

TEST_CASE("convex-positive product bound") {
    const auto r = product_convex_positive(catalog("neg_log"), 1.4, 3.0);
    CHECK(r.value == doctest::Approx(-1.0669960728656553).epsilon(1e-13));
    CHECK(*r.optimizer_value("a_star") == doctest::Approx(2.142857142857143).epsilon(1e-14));
    CHECK(r.direction == Direction::lower);
    CHECK(r.family == "product_convex_positive");
    CHECK(r.valid());

    // g ≡ 1 collapses to the ordinary Jensen bound f(E X)
    const auto jensen = product_convex_positive(catalog("neg_log"), 1.0, 2.5);
    CHECK(jensen.value == doctest::Approx(-std::log(2.5)).epsilon(1e-14));

    CHECK_THROWS_AS(product_convex_positive(catalog("neg_log"), 0.0, 1.0), PreconditionError);
    CHECK_THROWS_AS(product_convex_positive(catalog("neg_log"), -1.0, 1.0), PreconditionError);
    // a* lands outside the domain of -ln
    CHECK_THROWS_AS(product_convex_positive(catalog("neg_log"), 1.0, -2.0), DomainError);
    // concave f is rejected up front
    CHECK_THROWS_AS(product_convex_positive(catalog("log1p_gain", {5.0}), 1.0, 1.0),
                    PreconditionError);
}

TEST_CASE("unknown curvature needs the explicit override") {
    const DifferentiableFunction mystery(
        "mystery", [](double x) { return x * x + 1.0; }, [](double x) { return 2.0 * x; },
        Interval::all(), Convexity::unknown);
    CHECK_THROWS_AS(product_convex_positive(mystery, 1.0, 2.0), PreconditionError);
    const auto r = product_convex_positive(mystery, 1.0, 2.0, true);
    CHECK(r.value == doctest::Approx(5.0).epsilon(1e-14));
}

TEST_CASE("plug-in entropy lower bounds") {
    const PmfTable fair({"0", "1"}, {0.5, 0.5});
    const auto [b1, b2] = empirical_entropy_lower(fair, 100);
    CHECK(b1 == doctest::Approx(0.6831968497067772).epsilon(1e-13));
    CHECK(b2 == doctest::Approx(0.6831471805599453).epsilon(1e-13));
    CHECK(b1 >= b2);
    CHECK(b1 <= fair.entropy());
    CHECK_THROWS_AS(empirical_entropy_lower(fair, 0), ConfigError);
}

TEST_CASE("two-moment power bound") {
    // X uniform on {1,2}: E X = 1.5, E X^2 = 2.5, E X^3 = 4.5
    const auto r = moment_two_point(1.5, 2.5, 3.0, 1.0);
    CHECK(r.value == doctest::Approx(25.0 / 6.0).epsilon(1e-13));
    CHECK(r.value <= 4.5);
    CHECK(*r.optimizer_value("a_star") == doctest::Approx(5.0 / 3.0).epsilon(1e-14));

    // s-t <= 0 branch
    CHECK_NOTHROW(moment_two_point(1.5, 2.5, 0.5, 1.0));
    // t = 0 collapses to mean^s
    const auto jensen = moment_two_point(1.0, 2.0, 3.0, 0.0);
    CHECK(jensen.value == doctest::Approx(8.0).epsilon(1e-13));

    CHECK_THROWS_AS(moment_two_point(1.5, 2.5, 1.5, 1.0), PreconditionError);
    CHECK_THROWS_AS(moment_two_point(0.0, 2.5, 3.0, 1.0), PreconditionError);
    CHECK_THROWS_AS(moment_two_point(1.5, -2.5, 3.0, 1.0), PreconditionError);
}

TEST_CASE("geometric guess-count moment") {
    CHECK(guessing_moment_lower(0.3, 1.5) == doctest::Approx(7.934920476158724).epsilon(1e-13));
    CHECK(guessing_moment_lower(0.3, 1.0) == doctest::Approx(1.0 / 0.3).epsilon(1e-13));
    CHECK(guessing_moment_lower(0.3, 2.0) == doctest::Approx(1.7 / 0.09).epsilon(1e-13));
    CHECK(guessing_moment_lower(1.0, 1.7) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(guessing_moment_lower(0.0, 1.5), ConfigError);
    CHECK_THROWS_AS(guessing_moment_lower(1.1, 1.5), ConfigError);
    CHECK_THROWS_AS(guessing_moment_lower(0.3, 0.9), ConfigError);
    CHECK_THROWS_AS(guessing_moment_lower(0.3, 2.1), ConfigError);
}

TEST_CASE("exponentially tilted bound") {
    // E{X^2 e^X}, X ~ N(0,1): exact 2*sqrt(e), bound sqrt(e)
    const auto r = exp_tilted(catalog("power", {2.0}), gaussian(0.0, 1.0), 1.0);
    CHECK(r.value == doctest::Approx(1.6487212707001282).epsilon(1e-13));
    CHECK(r.value <= 2.0 * std::exp(0.5));
    CHECK(r.optimizer_value("s") == 1.0);
    CHECK(*r.optimizer_value("a_star") == doctest::Approx(1.0).epsilon(1e-14));

    // s = 0 collapses to the ordinary Jensen bound
    const auto jensen = exp_tilted(catalog("power", {2.0}), gaussian(3.0, 1.0), 0.0);
    CHECK(jensen.value == doctest::Approx(9.0).epsilon(1e-13));

    CHECK_THROWS_AS(exp_tilted(catalog("power", {2.0}), exponential(1.0), 1.0), DomainError);
    CHECK_THROWS_AS(exp_tilted(catalog("log1p_gain", {5.0}), gaussian(0.0, 1.0), 0.5),
                    PreconditionError);
}

TEST_CASE("exponential-of-convex bound") {
    // E{e^{X^2/2}}, X ~ N(1, 0.5): bound e (stationary at a = 2), exact e*sqrt(2)
    const auto r =
        exp_of_convex(catalog("half_quadratic", {1.0}), gaussian(1.0, 0.5),
                      GridSpec(-10.0, 10.0, 0.001));
    CHECK(r.value == doctest::Approx(kE).epsilon(1e-12));
    CHECK(*r.optimizer_value("a_star") == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(*r.optimizer_value("stationarity_gap") <= 1e-12);
    CHECK(r.value <= kE * std::sqrt(2.0));
    CHECK(contains(r.notes, "within grid resolution"));
    CHECK(contains(r.notes, "second-order product"));

    // every grid slope leaves the cumulant domain: nothing feasible
    CHECK_THROWS_AS(
        exp_of_convex(catalog("x_log_x"), exponential(1.0), GridSpec(5.0, 10.0, 0.5)),
        InfeasibleError);
    CHECK_THROWS_AS(
        exp_of_convex(catalog("log1p_gain", {5.0}), gaussian(0.0, 1.0), GridSpec(0.0, 1.0, 0.1)),
        PreconditionError);
}

TEST_CASE("gaussian exp-square closed forms") {
    const auto r = gaussian_exp_square(1.0, 0.5, 1.0);
    CHECK(r.bound == doctest::Approx(kE).epsilon(1e-14));
    CHECK(r.exact == doctest::Approx(kE * std::sqrt(2.0)).epsilon(1e-14));
    // the gap is exactly the (1-sigma2*s)^{-1/2} inflation
    for (const double mu : {-1.0, 0.0, 2.0}) {
        for (const double s2 : {0.3, 0.8}) {
            const auto g = gaussian_exp_square(mu, s2, 0.9);
            CHECK(g.exact / g.bound ==
                  doctest::Approx(1.0 / std::sqrt(1.0 - s2 * 0.9)).epsilon(1e-12));
        }
    }
    CHECK_THROWS_AS(gaussian_exp_square(1.0, 0.5, 2.0), SingularityError);
    CHECK_THROWS_AS(gaussian_exp_square(1.0, 2.0, 1.0), SingularityError);
    CHECK_THROWS_AS(gaussian_exp_square(1.0, 0.0, 1.0), ConfigError);
    CHECK_THROWS_AS(gaussian_exp_square(1.0, 0.5, 0.0), ConfigError);
}

TEST_CASE("exponential-composition product bound") {
    const auto model = shifted_chi_square_sum(3, 1.0);

    // substituting f = -s*ln x, g = x ln x reproduces the log-expectation
    // objective under the change of variable alpha = 1/a
    const auto pec = product_exp_composition(catalog("scaled_neg_log", {1.0}),
                                             catalog("x_log_x"), model,
                                             GridSpec(0.2, 5.0, 0.001));
    const auto le = log_expectation_lower(model, GridSpec(0.2, 5.0, 0.001));
    CHECK(pec.value == doctest::Approx(0.9670877308267062).epsilon(1e-9));
    CHECK(std::fabs(pec.value - le.value) <= 1e-5);

    // g ≡ 1 collapses to the exponential-of-convex bound on the same grid
    const auto with_one = product_exp_composition(catalog("half_quadratic", {1.0}),
                                                  constant_one(), gaussian(1.0, 0.5),
                                                  GridSpec(-10.0, 10.0, 0.001));
    const auto plain = exp_of_convex(catalog("half_quadratic", {1.0}), gaussian(1.0, 0.5),
                                     GridSpec(-10.0, 10.0, 0.001));
    CHECK(with_one.value == doctest::Approx(plain.value).epsilon(1e-12));

    // deterministic X = 1.5: the stationary point is exact
    const auto fixed = product_exp_composition(catalog("half_quadratic", {1.0}),
                                               catalog("x_log_x"), point_mass(1.5),
                                               GridSpec(0.0, 3.0, 0.001));
    CHECK(fixed.value ==
          doctest::Approx(std::exp(1.125) * 1.5 * std::log(1.5)).epsilon(1e-12));
    CHECK(*fixed.optimizer_value("b_star") == doctest::Approx(1.5).epsilon(1e-14));

    CHECK_THROWS_AS(product_exp_composition(catalog("neg_log"), catalog("log1p_gain", {5.0}),
                                            model, GridSpec(0.2, 5.0, 0.1)),
                    PreconditionError);
}

TEST_CASE("log-expectation lower bound") {
    const auto model = shifted_chi_square_sum(3, 1.0);
    const auto r = log_expectation_lower(model, GridSpec(0.0, 10.0, 0.001));
    CHECK(r.valid());
    CHECK(r.value == doctest::Approx(0.96708).epsilon(1e-4));
    // stays below an independent estimate of E{ln X}
    const auto mc = mc_expectation(model, [](double x) { return std::log(x); }, 100000, 9);
    CHECK(r.value <= mc.value + 5.0 * mc.uncertainty);
    CHECK(contains(r.notes, "grid:"));

    // deterministic X = 2 recovers ln 2 to grid resolution
    const auto pm = log_expectation_lower(point_mass(2.0), GridSpec(0.0, 10.0, 0.001));
    CHECK(std::fabs(pm.value - std::log(2.0)) <= 0.001 * std::log(2.0) + 1e-6);
    CHECK(*pm.optimizer_value("alpha") == doctest::Approx(0.5).epsilon(1e-2));

    // mass below 1 breaks the sign hypothesis: flagged, not thrown
    const auto soft = log_expectation_lower(exponential(0.5), GridSpec(0.0, 10.0, 0.001));
    CHECK_FALSE(soft.valid());
    CHECK(soft.validity.size() == 1);
    CHECK(soft.validity[0].first == "support >= 1");
    CHECK(soft.value == doctest::Approx(0.2078679360043874).epsilon(1e-9));

    CHECK_THROWS_AS(log_expectation_lower(gaussian(1.0, 1.0), GridSpec(0.0, 10.0, 0.001)),
                    PreconditionError);
}

TEST_CASE("antenna-sum capacity lower bound") {
    const GridSpec grid(0.0, 10.0, 0.001);
    const double values[] = {0.37818737613969206, 2.0850637491870243, 4.550765044292184};
    const double heuristics[] = {0.22145776262808678, 2.060627391949786, 4.550765044292184};
    const double alphas[] = {0.332, 0.085, 0.01};
    const int ks[] = {1, 10, 100};
    for (int i = 0; i < 3; ++i) {
        const auto r = simo_capacity_lower(ks[i], 1.0, grid);
        CHECK(r.value == doctest::Approx(values[i]).epsilon(1e-12));
        CHECK(*r.optimizer_value("heuristic_value") ==
              doctest::Approx(heuristics[i]).epsilon(1e-12));
        CHECK(*r.optimizer_value("alpha") == doctest::Approx(alphas[i]).epsilon(1e-12));
        CHECK(*r.optimizer_value("jensen_upper") ==
              doctest::Approx(std::log1p(ks[i])).epsilon(1e-14));
        CHECK(*r.optimizer_value("heuristic_alpha") ==
              doctest::Approx(1.0 / ks[i]).epsilon(1e-14));
        CHECK(*r.optimizer_value("heuristic_value") <= r.value);
        CHECK(r.value <= *r.optimizer_value("jensen_upper"));
        CHECK(contains(r.notes, "grid:"));
    }
    // agrees with Monte Carlo on the underlying expectation
    const auto mc = mc_expectation(shifted_chi_square_sum(10, 1.0),
                                   [](double x) { return std::log(x); }, 200000, 5);
    const auto r10 = simo_capacity_lower(10, 1.0, grid);
    CHECK(r10.value <= mc.value + 5.0 * mc.uncertainty);

    CHECK_THROWS_AS(simo_capacity_lower(0, 1.0, grid), ConfigError);
    CHECK_THROWS_AS(simo_capacity_lower(1, 0.0, grid), ConfigError);
}

TEST_CASE("exponential-snr capacity lower bound") {
    const GridSpec grid(0.0, 10.0, 0.001);
    const double thetas[] = {0.2, 1.0, 5.0};
    const double values[] = {1.8849801403805058, 1.0572853786844818, 0.48122589827169326};
    const double alphas[] = {0.03, 0.124, 0.388};
    for (int i = 0; i < 3; ++i) {
        const auto r = exp_snr_capacity_lower(thetas[i], 5.0, grid);
        CHECK(r.value == doctest::Approx(values[i]).epsilon(1e-12));
        CHECK(*r.optimizer_value("alpha") == doctest::Approx(alphas[i]).epsilon(1e-12));
        CHECK(*r.optimizer_value("jensen_upper") ==
              doctest::Approx(std::log1p(5.0 / thetas[i])).epsilon(1e-14));
        CHECK(r.value <= *r.optimizer_value("jensen_upper"));
    }
    // quadrature gives the exact capacity; the bound must sit below it
    const auto quad = quad_expectation([](double z) { return std::exp(-z); },
                                       Interval::positive(),
                                       [](double z) { return std::log1p(5.0 * z); }, 1e-8);
    const auto r = exp_snr_capacity_lower(1.0, 5.0, grid);
    CHECK(r.value <= quad.value);
    CHECK(quad.value <= std::log(6.0));

    CHECK_THROWS_AS(exp_snr_capacity_lower(0.0, 5.0, grid), ConfigError);
    CHECK_THROWS_AS(exp_snr_capacity_lower(1.0, 0.0, grid), ConfigError);
}

TEST_CASE("power-moment lower bound, fixed exponent") {
    const GridSpec grid(0.0, 10.0, 0.001);
    const auto r = power_moment_lower(exponential(1.0), 1.0, 1.0, grid);
    CHECK(r.value == doctest::Approx(0.4027084190309696).epsilon(1e-12));
    CHECK(*r.optimizer_value("alpha") == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r.value <= 1.0);  // E X = 1

    // s = 0 degenerates to the ordinary Jensen value mean^t
    const auto jensen = power_moment_lower(exponential(1.0), 1.0, 0.0, grid);
    CHECK(jensen.value == doctest::Approx(1.0).epsilon(1e-14));

    CHECK_THROWS_AS(power_moment_lower(exponential(1.0), 0.5, 0.2, grid), PreconditionError);
    CHECK_THROWS_AS(power_moment_lower(exponential(1.0), 1.0, -0.5, grid), PreconditionError);
    CHECK_THROWS_AS(power_moment_lower(gaussian(1.0, 1.0), 1.0, 1.0, grid), PreconditionError);
}

TEST_CASE("power-moment lower bound, joint search") {
    const GridSpec alpha_grid(0.0, 10.0, 0.01);
    const GridSpec s_grid(0.5, 3.0, 0.01);
    const auto joint = power_moment_lower_joint(exponential(1.0), 0.5, alpha_grid, s_grid);
    CHECK(joint.value == doctest::Approx(0.7572200604957491).epsilon(1e-10));
    CHECK(*joint.optimizer_value("s") == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(*joint.optimizer_value("alpha") == doctest::Approx(0.67).epsilon(1e-10));
    // true value: E{sqrt(X)} = Gamma(1.5)
    CHECK(joint.value <= 0.8862269254527581);

    // the joint search dominates any fixed-s slice on the same alpha grid
    const auto fixed = power_moment_lower(exponential(1.0), 0.5, 0.5, alpha_grid);
    CHECK(joint.value >= fixed.value);

    CHECK_THROWS_AS(
        power_moment_lower_joint(exponential(1.0), 0.5, alpha_grid, GridSpec(-1.0, 3.0, 0.01)),
        PreconditionError);
    CHECK_THROWS_AS(
        power_moment_lower_joint(gaussian(0.0, 1.0), 0.5, alpha_grid, s_grid),
        PreconditionError);
}

TEST_CASE("estimation-error moment closed form") {
    CHECK(estimation_error_moment_lower(100, 1.0, 1.0, 0.5, 0.5) ==
          doctest::Approx(0.06345931129715872).epsilon(1e-13));
    // s on the lower branch boundary is accepted
    CHECK_NOTHROW(estimation_error_moment_lower(100, 1.0, 1.0, 0.5, -0.5));

    CHECK_THROWS_AS(estimation_error_moment_lower(0, 1.0, 1.0, 0.5, 0.5), ConfigError);
    CHECK_THROWS_AS(estimation_error_moment_lower(100, 0.0, 1.0, 0.5, 0.5), ConfigError);
    CHECK_THROWS_AS(estimation_error_moment_lower(100, 1.0, 0.0, 0.5, 0.5), ConfigError);
    CHECK_THROWS_AS(estimation_error_moment_lower(100, 1.0, 2.1, 0.5, 0.5), ConfigError);
    CHECK_THROWS_AS(estimation_error_moment_lower(100, 1.0, 1.0, 0.0, 0.5), ConfigError);
    CHECK_THROWS_AS(estimation_error_moment_lower(100, 1.0, 1.0, 0.5, 0.2), PreconditionError);
    CHECK_THROWS_AS(estimation_error_moment_lower(100, 1.0, 1.0, 2.0, -0.5), DomainError);
}

TEST_CASE("normalized gap factor") {
    const auto g1 = gap_factor_mu(1.0, GridSpec(0.500000001, 10.0, 0.001));
    CHECK(g1.mu_t == doctest::Approx(0.6345931122744153).epsilon(1e-12));
    CHECK(std::fabs(g1.s_star - 0.5) <= 1e-3);

    const auto g2 = gap_factor_mu(2.0, GridSpec(1e-9, 10.0, 0.001));
    CHECK(std::fabs(g2.mu_t - 1.0) <= 1e-3);

    // the closed-form error bound at zeta = s = 1/2 reproduces mu_1 / 10
    // (scale factors sigma^t/n^{t/2} = 1/10 for n = 100, sigma2 = t = 1)
    const double est = estimation_error_moment_lower(100, 1.0, 1.0, 0.5, 0.5);
    CHECK(std::fabs(10.0 * est - g1.mu_t) <= 1e-8);

    CHECK_THROWS_AS(gap_factor_mu(0.0, GridSpec(0.5, 10.0, 0.001)), ConfigError);
    CHECK_THROWS_AS(gap_factor_mu(2.1, GridSpec(0.5, 10.0, 0.001)), ConfigError);
    CHECK_THROWS_AS(gap_factor_mu(1.0, GridSpec(0.4, 10.0, 0.001)), PreconditionError);
}

TEST_CASE("product of two concave functions, upper orientation") {
    // E{ln^2(1+5Z)}, Z ~ exponential(1): m1 = 1, m2 = 2
    const auto cap = catalog("log1p_gain", {5.0});
    const auto r = product_two_convex(cap, cap, 1.0, 2.0, PairOrientation::concave_pair);
    CHECK(r.value == doctest::Approx(3.655386166888601).epsilon(1e-12));
    CHECK(r.direction == Direction::upper);
    CHECK(*r.optimizer_value("a_star") == doctest::Approx(1.3382908331057726).epsilon(1e-12));
    CHECK(*r.optimizer_value("b_star") == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(r.validity.size() == 4);
    CHECK(r.valid());
    // sits above the quadrature value of the second moment
    const auto quad = quad_expectation(
        [](double z) { return std::exp(-z); }, Interval::positive(),
        [](double z) {
            const double c = std::log1p(5.0 * z);
            return c * c;
        },
        1e-8);
    CHECK(r.value >= quad.value);
}

TEST_CASE("product of two convex functions, lower orientation") {
    const auto f = catalog("exp_scale", {0.2});
    const auto r = product_two_convex(f, f, 1.5, 2.5, PairOrientation::convex_pair);
    CHECK(r.value == doctest::Approx(1.8407416002855403).epsilon(1e-12));
    CHECK(r.direction == Direction::lower);
    CHECK(*r.optimizer_value("a_star") == doctest::Approx(1.550842670270361).epsilon(1e-12));
    // true value for X uniform on {1,2}: (e^{0.4}+e^{0.8})/2
    CHECK(r.value <= 0.5 * (std::exp(0.4) + std::exp(0.8)));
    CHECK(r.validity.size() == 2);

    // x^2 fails f(a*) >= a*f'(a*): rejected as invalid, not returned
    CHECK_THROWS_AS(product_two_convex(catalog("power", {2.0}), catalog("power", {2.0}), 1.5, 2.5,
                                       PairOrientation::convex_pair),
                    ValidityError);
    CHECK_THROWS_AS(product_two_convex(f, f, 0.0, 2.5, PairOrientation::convex_pair),
                    PreconditionError);
    CHECK_THROWS_AS(product_two_convex(f, f, 2.0, 3.9, PairOrientation::convex_pair),
                    PreconditionError);
    // mixed curvature never qualifies
    CHECK_THROWS_AS(product_two_convex(catalog("power", {2.0}), catalog("log1p_gain", {5.0}), 1.0,
                                       2.0, PairOrientation::convex_pair),
                    PreconditionError);
    // g(m1) = 0 leaves the tangency point undefined
    CHECK_THROWS_AS(product_two_convex(catalog("log1p_gain", {1.0}),
                                       catalog("scaled_neg_log", {-1.0}), 1.0, 1.5,
                                       PairOrientation::concave_pair),
                    PreconditionError);
}

TEST_CASE("capacity variance upper bound") {
    const auto r = capacity_variance_upper(1.0, 5.0, GridSpec(0.0, 10.0, 0.001));
    CHECK(r.value == doctest::Approx(2.5375337949086134).epsilon(1e-12));
    CHECK(r.direction == Direction::upper);
    CHECK(*r.optimizer_value("second_moment_upper") ==
          doctest::Approx(3.655386166888601).epsilon(1e-12));
    CHECK(*r.optimizer_value("capacity_lower") ==
          doctest::Approx(1.0572853786844818).epsilon(1e-12));
    CHECK(r.valid());
    CHECK_FALSE(r.notes.empty());

    // sits above the quadrature variance of ln(1+5Z)
    const auto mean = quad_expectation([](double z) { return std::exp(-z); },
                                       Interval::positive(),
                                       [](double z) { return std::log1p(5.0 * z); }, 1e-8);
    const auto second = quad_expectation(
        [](double z) { return std::exp(-z); }, Interval::positive(),
        [](double z) {
            const double c = std::log1p(5.0 * z);
            return c * c;
        },
        1e-8);
    CHECK(r.value >= second.value - mean.value * mean.value);

    CHECK_THROWS_AS(capacity_variance_upper(0.0, 5.0, GridSpec(0.0, 10.0, 0.001)), ConfigError);
    CHECK_THROWS_AS(capacity_variance_upper(1.0, -5.0, GridSpec(0.0, 10.0, 0.001)), ConfigError);
}
