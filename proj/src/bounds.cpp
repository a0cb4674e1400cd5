#include "jlb/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "jlb/errors.hpp"

namespace jlb {

namespace {

constexpr double kSignSlack = 1e-12;

void require_curvature(const DifferentiableFunction& f, Convexity want, const char* op,
                       bool allow_unknown) {
    if (f.convexity() == want) return;
    if (f.convexity() == Convexity::unknown && allow_unknown) return;
    std::ostringstream os;
    os << op << ": function '" << f.name() << "' is tagged " << to_string(f.convexity())
       << ", needs " << to_string(want)
       << (f.convexity() == Convexity::unknown ? " (pass the override flag to accept unknown)" : "");
    throw PreconditionError(os.str());
}

std::string grid_note(std::size_t feasible, std::size_t skipped) {
    std::ostringstream os;
    os << "grid: " << feasible << " feasible point(s), " << skipped << " skipped";
    return os.str();
}

}  // namespace

const char* to_string(Direction d) { return d == Direction::lower ? "lower" : "upper"; }

bool BoundResult::valid() const {
    for (const auto& [name, ok] : validity)
        if (!ok) return false;
    return true;
}

std::optional<double> BoundResult::optimizer_value(const std::string& name) const {
    for (const auto& [key, v] : optimizer)
        if (key == name) return v;
    return std::nullopt;
}

PmfTable::PmfTable(std::vector<std::string> letters_, std::vector<double> probs_)
    : letters(std::move(letters_)), probs(std::move(probs_)) {
    if (letters.size() != probs.size() || letters.empty())
        throw ConfigError("pmf table: need matching, nonempty letters and probabilities");
    double total = 0.0;
    for (const double p : probs) {
        if (p < 0.0) throw ConfigError("pmf table: negative probability");
        total += p;
    }
    if (std::fabs(total - 1.0) > 1e-12) {
        std::ostringstream os;
        os << "pmf table: probabilities sum to " << total << ", not 1";
        throw ConfigError(os.str());
    }
}

double PmfTable::entropy() const {
    double h = 0.0;
    for (const double p : probs)
        if (p > 0.0) h -= p * std::log(p);
    return h;
}

BoundResult product_convex_positive(const DifferentiableFunction& f, double m_g, double m_xg,
                                    bool allow_unknown_convexity) {
    require_curvature(f, Convexity::convex, "product_convex_positive", allow_unknown_convexity);
    if (!(m_g > 0.0)) {
        std::ostringstream os;
        os << "product_convex_positive: E{g} = " << m_g << " must be > 0";
        throw PreconditionError(os.str());
    }
    const double a_star = m_xg / m_g;
    const double value = f.value(a_star) * m_g;  // DomainError if a* is outside f's domain
    BoundResult r;
    r.value = value;
    r.direction = Direction::lower;
    r.optimizer = {{"a_star", a_star}};
    r.family = "product_convex_positive";
    return r;
}

std::pair<double, double> empirical_entropy_lower(const PmfTable& P, long N) {
    if (N < 1) throw ConfigError("empirical_entropy_lower: N must be >= 1");
    const double H = P.entropy();
    double correction = 0.0;
    for (const double p : P.probs) {
        if (p > 0.0) correction += p * std::log1p((1.0 - p) / (static_cast<double>(N) * p));
    }
    const double b1 = H - correction;
    const double b2 = H - (static_cast<double>(P.letters.size()) - 1.0) / static_cast<double>(N);
    return {b1, b2};
}

BoundResult moment_two_point(double m_t, double m_t1, double s, double t) {
    const double d = s - t;
    if (d > 0.0 && d < 1.0) {
        std::ostringstream os;
        os << "moment_two_point: s-t = " << d << " lies in (0,1)";
        throw PreconditionError(os.str());
    }
    if (!(m_t > 0.0) || !(m_t1 > 0.0))
        throw PreconditionError("moment_two_point: both supplied moments must be > 0");
    // (m_{t+1})^{s−t} / (m_t)^{s−t−1}, assembled in log-domain
    const double value = std::exp(d * std::log(m_t1) - (d - 1.0) * std::log(m_t));
    BoundResult r;
    r.value = value;
    r.direction = Direction::lower;
    r.optimizer = {{"a_star", m_t1 / m_t}};
    r.family = "moment_two_point";
    return r;
}

double guessing_moment_lower(double p, double s) {
    if (!(p > 0.0 && p <= 1.0)) throw ConfigError("guessing_moment_lower: p must be in (0,1]");
    if (!(s >= 1.0 && s <= 2.0)) throw ConfigError("guessing_moment_lower: s must be in [1,2]");
    return std::exp((s - 1.0) * std::log(2.0 - p) - s * std::log(p));
}

BoundResult exp_tilted(const DifferentiableFunction& f, const DistributionModel& model, double s,
                       bool allow_unknown_convexity) {
    require_curvature(f, Convexity::convex, "exp_tilted", allow_unknown_convexity);
    const double tilt_mean = model.cgf_prime(s);  // DomainError outside the cumulant domain
    const double value = f.value(tilt_mean) * std::exp(model.cgf(s));
    BoundResult r;
    r.value = value;
    r.direction = Direction::lower;
    r.optimizer = {{"s", s}, {"a_star", tilt_mean}};
    r.family = "exp_tilted";
    return r;
}

BoundResult exp_of_convex(const DifferentiableFunction& f, const DistributionModel& model,
                          const GridSpec& grid, bool allow_unknown_convexity) {
    require_curvature(f, Convexity::convex, "exp_of_convex", allow_unknown_convexity);
    auto exponent = [&](double a) -> std::optional<double> {
        if (!f.domain().contains_interior(a)) return std::nullopt;
        const double slope = f.deriv(a);
        if (!model.cgf_defined_at(slope)) return std::nullopt;
        const double e = f.value(a) - a * slope + model.cgf(slope);
        if (!std::isfinite(e)) return std::nullopt;
        return e;
    };
    const GridResult res = grid_max(exponent, grid);
    BoundResult r;
    r.value = std::exp(res.max);
    r.direction = Direction::lower;
    const double slope_star = f.deriv(res.argmax);
    const double stat_gap = std::fabs(model.cgf_prime(slope_star) - res.argmax);
    r.optimizer = {{"a_star", res.argmax}, {"exponent", res.max}, {"stationarity_gap", stat_gap}};
    r.family = "exp_of_convex";
    std::ostringstream os;
    os << grid_note(res.feasible_count, res.skipped_count) << "; stationarity gap " << stat_gap
       << (stat_gap <= grid.step ? " (within grid resolution)" : " (exceeds grid resolution)");
    if (f.has_second_deriv()) {
        const double curv = f.second_deriv(res.argmax) * model.cgf_second(slope_star);
        os << "; second-order product " << curv << (curv < 1.0 ? " < 1" : " >= 1");
    }
    r.notes = os.str();
    return r;
}

ExpSquareBound gaussian_exp_square(double mu, double sigma2, double s) {
    if (!(sigma2 > 0.0)) throw ConfigError("gaussian_exp_square: sigma2 must be > 0");
    if (!(s > 0.0)) throw ConfigError("gaussian_exp_square: s must be > 0");
    const double d = 1.0 - sigma2 * s;
    if (d <= 0.0) {
        std::ostringstream os;
        os << "gaussian_exp_square: sigma2*s = " << sigma2 * s
           << " >= 1, the expectation is infinite";
        throw SingularityError(os.str());
    }
    const double bound = std::exp(mu * mu * s / (2.0 * d));
    return {bound, bound / std::sqrt(d)};
}

BoundResult product_exp_composition(const DifferentiableFunction& f,
                                    const DifferentiableFunction& g,
                                    const DistributionModel& model, const GridSpec& grid,
                                    bool allow_unknown_convexity) {
    require_curvature(f, Convexity::convex, "product_exp_composition", allow_unknown_convexity);
    require_curvature(g, Convexity::convex, "product_exp_composition", allow_unknown_convexity);
    auto objective = [&](double a) -> std::optional<double> {
        if (!f.domain().contains_interior(a)) return std::nullopt;
        const double slope = f.deriv(a);
        if (!model.cgf_defined_at(slope)) return std::nullopt;
        const double expo = f.value(a) - a * slope + model.cgf(slope);
        const double b = model.cgf_prime(slope);
        if (!g.domain().contains_interior(b)) return std::nullopt;
        const double gv = g.value(b);
        if (!std::isfinite(expo) || !std::isfinite(gv)) return std::nullopt;
        // e^{expo}·g(b), assembled in log-domain to survive large exponents
        if (gv == 0.0) return 0.0;
        const double mag = std::exp(expo + std::log(std::fabs(gv)));
        return gv > 0.0 ? mag : -mag;
    };
    const GridResult res = grid_max(objective, grid);
    BoundResult r;
    r.value = res.max;
    r.direction = Direction::lower;
    const double slope_star = f.deriv(res.argmax);
    r.optimizer = {{"a_star", res.argmax}, {"b_star", model.cgf_prime(slope_star)}};
    r.family = "product_exp_composition";
    r.notes = grid_note(res.feasible_count, res.skipped_count);
    return r;
}

BoundResult log_expectation_lower(const DistributionModel& model, const GridSpec& grid) {
    if (model.support().lo < 0.0) {
        std::ostringstream os;
        os << "log_expectation_lower: support of " << model.name() << " must lie in (0,inf)";
        throw PreconditionError(os.str());
    }
    auto objective = [&](double alpha) -> std::optional<double> {
        if (alpha < 0.0) return std::nullopt;
        if (alpha == 0.0) return 0.0;
        if (!model.cgf_defined_at(-alpha)) return std::nullopt;
        const double tilt_mean = model.cgf_prime(-alpha);  // ψ'(−α) = φ'(−α)/φ(−α)
        if (!(tilt_mean > 0.0)) return std::nullopt;
        const double log_tm = std::log(tilt_mean);
        if (log_tm == 0.0) return 0.0;
        // e·α·e^{ψ(−α)}·ψ'(−α)·ln ψ'(−α), assembled in log-domain
        const double mag = std::exp(1.0 + std::log(alpha) + model.cgf(-alpha) + log_tm +
                                    std::log(std::fabs(log_tm)));
        return log_tm > 0.0 ? mag : -mag;
    };
    const GridResult res = grid_max(objective, grid);
    BoundResult r;
    r.value = res.max;
    r.direction = Direction::lower;
    r.optimizer = {{"alpha", res.argmax}};
    // x·ln x must stay nonnegative on the support for the tangent-product
    // step; reported as a flag (not thrown) so the raw value stays visible
    r.validity = {{"support >= 1", model.support().lo >= 1.0}};
    r.family = "log_expectation_lower";
    r.notes = grid_note(res.feasible_count, res.skipped_count);
    return r;
}

namespace {

// Shared closed-form objective of the two capacity bounds:
// e·α·e^{ψ(−α)}·r·ln r with r = ψ'(−α) supplied by the caller.
double capacity_objective(double alpha, double log_mgf_at_minus_alpha, double r) {
    if (alpha <= 0.0) return 0.0;
    const double lr = std::log(r);
    if (lr == 0.0) return 0.0;
    const double mag = std::exp(1.0 + std::log(alpha) + log_mgf_at_minus_alpha + std::log(r) +
                                std::log(std::fabs(lr)));
    return lr > 0.0 ? mag : -mag;
}

}  // namespace

BoundResult simo_capacity_lower(int k, double sigma2, const GridSpec& grid) {
    if (k < 1) throw ConfigError("simo_capacity_lower: k must be >= 1");
    if (!(sigma2 > 0.0)) throw ConfigError("simo_capacity_lower: sigma2 must be > 0");
    auto objective_at = [k, sigma2](double alpha) -> double {
        const double denom = 1.0 + 2.0 * alpha * sigma2;
        const double r = 1.0 + k * sigma2 / denom;
        const double log_mgf = -alpha - 0.5 * k * std::log1p(2.0 * alpha * sigma2);
        return capacity_objective(alpha, log_mgf, r);
    };
    auto objective = [&](double alpha) -> std::optional<double> {
        if (alpha < 0.0) return std::nullopt;
        return objective_at(alpha);
    };
    const GridResult res = grid_max(objective, grid);
    const double heuristic_alpha = 1.0 / (k * sigma2);
    const double heuristic_value = objective_at(heuristic_alpha);
    BoundResult r;
    r.value = res.max;
    r.direction = Direction::lower;
    double alpha_star = res.argmax;
    std::string extra;
    if (heuristic_value > r.value) {
        // the sup is over all α ≥ 0; keep the closed-form candidate so the
        // reported value always dominates it
        r.value = heuristic_value;
        alpha_star = heuristic_alpha;
        extra = "; closed-form candidate exceeded the grid maximum";
    }
    r.optimizer = {{"alpha", alpha_star},
                   {"jensen_upper", std::log1p(k * sigma2)},
                   {"heuristic_alpha", heuristic_alpha},
                   {"heuristic_value", heuristic_value}};
    r.family = "simo_capacity_lower";
    r.notes = grid_note(res.feasible_count, res.skipped_count) + extra;
    return r;
}

BoundResult exp_snr_capacity_lower(double theta, double gain, const GridSpec& grid) {
    if (!(theta > 0.0)) throw ConfigError("exp_snr_capacity_lower: theta must be > 0");
    if (!(gain > 0.0)) throw ConfigError("exp_snr_capacity_lower: gain must be > 0");
    auto objective = [theta, gain](double alpha) -> std::optional<double> {
        if (alpha < 0.0) return std::nullopt;
        if (alpha == 0.0) return 0.0;
        const double r = 1.0 + gain / (theta + gain * alpha);
        // e·θ·α·e^{−α}/(θ+gα)·r·ln r — the MGF of 1+gZ at −α is
        // θe^{−α}/(θ+gα), so this is the log-expectation objective in
        // closed form.
        const double log_mgf = std::log(theta) - alpha - std::log(theta + gain * alpha);
        return capacity_objective(alpha, log_mgf, r);
    };
    const GridResult res = grid_max(objective, grid);
    BoundResult r;
    r.value = res.max;
    r.direction = Direction::lower;
    r.optimizer = {{"alpha", res.argmax}, {"jensen_upper", std::log1p(gain / theta)}};
    r.family = "exp_snr_capacity_lower";
    r.notes = grid_note(res.feasible_count, res.skipped_count);
    return r;
}

namespace {

void require_power_exponent(double t, double s, const char* op) {
    if (!(s >= 0.0)) {
        std::ostringstream os;
        os << op << ": s = " << s << " must be >= 0";
        throw PreconditionError(os.str());
    }
    const double e = t + s;
    if (e > 0.0 && e < 1.0) {
        std::ostringstream os;
        os << op << ": exponent t+s = " << e << " lies in the excluded band (0,1)";
        throw PreconditionError(os.str());
    }
}

// log of (αe)^s·e^{ψ(−αs)}·(ψ'(−αs))^{t+s}; nullopt where infeasible.
std::optional<double> power_moment_log_objective(const DistributionModel& model, double t,
                                                 double s, double alpha) {
    if (alpha < 0.0) return std::nullopt;
    if (s == 0.0) {
        // the α-factor degenerates to 1; the bound is mean^t (Jensen)
        const double m = model.mean();
        if (!(m > 0.0)) return std::nullopt;
        return t * std::log(m);
    }
    if (alpha == 0.0) return std::nullopt;  // log of 0: handled by caller as value 0
    if (!model.cgf_defined_at(-alpha * s)) return std::nullopt;
    const double tm = model.cgf_prime(-alpha * s);
    if (!(tm > 0.0)) return std::nullopt;
    const double lv = s * (1.0 + std::log(alpha)) + model.cgf(-alpha * s) +
                      (t + s) * std::log(tm);
    if (!std::isfinite(lv)) return std::nullopt;
    return lv;
}

}  // namespace

BoundResult power_moment_lower(const DistributionModel& model, double t, double s,
                               const GridSpec& grid) {
    if (model.support().lo < 0.0) {
        std::ostringstream os;
        os << "power_moment_lower: support of " << model.name() << " must be nonnegative";
        throw PreconditionError(os.str());
    }
    require_power_exponent(t, s, "power_moment_lower");
    auto objective = [&](double alpha) -> std::optional<double> {
        if (alpha == 0.0 && s > 0.0) return 0.0;
        const auto lv = power_moment_log_objective(model, t, s, alpha);
        if (!lv) return std::nullopt;
        return std::exp(*lv);
    };
    const GridResult res = grid_max(objective, grid);
    BoundResult r;
    r.value = res.max;
    r.direction = Direction::lower;
    r.optimizer = {{"alpha", res.argmax}, {"s", s}};
    r.family = "power_moment_lower";
    r.notes = grid_note(res.feasible_count, res.skipped_count);
    return r;
}

BoundResult power_moment_lower_joint(const DistributionModel& model, double t,
                                     const GridSpec& alpha_grid, const GridSpec& s_grid) {
    if (model.support().lo < 0.0) {
        std::ostringstream os;
        os << "power_moment_lower_joint: support of " << model.name() << " must be nonnegative";
        throw PreconditionError(os.str());
    }
    if (!(s_grid.lo >= 0.0))
        throw PreconditionError("power_moment_lower_joint: s grid must be nonnegative");
    auto objective = [&](double alpha, double s) -> std::optional<double> {
        const double e = t + s;
        if (e > 0.0 && e < 1.0) return std::nullopt;  // excluded curvature band
        if (alpha == 0.0 && s > 0.0) return 0.0;
        const auto lv = power_moment_log_objective(model, t, s, alpha);
        if (!lv) return std::nullopt;
        return std::exp(*lv);
    };
    const Grid2dResult res = grid_max_2d(objective, alpha_grid, s_grid);
    BoundResult r;
    r.value = res.max;
    r.direction = Direction::lower;
    r.optimizer = {{"alpha", res.argmax_a}, {"s", res.argmax_b}};
    r.family = "power_moment_lower";
    r.notes = grid_note(res.feasible_count, res.skipped_count);
    return r;
}

double estimation_error_moment_lower(long n, double sigma2, double t, double zeta, double s) {
    if (n < 1) throw ConfigError("estimation_error_moment_lower: n must be >= 1");
    if (!(sigma2 > 0.0)) throw ConfigError("estimation_error_moment_lower: sigma2 must be > 0");
    if (!(t > 0.0 && t <= 2.0))
        throw ConfigError("estimation_error_moment_lower: t must be in (0,2]");
    if (!(zeta > 0.0)) throw ConfigError("estimation_error_moment_lower: zeta must be > 0");
    if (!(s >= 1.0 - 0.5 * t || s <= -0.5 * t)) {
        std::ostringstream os;
        os << "estimation_error_moment_lower: s = " << s << " lies in the excluded band ("
           << -0.5 * t << ", " << 1.0 - 0.5 * t << ")";
        throw PreconditionError(os.str());
    }
    const double band = 1.0 + 2.0 * zeta * s;
    if (!(band > 0.0)) {
        std::ostringstream os;
        os << "estimation_error_moment_lower: 1+2ζs = " << band << " must be > 0";
        throw DomainError(os.str());
    }
    // (σ^t/n^{t/2})·(ζe)^s/(1+2ζs)^{(t+1)/2+s} in log-domain
    const double lv = 0.5 * t * std::log(sigma2) - 0.5 * t * std::log(static_cast<double>(n)) +
                      s * (1.0 + std::log(zeta)) - (0.5 * (t + 1.0) + s) * std::log(band);
    return std::exp(lv);
}

GapFactor gap_factor_mu(double t, const GridSpec& s_grid) {
    if (!(t > 0.0 && t <= 2.0)) throw ConfigError("gap_factor_mu: t must be in (0,2]");
    const double edge = 1.0 - 0.5 * t;
    if (!(s_grid.lo > edge)) {
        std::ostringstream os;
        os << "gap_factor_mu: s grid must lie strictly above " << edge;
        throw PreconditionError(os.str());
    }
    auto objective = [t](double s) -> std::optional<double> {
        const double d = t + 2.0 * s + 1.0;
        if (!(d > 0.0)) return std::nullopt;
        const double ld = std::log(d);
        // ((t+1)/(t+2s+1))^{(t+1)/2}·(e/(t+2s+1))^s
        const double lv = 0.5 * (t + 1.0) * (std::log(t + 1.0) - ld) + s * (1.0 - ld);
        return std::exp(lv);
    };
    const GridResult res = grid_max(objective, s_grid);
    return {res.max, res.argmax};
}

BoundResult product_two_convex(const DifferentiableFunction& f, const DifferentiableFunction& g,
                               double m1, double m2, PairOrientation orientation,
                               bool allow_unknown_convexity) {
    const Convexity want =
        orientation == PairOrientation::convex_pair ? Convexity::convex : Convexity::concave;
    require_curvature(f, want, "product_two_convex", allow_unknown_convexity);
    require_curvature(g, want, "product_two_convex", allow_unknown_convexity);
    if (!(m1 > 0.0)) throw PreconditionError("product_two_convex: m1 = E{X} must be > 0");
    if (m2 < m1 * m1) {
        std::ostringstream os;
        os << "product_two_convex: m2 = " << m2 << " < m1^2 = " << m1 * m1;
        throw PreconditionError(os.str());
    }
    const double b_star = m2 / m1;
    const double g_m1 = g.value(m1);
    if (g_m1 == 0.0)
        throw PreconditionError("product_two_convex: g(m1) = 0, tangency point undefined");
    const double a_star = m1 * g.value(b_star) / g_m1;
    const double value = f.value(a_star) * g_m1;

    BoundResult r;
    r.value = value;
    r.direction = orientation == PairOrientation::convex_pair ? Direction::lower : Direction::upper;
    r.optimizer = {{"a_star", a_star}, {"b_star", b_star}};
    r.family = "product_two_convex";

    const double fa = f.value(a_star);
    const double afp = a_star * f.deriv(a_star);
    if (orientation == PairOrientation::convex_pair) {
        r.validity = {{"f(a*) >= a*f'(a*)", fa >= afp - kSignSlack * (1.0 + std::fabs(fa))},
                      {"a*f'(a*) >= 0", afp >= -kSignSlack}};
    } else {
        // concave orientation: every tangent coefficient must stay
        // nonnegative for the flipped inequalities to multiply through
        const double gb = g.value(b_star);
        const double bgp = b_star * g.deriv(b_star);
        const double fp = f.deriv(a_star);
        const double gp = g.deriv(b_star);
        r.validity = {{"f(a*) - a*f'(a*) >= 0", fa - afp >= -kSignSlack * (1.0 + std::fabs(fa))},
                      {"f'(a*) >= 0", fp >= -kSignSlack},
                      {"g(b*) - b*g'(b*) >= 0", gb - bgp >= -kSignSlack * (1.0 + std::fabs(gb))},
                      {"g'(b*) >= 0", gp >= -kSignSlack}};
    }
    if (!r.valid()) {
        std::string failed;
        for (const auto& [name, ok] : r.validity)
            if (!ok) failed += (failed.empty() ? "" : "; ") + name;
        throw ValidityError("product_two_convex: validity condition failed: " + failed);
    }
    return r;
}

BoundResult capacity_variance_upper(double theta, double gain, const GridSpec& grid) {
    if (!(theta > 0.0)) throw ConfigError("capacity_variance_upper: theta must be > 0");
    if (!(gain > 0.0)) throw ConfigError("capacity_variance_upper: gain must be > 0");
    const DifferentiableFunction cap = catalog("log1p_gain", {gain});
    const double m1 = 1.0 / theta;
    const double m2 = 2.0 / (theta * theta);
    const BoundResult second_moment =
        product_two_convex(cap, cap, m1, m2, PairOrientation::concave_pair);
    const BoundResult lower = exp_snr_capacity_lower(theta, gain, grid);
    const double u = second_moment.value;
    const double l = lower.value;
    BoundResult r;
    r.value = u - l * l;
    r.direction = Direction::upper;
    r.optimizer = {{"second_moment_upper", u}, {"capacity_lower", l}};
    r.validity = {{"U >= L^2", u >= l * l}};
    r.family = "capacity_variance_upper";
    r.notes = "variance bounded by the second-moment upper bound minus the squared capacity lower bound";
    if (!r.valid())
        throw ValidityError("capacity_variance_upper: U < L^2, the combination is vacuous");
    return r;
}

}  // namespace jlb
