#include "jlb/oracles.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <sstream>

#include "jlb/errors.hpp"

namespace jlb {

const char* to_string(OracleMethod m) {
    switch (m) {
        case OracleMethod::monte_carlo: return "monte_carlo";
        case OracleMethod::quadrature: return "quadrature";
        case OracleMethod::discrete_sum: return "discrete_sum";
        default: return "closed_form";
    }
}

OracleEstimate mc_expectation(const DistributionModel& model,
                              const std::function<double(double)>& h,
                              std::size_t n_samples, std::uint64_t seed) {
    if (n_samples < 2) throw ConfigError("mc_expectation: need at least 2 samples");
    // Welford accumulation: numerically stable and strictly serial, so the
    // result depends only on (seed, n_samples).
    double mean = 0.0;
    double m2 = 0.0;
    for (std::size_t i = 0; i < n_samples; ++i) {
        RngStream stream(seed, i);  // draw i is a pure function of (seed, i)
        const double x = model.sample(stream);
        const double y = h(x);
        if (!std::isfinite(y)) {
            std::ostringstream os;
            os << "mc_expectation: integrand non-finite at sample x=" << x
               << " (draw " << i << ", model " << model.name() << ")";
            throw OracleError(os.str());
        }
        const double delta = y - mean;
        mean += delta / static_cast<double>(i + 1);
        m2 += delta * (y - mean);
    }
    const double var = m2 / static_cast<double>(n_samples - 1);
    const double stderr_ = std::sqrt(var / static_cast<double>(n_samples));
    return {mean, stderr_, OracleMethod::monte_carlo, n_samples};
}

OracleEstimate quad_expectation(const std::function<double(double)>& density,
                                Interval support,
                                const std::function<double(double)>& h, double tol) {
    if (!(tol > 0.0)) throw ConfigError("quad_expectation: tol must be > 0");
    using boost::math::quadrature::gauss_kronrod;

    std::size_t evals = 0;
    auto mass = [&](double x) {
        ++evals;
        return density(x);
    };
    double mass_err = 0.0;
    const double total =
        gauss_kronrod<double, 15>::integrate(mass, support.lo, support.hi, 15, tol, &mass_err);
    if (!std::isfinite(total) || std::fabs(total - 1.0) > std::max(tol, mass_err) + tol) {
        std::ostringstream os;
        os << "quad_expectation: density integrates to " << total << " over " << support.str()
           << ", not 1 within " << tol;
        throw OracleError(os.str());
    }

    auto integrand = [&](double x) {
        ++evals;
        return h(x) * density(x);
    };
    double err = 0.0;
    const double value =
        gauss_kronrod<double, 15>::integrate(integrand, support.lo, support.hi, 15, tol, &err);
    if (!std::isfinite(value)) throw OracleError("quad_expectation: integral is non-finite");
    if (err > std::max(tol, tol * std::fabs(value))) {
        std::ostringstream os;
        os << "quad_expectation: error estimate " << err << " exceeds tolerance " << tol;
        throw OracleError(os.str());
    }
    return {value, err, OracleMethod::quadrature, evals};
}

OracleEstimate discrete_expectation(const PmfEnumerator& pmf,
                                    const std::function<double(double)>& h,
                                    double tail_tol, const TailBound& tail_bound) {
    if (!(tail_tol > 0.0)) throw ConfigError("discrete_expectation: tail_tol must be > 0");
    constexpr std::size_t kMaxTerms = 20'000'000;
    double acc = 0.0;
    for (std::size_t i = 0; i < kMaxTerms; ++i) {
        const auto term = pmf(i);
        if (!term) {
            // finite support exhausted: exact up to rounding
            return {acc, 0.0, OracleMethod::discrete_sum, i};
        }
        if (term->prob < 0.0) {
            std::ostringstream os;
            os << "discrete_expectation: negative probability " << term->prob << " at index " << i;
            throw ConfigError(os.str());
        }
        if (term->prob > 0.0) {
            const double y = h(term->value);
            if (!std::isfinite(y)) {
                std::ostringstream os;
                os << "discrete_expectation: integrand non-finite at value " << term->value;
                throw OracleError(os.str());
            }
            acc += y * term->prob;
        }
        if (tail_bound) {
            const auto rest = tail_bound(i + 1);
            if (rest && *rest < tail_tol) {
                return {acc, *rest, OracleMethod::discrete_sum, i + 1};
            }
        }
    }
    throw OracleError(
        "discrete_expectation: support not exhausted and no usable tail bound "
        "(infinite support requires one)");
}

PmfEnumerator binomial_terms(int n, double p) {
    if (n < 1) throw ConfigError("binomial_terms: n must be >= 1");
    if (!(p > 0.0 && p < 1.0)) throw ConfigError("binomial_terms: p must be in (0,1)");
    const double lp = std::log(p);
    const double lq = std::log1p(-p);
    const double lgn = std::lgamma(n + 1.0);
    return [n, lp, lq, lgn](std::size_t i) -> std::optional<PmfTerm> {
        if (i > static_cast<std::size_t>(n)) return std::nullopt;
        const double k = static_cast<double>(i);
        const double logp =
            lgn - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) + k * lp + (n - k) * lq;
        return PmfTerm{k, std::exp(logp)};
    };
}

PmfEnumerator geometric_terms(double p) {
    if (!(p > 0.0 && p <= 1.0)) throw ConfigError("geometric_terms: p must be in (0,1]");
    if (p == 1.0) {
        return [](std::size_t i) -> std::optional<PmfTerm> {
            if (i > 0) return std::nullopt;
            return PmfTerm{1.0, 1.0};
        };
    }
    const double lq = std::log1p(-p);
    return [p, lq](std::size_t i) -> std::optional<PmfTerm> {
        const double k = static_cast<double>(i) + 1.0;
        return PmfTerm{k, p * std::exp(static_cast<double>(i) * lq)};
    };
}

TailBound geometric_power_tail(double p, double s) {
    if (!(p > 0.0 && p <= 1.0)) throw ConfigError("geometric_power_tail: p must be in (0,1]");
    if (s < 0.0) throw ConfigError("geometric_power_tail: envelope exponent must be >= 0");
    if (p == 1.0) {
        return [](std::size_t i) -> std::optional<double> { return i >= 1 ? std::optional<double>(0.0) : std::nullopt; };
    }
    const double q = 1.0 - p;
    const double lq = std::log1p(-p);
    // Tail Σ_{k≥K} k^s·p·q^{k−1} with K = i+1: each extra step multiplies the
    // k^s factor by at most (1+1/K)^s, so a geometric envelope with ratio
    // q·(1+1/K)^s dominates once that ratio is below 1.
    return [q, lq, s](std::size_t i) -> std::optional<double> {
        const double K = static_cast<double>(i) + 1.0;
        const double rho = std::pow(1.0 + 1.0 / K, s);
        if (q * rho >= 1.0) return std::nullopt;
        const double head = (1.0 - q) * std::exp((K - 1.0) * lq) * std::pow(K, s);
        return head / (1.0 - q * rho);
    };
}

}  // namespace jlb
