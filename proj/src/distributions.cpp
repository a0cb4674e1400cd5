#include "jlb/distributions.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "jlb/errors.hpp"

namespace jlb {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

DistributionModel::DistributionModel(std::string name, double mean, double variance,
                                     Scalar cgf, Scalar cgf_prime, Scalar cgf_second,
                                     Interval cgf_domain, Interval support, Sampler sampler)
    : name_(std::move(name)),
      mean_(mean),
      variance_(variance),
      cgf_(std::move(cgf)),
      cgf_prime_(std::move(cgf_prime)),
      cgf_second_(std::move(cgf_second)),
      cgf_domain_(cgf_domain),
      support_(support),
      sampler_(std::move(sampler)) {
    if (!cgf_ || !cgf_prime_ || !cgf_second_ || !sampler_)
        throw ConfigError("model '" + name_ + "' is missing a component");
    if (!cgf_domain_.contains_interior(0.0))
        throw ConfigError("model '" + name_ + "': cumulant domain must contain 0");
    if (variance_ < 0.0) throw ConfigError("model '" + name_ + "': negative variance");
}

void DistributionModel::require_in_domain(double s) const {
    if (!cgf_domain_.contains_interior(s)) {
        std::ostringstream os;
        os << "model '" << name_ << "': s=" << s << " outside cumulant domain " << cgf_domain_.str();
        throw DomainError(os.str());
    }
}

double DistributionModel::cgf(double s) const {
    require_in_domain(s);
    return cgf_(s);
}

double DistributionModel::cgf_prime(double s) const {
    require_in_domain(s);
    return cgf_prime_(s);
}

double DistributionModel::cgf_second(double s) const {
    require_in_domain(s);
    return cgf_second_(s);
}

double DistributionModel::mgf(double s) const { return std::exp(cgf(s)); }

double DistributionModel::sample(RngStream& rng) const { return sampler_(rng); }

DistributionModel gaussian(double mu, double sigma2) {
    if (!(sigma2 > 0.0)) throw ConfigError("gaussian: sigma2 must be > 0");
    const double sd = std::sqrt(sigma2);
    std::ostringstream os;
    os << "gaussian(" << mu << "," << sigma2 << ")";
    return DistributionModel(
        os.str(), mu, sigma2,
        [mu, sigma2](double s) { return mu * s + 0.5 * sigma2 * s * s; },
        [mu, sigma2](double s) { return mu + sigma2 * s; },
        [sigma2](double) { return sigma2; },
        Interval::all(), Interval::all(),
        [mu, sd](RngStream& rng) { return mu + sd * rng.normal(); });
}

DistributionModel exponential(double theta) {
    if (!(theta > 0.0)) throw ConfigError("exponential: theta must be > 0");
    std::ostringstream os;
    os << "exponential(" << theta << ")";
    return DistributionModel(
        os.str(), 1.0 / theta, 1.0 / (theta * theta),
        [theta](double s) { return std::log(theta) - std::log(theta - s); },
        [theta](double s) { return 1.0 / (theta - s); },
        [theta](double s) {
            const double d = theta - s;
            return 1.0 / (d * d);
        },
        Interval::open(-kInf, theta), Interval::open(0.0, kInf),
        [theta](RngStream& rng) { return -std::log(rng.uniform()) / theta; });
}

DistributionModel bernoulli_sum(int n, double p) {
    if (n < 1) throw ConfigError("bernoulli_sum: n must be >= 1");
    if (!(p > 0.0 && p < 1.0)) throw ConfigError("bernoulli_sum: p must be in (0,1)");
    const double q = 1.0 - p;
    std::ostringstream os;
    os << "bernoulli_sum(" << n << "," << p << ")";
    return DistributionModel(
        os.str(), n * p, n * p * q,
        [n, p, q](double s) { return n * std::log(p * std::exp(s) + q); },
        [n, p, q](double s) {
            const double es = std::exp(s);
            return n * p * es / (p * es + q);
        },
        [n, p, q](double s) {
            const double es = std::exp(s);
            const double d = p * es + q;
            return n * p * q * es / (d * d);
        },
        Interval::all(), Interval::open(0.0, static_cast<double>(n)),
        [n, p](RngStream& rng) {
            int count = 0;
            for (int i = 0; i < n; ++i)
                if (rng.uniform() < p) ++count;
            return static_cast<double>(count);
        });
}

DistributionModel geometric(double p) {
    if (!(p > 0.0 && p <= 1.0)) throw ConfigError("geometric: p must be in (0,1]");
    std::ostringstream os;
    os << "geometric(" << p << ")";
    if (p == 1.0) {
        // point mass at 1
        return DistributionModel(
            os.str(), 1.0, 0.0,
            [](double s) { return s; },
            [](double) { return 1.0; },
            [](double) { return 0.0; },
            Interval::all(), Interval::open(1.0, 1.0),
            [](RngStream&) { return 1.0; });
    }
    const double q = 1.0 - p;
    // right endpoint −ln(1−p) in a cancellation-free form
    const double s_hi = -std::log1p(-p);
    const double log_q = std::log1p(-p);
    return DistributionModel(
        os.str(), 1.0 / p, q / (p * p),
        [p, q](double s) { return std::log(p) + s - std::log1p(-q * std::exp(s)); },
        [q](double s) {
            const double d = 1.0 - q * std::exp(s);
            return 1.0 / d;
        },
        [q](double s) {
            const double qe = q * std::exp(s);
            const double d = 1.0 - qe;
            return qe / (d * d);
        },
        Interval::open(-kInf, s_hi), Interval::open(1.0, kInf),
        [log_q](RngStream& rng) {
            const double u = rng.uniform();
            const double k = std::ceil(std::log(u) / log_q);
            return k < 1.0 ? 1.0 : k;
        });
}

DistributionModel shifted_chi_square_sum(int k, double sigma2) {
    if (k < 1) throw ConfigError("shifted_chi_square_sum: k must be >= 1");
    if (!(sigma2 > 0.0)) throw ConfigError("shifted_chi_square_sum: sigma2 must be > 0");
    const double sd = std::sqrt(sigma2);
    std::ostringstream os;
    os << "shifted_chi_square_sum(" << k << "," << sigma2 << ")";
    return DistributionModel(
        os.str(), 1.0 + k * sigma2, 2.0 * k * sigma2 * sigma2,
        [k, sigma2](double s) { return s - 0.5 * k * std::log1p(-2.0 * s * sigma2); },
        [k, sigma2](double s) { return 1.0 + k * sigma2 / (1.0 - 2.0 * s * sigma2); },
        [k, sigma2](double s) {
            const double d = 1.0 - 2.0 * s * sigma2;
            return 2.0 * k * sigma2 * sigma2 / (d * d);
        },
        Interval::open(-kInf, 0.5 / sigma2), Interval::open(1.0, kInf),
        [k, sd](RngStream& rng) {
            double acc = 1.0;
            for (int i = 0; i < k; ++i) {
                const double y = sd * rng.normal();
                acc += y * y;
            }
            return acc;
        });
}

DistributionModel sample_mean_sq_error(int n, double sigma2) {
    if (n < 1) throw ConfigError("sample_mean_sq_error: n must be >= 1");
    if (!(sigma2 > 0.0)) throw ConfigError("sample_mean_sq_error: sigma2 must be > 0");
    const double v = sigma2 / n;  // variance of the sample mean
    const double sd = std::sqrt(v);
    std::ostringstream os;
    os << "sample_mean_sq_error(" << n << "," << sigma2 << ")";
    return DistributionModel(
        os.str(), v, 2.0 * v * v,
        [v](double s) { return -0.5 * std::log1p(-2.0 * s * v); },
        [v](double s) { return v / (1.0 - 2.0 * s * v); },
        [v](double s) {
            const double d = 1.0 - 2.0 * s * v;
            return 2.0 * v * v / (d * d);
        },
        Interval::open(-kInf, 0.5 / v), Interval::open(0.0, kInf),
        [sd](RngStream& rng) {
            const double y = sd * rng.normal();
            return y * y;
        });
}

DistributionModel affine_of(const DistributionModel& base, double c, double b) {
    if (b == 0.0) throw ConfigError("affine_of: b must be nonzero (degenerate otherwise)");
    const Interval bd = base.cgf_domain();
    Interval dom;
    if (b > 0.0) {
        dom = Interval::open(bd.lo / b, bd.hi / b);
    } else {
        dom = Interval::open(bd.hi / b, bd.lo / b);
    }
    const Interval bs = base.support();
    Interval sup;
    if (b > 0.0) {
        sup = Interval::open(c + b * bs.lo, c + b * bs.hi);
    } else {
        sup = Interval::open(c + b * bs.hi, c + b * bs.lo);
    }
    std::ostringstream os;
    os << "affine(" << c << "+" << b << "*" << base.name() << ")";
    // copy the base by value so the result owns everything it needs
    DistributionModel inner = base;
    return DistributionModel(
        os.str(), c + b * base.mean(), b * b * base.variance(),
        [inner, c, b](double s) { return c * s + inner.cgf(b * s); },
        [inner, c, b](double s) { return c + b * inner.cgf_prime(b * s); },
        [inner, b](double s) { return b * b * inner.cgf_second(b * s); },
        dom, sup,
        [inner, c, b](RngStream& rng) { return c + b * inner.sample(rng); });
}

}  // namespace jlb
