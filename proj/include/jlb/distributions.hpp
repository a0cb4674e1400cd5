#pragma once

#include <functional>
#include <string>

#include "jlb/interval.hpp"
#include "jlb/rng.hpp"

namespace jlb {

// A scalar random-variable model: first two moments, cumulant generating
// function ψ(s) = ln E{e^{sX}} with its first two derivatives on an explicit
// open domain containing 0, a support interval, and a deterministic sampler.
// Immutable after construction.
class DistributionModel {
public:
    using Scalar = std::function<double(double)>;
    using Sampler = std::function<double(RngStream&)>;

    DistributionModel() = default;
    DistributionModel(std::string name, double mean, double variance, Scalar cgf,
                      Scalar cgf_prime, Scalar cgf_second, Interval cgf_domain,
                      Interval support, Sampler sampler);

    const std::string& name() const { return name_; }
    double mean() const { return mean_; }
    double variance() const { return variance_; }
    const Interval& cgf_domain() const { return cgf_domain_; }
    const Interval& support() const { return support_; }

    double cgf(double s) const;
    double cgf_prime(double s) const;
    double cgf_second(double s) const;
    // E{e^{sX}} = exp(cgf(s)).
    double mgf(double s) const;

    double sample(RngStream& rng) const;

    bool cgf_defined_at(double s) const { return cgf_domain_.contains_interior(s); }

private:
    void require_in_domain(double s) const;

    std::string name_ = "<unset>";
    double mean_ = 0.0;
    double variance_ = 0.0;
    Scalar cgf_, cgf_prime_, cgf_second_;
    Interval cgf_domain_ = Interval::all();
    Interval support_ = Interval::all();
    Sampler sampler_;
};

// N(mu, sigma2): ψ(s) = mu·s + sigma2·s²/2 on all reals.
DistributionModel gaussian(double mu, double sigma2);

// Exponential rate theta: density θe^{−θz} on z ≥ 0, ψ(s) = ln θ − ln(θ−s)
// on (−∞, θ).
DistributionModel exponential(double theta);

// Sum of n Bernoulli(p): ψ(s) = n·ln(p·e^s + q), support {0,…,n}.
DistributionModel bernoulli_sum(int n, double p);

// Geometric on {1,2,…} with success probability p: pmf p(1−p)^{k−1},
// ψ(s) = ln p + s − ln(1−(1−p)e^s) on (−∞, −ln(1−p)); p=1 is the point
// mass at 1.
DistributionModel geometric(double p);

// X = 1 + Σ_{i=1}^k Y_i² with Y_i iid N(0, sigma2):
// ψ(s) = s − (k/2)·ln(1−2s·sigma2) on (−∞, 1/(2·sigma2)).
DistributionModel shifted_chi_square_sum(int k, double sigma2);

// Squared error of an n-sample mean with per-sample variance sigma2:
// ψ(s) = −½·ln(1−2s·sigma2/n) on (−∞, n/(2·sigma2)).  The sampler squares
// a centered Gaussian of variance sigma2/n (Gaussian surrogate — the
// stated CGF is exact only for Gaussian summands, so the oracle matches
// the bound's own assumptions).
DistributionModel sample_mean_sq_error(int n, double sigma2);

// X = c + bY for an existing model of Y (b ≠ 0):
// ψ_X(s) = c·s + ψ_Y(b·s), domain and support rescaled accordingly.
DistributionModel affine_of(const DistributionModel& base, double c, double b);

}  // namespace jlb
