#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "jlb/distributions.hpp"
#include "jlb/interval.hpp"

namespace jlb {

enum class OracleMethod { monte_carlo, quadrature, discrete_sum, closed_form };

const char* to_string(OracleMethod m);

// Ground-truth estimate from an independent computation path.
// `uncertainty` is one standard error for monte_carlo, an absolute error
// bound for quadrature/discrete_sum, and 0 for closed_form.
struct OracleEstimate {
    double value = 0.0;
    double uncertainty = 0.0;
    OracleMethod method = OracleMethod::closed_form;
    std::size_t samples_or_nodes = 0;
};

// Sample mean of h(X) over n_samples deterministic draws; the stream is a
// pure function of (seed, draw index), so the estimate is bit-for-bit
// reproducible regardless of how work might be scheduled.
OracleEstimate mc_expectation(const DistributionModel& model,
                              const std::function<double(double)>& h,
                              std::size_t n_samples, std::uint64_t seed);

// Adaptive-quadrature estimate of ∫ h·density over the support, after
// checking that the density integrates to 1 within tol.
OracleEstimate quad_expectation(const std::function<double(double)>& density,
                                Interval support,
                                const std::function<double(double)>& h, double tol);

// One enumerated atom of a discrete law.
struct PmfTerm {
    double value;
    double prob;
};

// Enumerator protocol: term(i) yields the i-th atom in enumeration order,
// or nullopt once the support is exhausted (finite laws).  For infinite
// laws, tail_bound(i) must return a bound on |Σ_{j≥i} h(value_j)·prob_j|;
// summation stops once that bound drops below tail_tol.
using PmfEnumerator = std::function<std::optional<PmfTerm>(std::size_t)>;
using TailBound = std::function<std::optional<double>(std::size_t)>;

OracleEstimate discrete_expectation(const PmfEnumerator& pmf,
                                    const std::function<double(double)>& h,
                                    double tail_tol, const TailBound& tail_bound = nullptr);

// Canned enumerators for the discrete models.
PmfEnumerator binomial_terms(int n, double p);
PmfEnumerator geometric_terms(double p);

// Tail bound for geometric summation when |h(k)| ≤ k^s (s ≥ 0): uses the
// remaining mass times a monotone envelope of the power growth.
TailBound geometric_power_tail(double p, double s);

}  // namespace jlb
