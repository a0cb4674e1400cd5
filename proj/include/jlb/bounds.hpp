#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jlb/distributions.hpp"
#include "jlb/funcs.hpp"
#include "jlb/grid.hpp"

namespace jlb {

enum class Direction { lower, upper };

const char* to_string(Direction d);

// An audited bound: the numeric value, which side of the target quantity it
// sits on, the optimizing parameters, named validity conditions, the family
// identifier, and free-form notes (skipped grid points, stationarity
// diagnostics).  A result with any false validity flag must not be consumed
// as a bound; operations throw ValidityError instead of returning one unless
// stated otherwise.
struct BoundResult {
    double value = 0.0;
    Direction direction = Direction::lower;
    std::vector<std::pair<std::string, double>> optimizer;
    std::vector<std::pair<std::string, bool>> validity;
    std::string family;
    std::string notes;

    bool valid() const;
    // Looks up an optimizer entry by name.
    std::optional<double> optimizer_value(const std::string& name) const;
};

// A finite alphabet with letter probabilities (nonnegative, summing to 1
// within 1e-12); entropy() is in nats with 0·ln 0 = 0.
struct PmfTable {
    std::vector<std::string> letters;
    std::vector<double> probs;

    PmfTable(std::vector<std::string> letters, std::vector<double> probs);
    double entropy() const;
};

// ---- family: product of a convex function and a positive factor ----------
// Lower-bounds E{f(X)g(X)} (or E{f(X)g(Y)}) by f(m_xg/m_g)·m_g given
// m_g = E{g} > 0 and m_xg = E{Xg}.
BoundResult product_convex_positive(const DifferentiableFunction& f, double m_g, double m_xg,
                                    bool allow_unknown_convexity = false);

// Two lower bounds (B1, B2) on the expected plug-in entropy of N
// observations from P; always B1 ≥ B2 = H − (|letters|−1)/N.
std::pair<double, double> empirical_entropy_lower(const PmfTable& P, long N);

// Lower-bounds E{X^s} for a nonnegative X by (m_t1)^{s−t}/(m_t)^{s−t−1}
// given the t-th and (t+1)-th moments; requires s−t ≤ 0 or s−t ≥ 1.
BoundResult moment_two_point(double m_t, double m_t1, double s, double t);

// Closed form (2−p)^{s−1}/p^s for the s-th moment of the geometric guess
// count (s in [1,2]; equality at s = 1).
double guessing_moment_lower(double p, double s);

// Lower-bounds E{f(X)e^{sX}} by f(ψ'(s))·e^{ψ(s)}.
BoundResult exp_tilted(const DifferentiableFunction& f, const DistributionModel& model, double s,
                       bool allow_unknown_convexity = false);

// ---- family: exponential of a convex function -----------------------------
// Lower-bounds E{e^{f(X)}} by exp(sup_a {f(a) − a·f'(a) + ψ(f'(a))}).
BoundResult exp_of_convex(const DifferentiableFunction& f, const DistributionModel& model,
                          const GridSpec& grid, bool allow_unknown_convexity = false);

// Closed forms for E{e^{sX²/2}}, X ~ N(mu, sigma2), sigma2·s < 1:
// bound = exp(mu²s/(2(1−sigma2·s))), exact = bound/√(1−sigma2·s).
struct ExpSquareBound {
    double bound;
    double exact;
};
ExpSquareBound gaussian_exp_square(double mu, double sigma2, double s);

// ---- family: product of an exponential composition and a function ---------
// Lower-bounds E{e^{f(X)}g(X)} by sup_a e^{f(a)−a·f'(a)+ψ(f'(a))}·g(ψ'(f'(a))).
// The bound direction requires g ≥ 0 on the support of X (tangent products
// reverse where g is negative); that hypothesis is the caller's to meet.
BoundResult product_exp_composition(const DifferentiableFunction& f,
                                    const DifferentiableFunction& g,
                                    const DistributionModel& model, const GridSpec& grid,
                                    bool allow_unknown_convexity = false);

// Lower-bounds E{ln X} (support in (0,∞)) by
// e·sup_{α≥0} α·e^{ψ(−α)}·ψ'(−α)·ln ψ'(−α).  The tangent-product step
// behind this needs X·ln X ≥ 0 pointwise, so the result carries a
// "support >= 1" validity flag; unlike other operations it is returned
// (not thrown) so the caller can inspect the uncertified value.
BoundResult log_expectation_lower(const DistributionModel& model, const GridSpec& grid);

// Lower-bounds E{ln(1+ΣY_i²)}, Y_i iid N(0, sigma2), optimizing the same
// log-expectation objective in closed form; also records the plain upper
// bound ln(1+k·sigma2) and the heuristic value at α = 1/(k·sigma2).
BoundResult simo_capacity_lower(int k, double sigma2, const GridSpec& grid);

// Lower-bounds the ergodic capacity E{ln(1+gain·Z)}, Z exponential(theta);
// also records the plain upper bound ln(1+gain/theta).
BoundResult exp_snr_capacity_lower(double theta, double gain, const GridSpec& grid);

// Lower-bounds E{X^t} (support in [0,∞)) by
// sup_α (αe)^s e^{ψ(−αs)} (ψ'(−αs))^{t+s} for a fixed s with t+s ≤ 0 or ≥ 1.
BoundResult power_moment_lower(const DistributionModel& model, double t, double s,
                               const GridSpec& grid);

// Same bound with (α, s) optimized jointly over a product grid.
BoundResult power_moment_lower_joint(const DistributionModel& model, double t,
                                     const GridSpec& alpha_grid, const GridSpec& s_grid);

// Closed form (sigma^t/n^{t/2})·(ζe)^s/(1+2ζs)^{(t+1)/2+s} lower-bounding
// the t-th absolute moment of an n-sample mean error with per-sample
// variance sigma2; requires s ≥ 1−t/2 or s ≤ −t/2.
double estimation_error_moment_lower(long n, double sigma2, double t, double zeta, double s);

// Gap factor μ_t = sup over the s-grid of
// ((t+1)/(t+2s+1))^{(t+1)/2}·(e/(t+2s+1))^s, with the inner scale already
// eliminated at its closed-form optimum; returns (μ_t, maximizing s).
struct GapFactor {
    double mu_t;
    double s_star;
};
GapFactor gap_factor_mu(double t, const GridSpec& s_grid);

// ---- family: product of two convex (or two concave) functions -------------
enum class PairOrientation { convex_pair, concave_pair };

// Bounds E{f(X)g(X)} by f(a*)·g(m1) with a* = m1·g(m2/m1)/g(m1), given
// m1 = E{X} > 0 and m2 = E{X²}; lower for convex_pair, upper for
// concave_pair.  Throws ValidityError when the orientation's sign
// conditions fail.
BoundResult product_two_convex(const DifferentiableFunction& f, const DifferentiableFunction& g,
                               double m1, double m2, PairOrientation orientation,
                               bool allow_unknown_convexity = false);

// Upper-bounds Var{ln(1+gain·Z)}, Z exponential(theta), by U − L² where U
// is the concave-pair product bound on the second moment and L the
// capacity lower bound.
BoundResult capacity_variance_upper(double theta, double gain, const GridSpec& grid);

}  // namespace jlb
