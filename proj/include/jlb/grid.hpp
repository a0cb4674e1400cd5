#pragma once

#include <cstddef>
#include <functional>
#include <optional>

namespace jlb {

// Local refinement around the incumbent: `passes` extra sweeps, each over a
// window of ± the previous step, with the step multiplied by `shrink`.
struct Refine {
    int passes = 3;
    double shrink = 0.1;
};

// A bounded one-dimensional search grid: lo, lo+step, …, hi (the right
// endpoint is always included).  Construction validates lo < hi and
// 0 < step ≤ hi − lo.
struct GridSpec {
    double lo;
    double hi;
    double step;
    std::optional<Refine> refine;

    GridSpec(double lo, double hi, double step, std::optional<Refine> refine = std::nullopt);
};

// Objective protocol: return the value at x, or nullopt when x is
// infeasible (outside some domain); infeasible points are skipped.
using Objective1d = std::function<std::optional<double>(double)>;
using Objective2d = std::function<std::optional<double>(double, double)>;

struct GridResult {
    double argmax = 0.0;
    double max = 0.0;
    std::size_t feasible_count = 0;
    std::size_t skipped_count = 0;
};

struct Grid2dResult {
    double argmax_a = 0.0;
    double argmax_b = 0.0;
    double max = 0.0;
    std::size_t feasible_count = 0;
    std::size_t skipped_count = 0;
};

// Exhaustive maximization over the grid.  Ties resolve to the smallest
// argument; all-infeasible grids throw InfeasibleError.  With refinement,
// extra passes search shrunken windows around the incumbent (clamped to
// [lo, hi]) and can only improve the result.
GridResult grid_max(const Objective1d& objective, const GridSpec& grid);

// Product-grid maximization; ties resolve lexicographically to the
// smallest (a, b).
Grid2dResult grid_max_2d(const Objective2d& objective, const GridSpec& grid_a,
                         const GridSpec& grid_b);

}  // namespace jlb
