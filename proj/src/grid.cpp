#include "jlb/grid.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "jlb/errors.hpp"

namespace jlb {

GridSpec::GridSpec(double lo_, double hi_, double step_, std::optional<Refine> refine_)
    : lo(lo_), hi(hi_), step(step_), refine(refine_) {
    std::ostringstream os;
    if (!(std::isfinite(lo) && std::isfinite(hi) && lo < hi)) {
        os << "grid: need finite lo < hi, got [" << lo << ", " << hi << "]";
        throw ConfigError(os.str());
    }
    if (!(step > 0.0) || step > hi - lo) {
        os << "grid: need 0 < step <= hi-lo, got step " << step << " on [" << lo << ", " << hi << "]";
        throw ConfigError(os.str());
    }
    if (refine) {
        if (refine->passes < 1 || !(refine->shrink > 0.0 && refine->shrink < 1.0))
            throw ConfigError("grid: refinement needs passes >= 1 and shrink in (0,1)");
    }
}

namespace {

// Points lo, lo+step, …, plus hi if the arithmetic sequence falls short.
std::vector<double> grid_points(double lo, double hi, double step) {
    std::vector<double> pts;
    const double span = hi - lo;
    const auto n = static_cast<std::size_t>(std::floor(span / step * (1.0 + 1e-12)));
    pts.reserve(n + 2);
    for (std::size_t i = 0; i <= n; ++i) {
        double x = lo + static_cast<double>(i) * step;
        if (x > hi) x = hi;
        pts.push_back(x);
    }
    if (pts.back() < hi - 1e-12 * (std::fabs(hi) + 1.0)) pts.push_back(hi);
    return pts;
}

// One sweep; carries the incumbent in/out so refinement merges trivially.
void sweep_1d(const Objective1d& objective, double lo, double hi, double step, GridResult& best,
              bool& found) {
    for (const double x : grid_points(lo, hi, step)) {
        const auto v = objective(x);
        if (!v) {
            ++best.skipped_count;
            continue;
        }
        ++best.feasible_count;
        if (!found || *v > best.max || (*v == best.max && x < best.argmax)) {
            found = true;
            best.max = *v;
            best.argmax = x;
        }
    }
}

}  // namespace

GridResult grid_max(const Objective1d& objective, const GridSpec& grid) {
    GridResult best;
    bool found = false;
    sweep_1d(objective, grid.lo, grid.hi, grid.step, best, found);
    if (!found) throw InfeasibleError("grid_max: no feasible point on the grid");
    if (grid.refine) {
        double step = grid.step;
        for (int pass = 0; pass < grid.refine->passes; ++pass) {
            const double window = step;
            step *= grid.refine->shrink;
            const double lo = std::max(grid.lo, best.argmax - window);
            const double hi = std::min(grid.hi, best.argmax + window);
            if (!(lo < hi) || !(step > 0.0)) break;
            sweep_1d(objective, lo, hi, step, best, found);
        }
    }
    return best;
}

Grid2dResult grid_max_2d(const Objective2d& objective, const GridSpec& grid_a,
                         const GridSpec& grid_b) {
    Grid2dResult best;
    bool found = false;
    auto sweep = [&](double alo, double ahi, double astep, double blo, double bhi, double bstep) {
        for (const double a : grid_points(alo, ahi, astep)) {
            for (const double b : grid_points(blo, bhi, bstep)) {
                const auto v = objective(a, b);
                if (!v) {
                    ++best.skipped_count;
                    continue;
                }
                ++best.feasible_count;
                const bool better =
                    !found || *v > best.max ||
                    (*v == best.max &&
                     (a < best.argmax_a || (a == best.argmax_a && b < best.argmax_b)));
                if (better) {
                    found = true;
                    best.max = *v;
                    best.argmax_a = a;
                    best.argmax_b = b;
                }
            }
        }
    };
    sweep(grid_a.lo, grid_a.hi, grid_a.step, grid_b.lo, grid_b.hi, grid_b.step);
    if (!found) throw InfeasibleError("grid_max_2d: no feasible point on the grid");
    if (grid_a.refine || grid_b.refine) {
        const Refine r = grid_a.refine ? *grid_a.refine : *grid_b.refine;
        double astep = grid_a.step;
        double bstep = grid_b.step;
        for (int pass = 0; pass < r.passes; ++pass) {
            const double awin = astep;
            const double bwin = bstep;
            astep *= r.shrink;
            bstep *= r.shrink;
            const double alo = std::max(grid_a.lo, best.argmax_a - awin);
            const double ahi = std::min(grid_a.hi, best.argmax_a + awin);
            const double blo = std::max(grid_b.lo, best.argmax_b - bwin);
            const double bhi = std::min(grid_b.hi, best.argmax_b + bwin);
            if (!(alo < ahi) || !(blo < bhi)) break;
            sweep(alo, ahi, astep, blo, bhi, bstep);
        }
    }
    return best;
}

}  // namespace jlb
