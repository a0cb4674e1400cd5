#pragma once

#include <cmath>
#include <limits>
#include <string>

namespace jlb {

// An open interval (lo, hi); either end may be infinite.  Used both for
// function domains and for distribution supports (supports additionally
// expose a closed-membership test, since endpoint atoms are legitimate
// sample values).
struct Interval {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();

    static Interval all() { return {}; }
    static Interval positive() { return {0.0, std::numeric_limits<double>::infinity()}; }
    static Interval open(double lo, double hi) { return {lo, hi}; }

    bool contains_interior(double x) const { return std::isfinite(x) && x > lo && x < hi; }
    bool contains_closed(double x) const { return x >= lo && x <= hi; }

    bool is_all() const { return !std::isfinite(lo) && !std::isfinite(hi) && lo < 0 && hi > 0; }

    std::string str() const;
};

}  // namespace jlb
