#pragma once

#include <functional>
#include <string>
#include <vector>

#include "jlb/interval.hpp"

namespace jlb {

enum class Convexity { convex, concave, neither, unknown };

const char* to_string(Convexity c);

// A scalar function on an open interval, carrying its derivative, an
// optional second derivative, and a declared curvature tag.  Evaluation
// outside the open domain throws DomainError (fail fast over silent
// infinities).  Immutable after construction.
class DifferentiableFunction {
public:
    using Fn = std::function<double(double)>;

    DifferentiableFunction() = default;
    DifferentiableFunction(std::string name, Fn value, Fn deriv, Interval domain,
                           Convexity tag, Fn second = nullptr);

    double value(double x) const;
    double deriv(double x) const;
    bool has_second_deriv() const { return static_cast<bool>(second_); }
    double second_deriv(double x) const;

    const Interval& domain() const { return domain_; }
    Convexity convexity() const { return tag_; }
    const std::string& name() const { return name_; }

private:
    void require_interior(double x) const;

    std::string name_ = "<unset>";
    Fn value_, deriv_, second_;
    Interval domain_ = Interval::all();
    Convexity tag_ = Convexity::unknown;
};

// The affine minorant/majorant of f at a: x ↦ f(a) + f'(a)(x−a).
// Domain is all reals; tagged convex (an affine function is both).
DifferentiableFunction tangent_at(const DifferentiableFunction& f, double a);

// Named function catalog.  Recognized names (with required parameter count):
//   neg_log            −ln x          on (0,∞)     convex
//   x_log_x            x ln x         on (0,∞)     convex
//   power(t)           x^t            on (0,∞)     convex iff t≤0 or t≥1, else concave
//   exp_scale(s)       e^{sx}         on ℝ         convex
//   half_quadratic(s)  s·x²/2         on ℝ         convex for s≥0, else concave
//   log1p_gain(g)      ln(1+gx)       on (−1/g,∞)  concave for g>0
//   log1p_gain_squared(g)  ln²(1+gx)  on (−1/g,∞)  neither (curvature flips)
//   scaled_neg_log(s)  −s·ln x        on (0,∞)     convex for s≥0, else concave
DifferentiableFunction catalog(const std::string& name, const std::vector<double>& params = {});

// Parses "name" or "name:p1[,p2…]" and dispatches to catalog().
DifferentiableFunction catalog_parse(const std::string& text);

// Central finite difference of fn at x with the given step.
double central_difference(const std::function<double(double)>& fn, double x, double step);

// Relative mismatch between f.deriv(x) and the central difference of
// f.value at step 1e-6·max(1,|x|).
double derivative_check_error(const DifferentiableFunction& f, double x);

}  // namespace jlb
