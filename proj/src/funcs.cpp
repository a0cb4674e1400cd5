#include "jlb/funcs.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "jlb/errors.hpp"

namespace jlb {

std::string Interval::str() const {
    std::ostringstream os;
    os << "(" << lo << ", " << hi << ")";
    return os.str();
}

const char* to_string(Convexity c) {
    switch (c) {
        case Convexity::convex: return "convex";
        case Convexity::concave: return "concave";
        case Convexity::neither: return "neither";
        default: return "unknown";
    }
}

DifferentiableFunction::DifferentiableFunction(std::string name, Fn value, Fn deriv,
                                               Interval domain, Convexity tag, Fn second)
    : name_(std::move(name)),
      value_(std::move(value)),
      deriv_(std::move(deriv)),
      second_(std::move(second)),
      domain_(domain),
      tag_(tag) {
    if (!value_ || !deriv_) throw ConfigError("function '" + name_ + "' needs value and derivative");
    if (!(domain_.lo < domain_.hi)) throw ConfigError("function '" + name_ + "' has empty domain");
}

void DifferentiableFunction::require_interior(double x) const {
    if (!domain_.contains_interior(x)) {
        std::ostringstream os;
        os << "function '" << name_ << "': x=" << x << " outside open domain " << domain_.str();
        throw DomainError(os.str());
    }
}

double DifferentiableFunction::value(double x) const {
    require_interior(x);
    return value_(x);
}

double DifferentiableFunction::deriv(double x) const {
    require_interior(x);
    return deriv_(x);
}

double DifferentiableFunction::second_deriv(double x) const {
    if (!second_) throw ConfigError("function '" + name_ + "' has no second derivative");
    require_interior(x);
    return second_(x);
}

DifferentiableFunction tangent_at(const DifferentiableFunction& f, double a) {
    const double fa = f.value(a);   // throws DomainError if a is outside
    const double fpa = f.deriv(a);
    std::ostringstream os;
    os << "tangent(" << f.name() << " @ " << a << ")";
    return DifferentiableFunction(
        os.str(),
        [fa, fpa, a](double x) { return fa + fpa * (x - a); },
        [fpa](double) { return fpa; },
        Interval::all(), Convexity::convex,
        [](double) { return 0.0; });
}

namespace {

void need_params(const std::string& name, const std::vector<double>& params, std::size_t n) {
    if (params.size() != n) {
        std::ostringstream os;
        os << "catalog '" << name << "' expects " << n << " parameter(s), got " << params.size();
        throw ConfigError(os.str());
    }
}

}  // namespace

DifferentiableFunction catalog(const std::string& name, const std::vector<double>& params) {
    if (name == "neg_log") {
        need_params(name, params, 0);
        return DifferentiableFunction(
            "neg_log",
            [](double x) { return -std::log(x); },
            [](double x) { return -1.0 / x; },
            Interval::positive(), Convexity::convex,
            [](double x) { return 1.0 / (x * x); });
    }
    if (name == "x_log_x") {
        need_params(name, params, 0);
        return DifferentiableFunction(
            "x_log_x",
            [](double x) { return x * std::log(x); },
            [](double x) { return std::log(x) + 1.0; },
            Interval::positive(), Convexity::convex,
            [](double x) { return 1.0 / x; });
    }
    if (name == "power") {
        need_params(name, params, 1);
        const double t = params[0];
        const Convexity tag = (t <= 0.0 || t >= 1.0) ? Convexity::convex : Convexity::concave;
        std::ostringstream os;
        os << "power(" << t << ")";
        return DifferentiableFunction(
            os.str(),
            [t](double x) { return std::pow(x, t); },
            [t](double x) { return t * std::pow(x, t - 1.0); },
            Interval::positive(), tag,
            [t](double x) { return t * (t - 1.0) * std::pow(x, t - 2.0); });
    }
    if (name == "exp_scale") {
        need_params(name, params, 1);
        const double s = params[0];
        std::ostringstream os;
        os << "exp_scale(" << s << ")";
        return DifferentiableFunction(
            os.str(),
            [s](double x) { return std::exp(s * x); },
            [s](double x) { return s * std::exp(s * x); },
            Interval::all(), Convexity::convex,
            [s](double x) { return s * s * std::exp(s * x); });
    }
    if (name == "half_quadratic") {
        need_params(name, params, 1);
        const double s = params[0];
        std::ostringstream os;
        os << "half_quadratic(" << s << ")";
        return DifferentiableFunction(
            os.str(),
            [s](double x) { return 0.5 * s * x * x; },
            [s](double x) { return s * x; },
            Interval::all(), s >= 0.0 ? Convexity::convex : Convexity::concave,
            [s](double) { return s; });
    }
    if (name == "log1p_gain") {
        need_params(name, params, 1);
        const double g = params[0];
        if (g == 0.0) throw ConfigError("log1p_gain: gain must be nonzero");
        std::ostringstream os;
        os << "log1p_gain(" << g << ")";
        const Interval dom = g > 0.0 ? Interval::open(-1.0 / g, Interval::all().hi)
                                     : Interval::open(Interval::all().lo, -1.0 / g);
        return DifferentiableFunction(
            os.str(),
            [g](double x) { return std::log1p(g * x); },
            [g](double x) { return g / (1.0 + g * x); },
            dom, g > 0.0 ? Convexity::concave : Convexity::convex,
            [g](double x) {
                const double d = 1.0 + g * x;
                return -g * g / (d * d);
            });
    }
    if (name == "log1p_gain_squared") {
        need_params(name, params, 1);
        const double g = params[0];
        if (g == 0.0) throw ConfigError("log1p_gain_squared: gain must be nonzero");
        std::ostringstream os;
        os << "log1p_gain_squared(" << g << ")";
        const Interval dom = g > 0.0 ? Interval::open(-1.0 / g, Interval::all().hi)
                                     : Interval::open(Interval::all().lo, -1.0 / g);
        return DifferentiableFunction(
            os.str(),
            [g](double x) {
                const double l = std::log1p(g * x);
                return l * l;
            },
            [g](double x) { return 2.0 * std::log1p(g * x) * g / (1.0 + g * x); },
            dom, Convexity::neither,
            [g](double x) {
                const double d = 1.0 + g * x;
                return 2.0 * g * g * (1.0 - std::log1p(g * x)) / (d * d);
            });
    }
    if (name == "scaled_neg_log") {
        need_params(name, params, 1);
        const double s = params[0];
        std::ostringstream os;
        os << "scaled_neg_log(" << s << ")";
        return DifferentiableFunction(
            os.str(),
            [s](double x) { return -s * std::log(x); },
            [s](double x) { return -s / x; },
            Interval::positive(), s >= 0.0 ? Convexity::convex : Convexity::concave,
            [s](double x) { return s / (x * x); });
    }
    throw ConfigError("unknown catalog function '" + name + "'");
}

DifferentiableFunction catalog_parse(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) return catalog(text);
    const std::string name = text.substr(0, colon);
    std::vector<double> params;
    std::string rest = text.substr(colon + 1);
    std::istringstream is(rest);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        try {
            std::size_t used = 0;
            params.push_back(std::stod(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw ConfigError("catalog_parse: bad numeric parameter '" + tok + "' in '" + text + "'");
        }
    }
    return catalog(name, params);
}

double central_difference(const std::function<double(double)>& fn, double x, double step) {
    return (fn(x + step) - fn(x - step)) / (2.0 * step);
}

double derivative_check_error(const DifferentiableFunction& f, double x) {
    const double step = 1e-6 * std::max(1.0, std::fabs(x));
    const double fd = central_difference([&f](double y) { return f.value(y); }, x, step);
    const double d = f.deriv(x);
    const double scale = std::max({1.0, std::fabs(d), std::fabs(fd)});
    return std::fabs(fd - d) / scale;
}

}  // namespace jlb
