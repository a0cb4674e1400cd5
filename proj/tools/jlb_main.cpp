// Command-line front end: figure sweeps as CSV, single bound evaluations,
// and the self-verification suite.
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "jlb/bounds.hpp"
#include "jlb/checks.hpp"
#include "jlb/distributions.hpp"
#include "jlb/errors.hpp"
#include "jlb/figures.hpp"
#include "jlb/funcs.hpp"
#include "jlb/grid.hpp"

namespace {

using namespace jlb;

void write_rows(const std::string& path, const std::vector<FigureRow>& rows) {
    if (path == "stdout" || path == "-") {
        write_csv(std::cout, rows);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file: " + path);
    write_csv(out, rows);
}

int run_verify(std::uint64_t seed, bool inject_failure) {
    auto results = run_property_checks(seed);
    auto acceptance = run_acceptance_checks(seed, inject_failure);
    results.insert(results.end(), acceptance.begin(), acceptance.end());

    std::size_t passed = 0;
    nlohmann::json failures = nlohmann::json::array();
    for (const auto& r : results) {
        std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << ": " << r.detail << "\n";
        if (r.pass) {
            ++passed;
        } else {
            failures.push_back({{"id", r.id}, {"detail", r.detail}});
        }
    }
    std::cout << "summary: " << passed << "/" << results.size() << " checks passed\n";
    if (failures.empty()) return 0;
    const nlohmann::json report{{"failed", failures},
                                {"passed", passed},
                                {"total", results.size()},
                                {"seed", seed}};
    std::cout << "failure-report: " << report.dump() << "\n";
    return 1;
}

// ------------------------------------------------------------- bound params

// key=value parameters for the `bound` subcommand; every key must be
// consumed exactly once.
class ParamBag {
public:
    explicit ParamBag(const std::vector<std::string>& kvs) {
        for (const auto& kv : kvs) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos || eq == 0)
                throw ConfigError("parameter must look like key=value: " + kv);
            if (!values_.emplace(kv.substr(0, eq), kv.substr(eq + 1)).second)
                throw ConfigError("duplicate parameter: " + kv.substr(0, eq));
        }
    }

    double num(const std::string& key) { return to_num(key, take(key)); }

    double num_or(const std::string& key, double fallback) {
        const auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        return num(key);
    }

    int integer(const std::string& key) {
        const double v = num(key);
        if (v != std::floor(v) || std::fabs(v) > 1e9)
            throw ConfigError("parameter " + key + " must be an integer");
        return static_cast<int>(v);
    }

    std::string str(const std::string& key) { return take(key); }

    std::vector<double> num_list(const std::string& key) {
        const std::string text = take(key);
        std::vector<double> out;
        std::size_t start = 0;
        while (start <= text.size()) {
            const auto comma = text.find(',', start);
            const std::string piece =
                text.substr(start, comma == std::string::npos ? std::string::npos
                                                              : comma - start);
            out.push_back(to_num(key, piece));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        return out;
    }

    void finish() const {
        if (!values_.empty())
            throw ConfigError("unknown parameter: " + values_.begin()->first);
    }

private:
    std::string take(const std::string& key) {
        const auto it = values_.find(key);
        if (it == values_.end()) throw ConfigError("missing parameter: " + key);
        std::string v = it->second;
        values_.erase(it);
        return v;
    }

    static double to_num(const std::string& key, const std::string& text) {
        try {
            std::size_t pos = 0;
            const double v = std::stod(text, &pos);
            if (pos != text.size()) throw std::invalid_argument(text);
            return v;
        } catch (const std::exception&) {
            throw ConfigError("parameter " + key + " is not a number: '" + text + "'");
        }
    }

    std::map<std::string, std::string> values_;
};

int as_count(double v, const std::string& what) {
    if (v != std::floor(v) || v < 1.0 || v > 1e9)
        throw ConfigError(what + " must be a positive integer");
    return static_cast<int>(v);
}

// Parses "name" or "name:p1[,p2]" into a distribution model.
DistributionModel parse_model(const std::string& text) {
    std::string name = text;
    std::vector<double> params;
    const auto colon = text.find(':');
    if (colon != std::string::npos) {
        name = text.substr(0, colon);
        std::string rest = text.substr(colon + 1);
        std::size_t start = 0;
        while (start <= rest.size()) {
            const auto comma = rest.find(',', start);
            const std::string piece =
                rest.substr(start, comma == std::string::npos ? std::string::npos
                                                              : comma - start);
            try {
                std::size_t pos = 0;
                params.push_back(std::stod(piece, &pos));
                if (pos != piece.size()) throw std::invalid_argument(piece);
            } catch (const std::exception&) {
                throw ConfigError("bad model parameter '" + piece + "' in: " + text);
            }
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
    }
    const auto need = [&](std::size_t n) {
        if (params.size() != n)
            throw ConfigError("model " + name + " takes " + std::to_string(n) +
                              " parameter(s)");
    };
    if (name == "gaussian") {
        need(2);
        return gaussian(params[0], params[1]);
    }
    if (name == "exponential") {
        need(1);
        return exponential(params[0]);
    }
    if (name == "bernoulli_sum") {
        need(2);
        return bernoulli_sum(as_count(params[0], "bernoulli_sum n"), params[1]);
    }
    if (name == "geometric") {
        need(1);
        return geometric(params[0]);
    }
    if (name == "shifted_chi_square_sum") {
        need(2);
        return shifted_chi_square_sum(as_count(params[0], "shifted_chi_square_sum k"),
                                      params[1]);
    }
    if (name == "sample_mean_sq_error") {
        need(2);
        return sample_mean_sq_error(as_count(params[0], "sample_mean_sq_error n"), params[1]);
    }
    if (name == "point_mass") {
        need(1);
        return affine_of(geometric(1.0), params[0] - 1.0, 1.0);
    }
    throw ConfigError("unknown model: " + text +
                      " (expected gaussian:mu,sigma2 | exponential:theta | "
                      "bernoulli_sum:n,p | geometric:p | shifted_chi_square_sum:k,sigma2 | "
                      "sample_mean_sq_error:n,sigma2 | point_mass:c)");
}

void print_bound(const std::string& op, const BoundResult& r) {
    std::cout << "op: " << op << "\n";
    std::cout << "family: " << r.family << "\n";
    std::cout << "direction: " << to_string(r.direction) << "\n";
    std::cout << "value: " << format_sig(r.value) << "\n";
    for (const auto& [k, v] : r.optimizer)
        std::cout << "optimizer " << k << ": " << format_sig(v) << "\n";
    for (const auto& [k, v] : r.validity)
        std::cout << "validity " << k << ": " << (v ? "true" : "false") << "\n";
    if (!r.notes.empty()) std::cout << "notes: " << r.notes << "\n";
}

PairOrientation parse_orientation(const std::string& text) {
    if (text == "convex" || text == "convex_pair") return PairOrientation::convex_pair;
    if (text == "concave" || text == "concave_pair") return PairOrientation::concave_pair;
    throw ConfigError("orientation must be convex or concave, got: " + text);
}

int run_bound(const std::string& op, const std::vector<std::string>& kvs, double resolution,
              double alpha_max) {
    ParamBag bag(kvs);
    const GridSpec grid(0.0, alpha_max, resolution);

    if (op == "product_convex_positive") {
        const auto f = catalog_parse(bag.str("f"));
        const double m_g = bag.num("m_g");
        const double m_xg = bag.num("m_xg");
        bag.finish();
        print_bound(op, product_convex_positive(f, m_g, m_xg));
        return 0;
    }
    if (op == "empirical_entropy_lower") {
        const auto probs = bag.num_list("probs");
        const long n = as_count(bag.num("n"), "n");
        bag.finish();
        std::vector<std::string> letters(probs.size());
        for (std::size_t i = 0; i < probs.size(); ++i)
            letters[i] = std::string(1, static_cast<char>('a' + (i % 26)));
        const PmfTable table(letters, probs);
        const auto [b1, b2] = empirical_entropy_lower(table, n);
        std::cout << "op: " << op << "\n";
        std::cout << "entropy: " << format_sig(table.entropy()) << "\n";
        std::cout << "b1: " << format_sig(b1) << "\n";
        std::cout << "b2: " << format_sig(b2) << "\n";
        return 0;
    }
    if (op == "moment_two_point") {
        const double m_t = bag.num("m_t");
        const double m_t1 = bag.num("m_t1");
        const double s = bag.num("s");
        const double t = bag.num("t");
        bag.finish();
        print_bound(op, moment_two_point(m_t, m_t1, s, t));
        return 0;
    }
    if (op == "guessing_moment_lower") {
        const double p = bag.num("p");
        const double s = bag.num("s");
        bag.finish();
        std::cout << "op: " << op << "\n";
        std::cout << "value: " << format_sig(guessing_moment_lower(p, s)) << "\n";
        return 0;
    }
    if (op == "exp_tilted") {
        const auto f = catalog_parse(bag.str("f"));
        const auto model = parse_model(bag.str("model"));
        const double s = bag.num("s");
        bag.finish();
        print_bound(op, exp_tilted(f, model, s));
        return 0;
    }
    if (op == "exp_of_convex") {
        const auto f = catalog_parse(bag.str("f"));
        const auto model = parse_model(bag.str("model"));
        bag.finish();
        print_bound(op, exp_of_convex(f, model, grid));
        return 0;
    }
    if (op == "gaussian_exp_square") {
        const double mu = bag.num("mu");
        const double sigma2 = bag.num("sigma2");
        const double s = bag.num("s");
        bag.finish();
        const auto r = gaussian_exp_square(mu, sigma2, s);
        std::cout << "op: " << op << "\n";
        std::cout << "bound: " << format_sig(r.bound) << "\n";
        std::cout << "exact: " << format_sig(r.exact) << "\n";
        return 0;
    }
    if (op == "product_exp_composition") {
        const auto f = catalog_parse(bag.str("f"));
        const auto g = catalog_parse(bag.str("g"));
        const auto model = parse_model(bag.str("model"));
        bag.finish();
        print_bound(op, product_exp_composition(f, g, model, grid));
        return 0;
    }
    if (op == "log_expectation_lower") {
        const auto model = parse_model(bag.str("model"));
        bag.finish();
        print_bound(op, log_expectation_lower(model, grid));
        return 0;
    }
    if (op == "simo_capacity_lower") {
        const int k = bag.integer("k");
        const double sigma2 = bag.num("sigma2");
        bag.finish();
        print_bound(op, simo_capacity_lower(k, sigma2, grid));
        return 0;
    }
    if (op == "exp_snr_capacity_lower") {
        const double theta = bag.num("theta");
        const double gain = bag.num("gain");
        bag.finish();
        print_bound(op, exp_snr_capacity_lower(theta, gain, grid));
        return 0;
    }
    if (op == "power_moment_lower") {
        const auto model = parse_model(bag.str("model"));
        const double t = bag.num("t");
        const double s = bag.num("s");
        bag.finish();
        print_bound(op, power_moment_lower(model, t, s, grid));
        return 0;
    }
    if (op == "power_moment_joint") {
        const auto model = parse_model(bag.str("model"));
        const double t = bag.num("t");
        const double s_lo = bag.num_or("s_lo", 0.5);
        const double s_hi = bag.num_or("s_hi", 10.0);
        bag.finish();
        print_bound(op, power_moment_lower_joint(model, t, grid,
                                                 GridSpec(s_lo, s_hi, resolution)));
        return 0;
    }
    if (op == "estimation_error_moment_lower") {
        const long n = as_count(bag.num("n"), "n");
        const double sigma2 = bag.num("sigma2");
        const double t = bag.num("t");
        const double zeta = bag.num("zeta");
        const double s = bag.num("s");
        bag.finish();
        std::cout << "op: " << op << "\n";
        std::cout << "value: " << format_sig(estimation_error_moment_lower(n, sigma2, t, zeta, s))
                  << "\n";
        return 0;
    }
    if (op == "gap_factor_mu") {
        const double t = bag.num("t");
        bag.finish();
        const auto r = gap_factor_mu(t, GridSpec(1.0 - t / 2.0 + 1e-9, alpha_max, resolution));
        std::cout << "op: " << op << "\n";
        std::cout << "mu_t: " << format_sig(r.mu_t) << "\n";
        std::cout << "s_star: " << format_sig(r.s_star) << "\n";
        return 0;
    }
    if (op == "product_two_convex") {
        const auto f = catalog_parse(bag.str("f"));
        const auto g = catalog_parse(bag.str("g"));
        const double m1 = bag.num("m1");
        const double m2 = bag.num("m2");
        const auto orientation = parse_orientation(bag.str("orientation"));
        bag.finish();
        print_bound(op, product_two_convex(f, g, m1, m2, orientation));
        return 0;
    }
    if (op == "capacity_variance_upper") {
        const double theta = bag.num("theta");
        const double gain = bag.num("gain");
        bag.finish();
        print_bound(op, capacity_variance_upper(theta, gain, grid));
        return 0;
    }
    throw ConfigError(
        "unknown operation: " + op +
        " (available: product_convex_positive, empirical_entropy_lower, moment_two_point, "
        "guessing_moment_lower, exp_tilted, exp_of_convex, gaussian_exp_square, "
        "product_exp_composition, log_expectation_lower, simo_capacity_lower, "
        "exp_snr_capacity_lower, power_moment_lower, power_moment_joint, "
        "estimation_error_moment_lower, gap_factor_mu, product_two_convex, "
        "capacity_variance_upper)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Jensen-like lower bounds: figure sweeps, single bounds, self-verification"};
    app.require_subcommand(1);

    Fig1Options o1;
    std::string out1 = "stdout";
    bool no_oracle1 = false;
    auto* fig1 = app.add_subcommand("fig1", "Capacity bounds vs diversity order k (CSV)");
    fig1->add_option("--sigma2", o1.sigma2, "per-branch variance")->capture_default_str();
    fig1->add_option("--k-max", o1.k_max, "largest diversity order")->capture_default_str();
    fig1->add_option("--resolution", o1.resolution, "alpha grid step")->capture_default_str();
    fig1->add_option("--alpha-max", o1.alpha_max, "alpha grid upper end")->capture_default_str();
    fig1->add_option("--samples", o1.samples, "Monte Carlo samples per row")
        ->capture_default_str();
    fig1->add_option("--seed", o1.seed, "Monte Carlo seed")->capture_default_str();
    fig1->add_flag("--no-oracle", no_oracle1, "skip the Monte Carlo oracle column");
    fig1->add_option("--output", out1, "output path or 'stdout'")->capture_default_str();

    Fig2Options o2;
    std::string out2 = "stdout";
    bool no_oracle2 = false;
    auto* fig2 = app.add_subcommand("fig2", "Capacity bounds vs SNR decay rate theta (CSV)");
    fig2->add_option("--gain", o2.gain, "channel gain")->capture_default_str();
    fig2->add_option("--theta-lo", o2.theta_lo, "first theta")->capture_default_str();
    fig2->add_option("--theta-hi", o2.theta_hi, "last theta")->capture_default_str();
    fig2->add_option("--theta-step", o2.theta_step, "theta increment")->capture_default_str();
    fig2->add_option("--resolution", o2.resolution, "alpha grid step")->capture_default_str();
    fig2->add_option("--alpha-max", o2.alpha_max, "alpha grid upper end")->capture_default_str();
    fig2->add_option("--quad-tol", o2.quad_tol, "quadrature oracle tolerance")
        ->capture_default_str();
    fig2->add_flag("--no-oracle", no_oracle2, "skip the quadrature oracle column");
    fig2->add_option("--output", out2, "output path or 'stdout'")->capture_default_str();

    Fig3Options o3;
    std::string out3 = "stdout";
    bool no_oracle3 = false;
    auto* fig3 = app.add_subcommand("fig3", "Fractional-moment bounds vs sample count n (CSV)");
    fig3->add_option("--p", o3.p, "per-trial success probability")->capture_default_str();
    fig3->add_option("--n-max", o3.n_max, "largest trial count")->capture_default_str();
    fig3->add_option("--t", o3.t, "moment order")->capture_default_str();
    fig3->add_option("--resolution", o3.resolution, "alpha and s grid step")
        ->capture_default_str();
    fig3->add_option("--alpha-max", o3.alpha_max, "alpha grid upper end")->capture_default_str();
    fig3->add_option("--s-lo", o3.s_lo, "s grid lower end")->capture_default_str();
    fig3->add_option("--s-hi", o3.s_hi, "s grid upper end")->capture_default_str();
    fig3->add_flag("--no-oracle", no_oracle3, "skip the exact-summation oracle column");
    fig3->add_option("--output", out3, "output path or 'stdout'")->capture_default_str();

    Fig4Options o4;
    std::string out4 = "stdout";
    auto* fig4 = app.add_subcommand("fig4", "Gap factor mu_t vs moment order t (CSV)");
    fig4->add_option("--t-lo", o4.t_lo, "first t")->capture_default_str();
    fig4->add_option("--t-hi", o4.t_hi, "last t")->capture_default_str();
    fig4->add_option("--t-step", o4.t_step, "t increment")->capture_default_str();
    fig4->add_option("--resolution", o4.s_resolution, "s grid step")->capture_default_str();
    fig4->add_option("--alpha-max", o4.s_max, "s grid upper end")->capture_default_str();
    fig4->add_option("--output", out4, "output path or 'stdout'")->capture_default_str();

    std::uint64_t verify_seed = 1;
    bool inject_failure = false;
    auto* verify = app.add_subcommand("verify", "Run the full property and acceptance suites");
    verify->add_option("--seed", verify_seed, "seed for randomized checks")
        ->capture_default_str();
    verify->add_flag("--inject-failure", inject_failure)->group("");

    std::string bound_op;
    std::vector<std::string> bound_params;
    double bound_resolution = 0.001;
    double bound_alpha_max = 10.0;
    auto* bound = app.add_subcommand("bound", "Evaluate a single bound by operation name");
    bound->add_option("op", bound_op, "operation name")->required();
    bound->add_option("params", bound_params, "key=value parameters (e.g. theta=1 gain=5)");
    bound->add_option("--resolution", bound_resolution, "search grid step")
        ->capture_default_str();
    bound->add_option("--alpha-max", bound_alpha_max, "search grid upper end")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (fig1->parsed()) {
            o1.with_oracle = !no_oracle1;
            write_rows(out1, fig1_rows(o1));
            return 0;
        }
        if (fig2->parsed()) {
            o2.with_oracle = !no_oracle2;
            write_rows(out2, fig2_rows(o2));
            return 0;
        }
        if (fig3->parsed()) {
            o3.with_oracle = !no_oracle3;
            write_rows(out3, fig3_rows(o3));
            return 0;
        }
        if (fig4->parsed()) {
            write_rows(out4, fig4_rows(o4));
            return 0;
        }
        if (verify->parsed()) return run_verify(verify_seed, inject_failure);
        if (bound->parsed()) return run_bound(bound_op, bound_params, bound_resolution,
                                              bound_alpha_max);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const SingularityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
