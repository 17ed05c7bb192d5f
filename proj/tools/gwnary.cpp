#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gwnary/critical.hpp"
#include "gwnary/errors.hpp"
#include "gwnary/mc.hpp"
#include "gwnary/report_io.hpp"
#include "gwnary/solve.hpp"
#include "gwnary/survival.hpp"
#include "gwnary/validate.hpp"

namespace {

// exit codes: 0 ok, 1 validate failures, 2 bad input, 3 solver trouble,
// 4 no sign change in a threshold search, 5 degenerate root where survival
// quantities were requested, 6 untrustworthy Monte Carlo estimate
constexpr int kExitValidate = 1;
constexpr int kExitParse = 2;
constexpr int kExitSolver = 3;
constexpr int kExitNoSignChange = 4;
constexpr int kExitDegenerateRoot = 5;
constexpr int kExitBudget = 6;

void emit(const std::string& text, const std::string& path) {
    if (!path.empty()) {
        std::ofstream file(path);
        if (!file) throw std::runtime_error("cannot write to '" + path + "'");
        file << text << '\n';
    }
    std::cout << text << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"complete N-ary subtrees of Galton-Watson trees"};
    app.require_subcommand(1);
    std::function<int()> action;

    // ---- gamma ----
    auto* gamma_cmd = app.add_subcommand("gamma", "smallest root of g_N(s) = s");
    {
        auto spec_text = std::make_shared<std::string>();
        auto arity = std::make_shared<int>(2);
        auto tol = std::make_shared<double>(1e-12);
        auto out = std::make_shared<std::string>();
        gamma_cmd->add_option("--spec", *spec_text, "offspring spec, e.g. geometric:p=0.8")
            ->required();
        gamma_cmd->add_option("--N", *arity, "subtree arity")->required()->check(CLI::PositiveNumber);
        gamma_cmd->add_option("--tol", *tol, "root tolerance");
        gamma_cmd->add_option("--out", *out, "also write the JSON report to this file");
        gamma_cmd->callback([&action, spec_text, arity, tol, out] {
            action = [=] {
                const gwnary::SubtreeGF gf(gwnary::parse_spec(*spec_text), *arity);
                emit(gwnary::to_json(gwnary::smallest_root(gf, *tol)), *out);
                return 0;
            };
        });
    }

    // ---- critical ----
    auto* critical_cmd = app.add_subcommand("critical", "critical parameter of a family");
    {
        auto family = std::make_shared<std::string>();
        auto arity = std::make_shared<int>(2);
        auto r = std::make_shared<int>(0);
        auto n_binom = std::make_shared<int>(0);
        auto lo = std::make_shared<double>(0.0);
        auto hi = std::make_shared<double>(0.0);
        auto tol = std::make_shared<double>(1e-9);
        auto out = std::make_shared<std::string>();
        critical_cmd
            ->add_option("--family", *family, "geometric | poisson | one-or-many | binomial")
            ->required()
            ->check(CLI::IsMember({"geometric", "poisson", "one-or-many", "binomial"}));
        critical_cmd->add_option("--N", *arity, "subtree arity")
            ->required()
            ->check(CLI::PositiveNumber);
        auto* r_opt = critical_cmd->add_option("--r", *r, "one-or-many arity (default N+1)");
        auto* n_opt = critical_cmd->add_option("--n", *n_binom, "binomial trial count");
        auto* lo_opt = critical_cmd->add_option("--lo", *lo, "search range lower end");
        auto* hi_opt = critical_cmd->add_option("--hi", *hi, "search range upper end");
        critical_cmd->add_option("--tol", *tol, "parameter tolerance");
        critical_cmd->add_option("--out", *out, "also write the JSON report to this file");
        critical_cmd->callback([&action, family, arity, r, n_binom, lo, hi, tol, out, r_opt,
                                n_opt, lo_opt, hi_opt] {
            const bool has_r = r_opt->count() > 0;
            const bool has_n = n_opt->count() > 0;
            const bool has_range = lo_opt->count() > 0 && hi_opt->count() > 0;
            action = [=] {
                gwnary::ParametricFamily slice = gwnary::ParametricFamily::geometric();
                if (*family == "poisson") slice = gwnary::ParametricFamily::poisson();
                if (*family == "one-or-many")
                    slice = gwnary::ParametricFamily::one_or_many(has_r ? *r : *arity + 1);
                if (*family == "binomial") {
                    if (!has_n) throw std::domain_error("binomial requires --n");
                    slice = gwnary::ParametricFamily::binomial(*n_binom);
                }
                const auto range = has_range ? std::pair{*lo, *hi} : slice.default_range();
                emit(gwnary::to_json(gwnary::find_critical(slice, *arity, range, *tol)), *out);
                return 0;
            };
        });
    }

    // ---- survival ----
    auto* survival_cmd =
        app.add_subcommand("survival", "finite-horizon survival curve and decay fit");
    {
        auto spec_text = std::make_shared<std::string>();
        auto arity = std::make_shared<int>(2);
        auto t_max = std::make_shared<int>(10000);
        auto tol = std::make_shared<double>(1e-12);
        auto csv = std::make_shared<std::string>();
        auto out = std::make_shared<std::string>();
        survival_cmd->add_option("--spec", *spec_text, "offspring spec")->required();
        survival_cmd->add_option("--N", *arity, "subtree arity")
            ->required()
            ->check(CLI::PositiveNumber);
        survival_cmd->add_option("--t-max", *t_max, "horizon limit");
        survival_cmd->add_option("--tol", *tol, "root tolerance");
        survival_cmd->add_option("--csv", *csv, "write the curve CSV here instead of stdout");
        survival_cmd->add_option("--out", *out, "also write the fit JSON to this file");
        survival_cmd->callback([&action, spec_text, arity, t_max, tol, csv, out] {
            action = [=] {
                const gwnary::SubtreeGF gf(gwnary::parse_spec(*spec_text), *arity);
                const auto root = gwnary::smallest_root(gf, *tol);
                const auto curve = gwnary::iterate_survival(gf, root, *t_max);
                const auto fit = gwnary::fit_asymptote(curve, root);
                const std::string fit_json = gwnary::to_json(curve, fit);
                if (!csv->empty()) {
                    std::ofstream file(*csv);
                    if (!file) throw std::runtime_error("cannot write to '" + *csv + "'");
                    gwnary::write_curve_csv(file, curve, root, fit);
                    emit(fit_json, *out);
                } else {
                    gwnary::write_curve_csv(std::cout, curve, root, fit);
                    std::cout << "# fit " << fit_json << '\n';
                    if (!out->empty()) emit(fit_json, *out);
                }
                return 0;
            };
        });
    }

    // ---- simulate ----
    auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo estimate of gamma_{N,t}");
    {
        auto spec_text = std::make_shared<std::string>();
        auto arity = std::make_shared<int>(2);
        auto horizon = std::make_shared<int>(1);
        auto trials = std::make_shared<std::int64_t>(100000);
        auto seed = std::make_shared<std::uint64_t>(1);
        auto budget = std::make_shared<std::int64_t>(10000000);
        auto serial = std::make_shared<bool>(false);
        auto out = std::make_shared<std::string>();
        simulate_cmd->add_option("--spec", *spec_text, "offspring spec")->required();
        simulate_cmd->add_option("--N", *arity, "subtree arity")
            ->required()
            ->check(CLI::PositiveNumber);
        simulate_cmd->add_option("--t", *horizon, "depth horizon")->required()
            ->check(CLI::NonNegativeNumber);
        simulate_cmd->add_option("--trials", *trials, "number of trials");
        simulate_cmd->add_option("--seed", *seed, "stream seed");
        simulate_cmd->add_option("--budget", *budget, "offspring samples allowed per trial");
        simulate_cmd->add_flag("--serial", *serial, "use the single-threaded reference engine");
        simulate_cmd->add_option("--out", *out, "also write the JSON estimate to this file");
        simulate_cmd->callback([&action, spec_text, arity, horizon, trials, seed, budget, serial,
                                out] {
            action = [=] {
                gwnary::McConfig config{gwnary::parse_spec(*spec_text), *arity, *horizon,
                                        *trials, *seed, *budget};
                const auto estimate = *serial ? gwnary::estimate_gamma_nt_serial(config)
                                              : gwnary::estimate_gamma_nt(config);
                emit(gwnary::to_json(estimate), *out);
                return 0;
            };
        });
    }

    // ---- validate ----
    auto* validate_cmd = app.add_subcommand("validate", "run the reproduction suite");
    {
        auto ids = std::make_shared<std::vector<int>>();
        validate_cmd->add_option("--criteria", *ids, "subset of criteria to run (default all)");
        validate_cmd->callback([&action, ids] {
            action = [=] {
                const auto results = gwnary::run_criteria(*ids);
                return gwnary::print_suite_results(results, std::cout) == 0 ? 0 : kExitValidate;
            };
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitParse;
    }

    try {
        return action();
    } catch (const gwnary::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitParse;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitParse;
    } catch (const gwnary::NoSignChangeError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNoSignChange;
    } catch (const gwnary::DegenerateRootError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDegenerateRoot;
    } catch (const gwnary::BudgetExceededError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBudget;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitSolver;
    }
}
