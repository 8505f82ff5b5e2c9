#include "yamacone/cli.hpp"

#include "yamacone/bounds.hpp"
#include "yamacone/errors.hpp"
#include "yamacone/isoperimetry.hpp"
#include "yamacone/variational.hpp"
#include "yamacone/verify.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

namespace yamacone {

namespace {

struct RunConfig {
    std::string manifold;
    std::string format = "json";
    std::string output;
    std::string catalog;
    std::string suite = "all";
    std::string minimizer;
    int grid = 4001;
    double domain = 12.0;
    int samples = 99;
    std::uint64_t seed = 42;
    int trials = 0;
    bool confirm = false;
    MinimizeOptions minimize;
};

Catalog load_catalog(const RunConfig& cfg) {
    Catalog catalog = Catalog::builtin();
    if (!cfg.catalog.empty()) {
        std::ifstream in(cfg.catalog);
        if (!in) throw ParseError(fmt::format("cannot open catalog `{}`", cfg.catalog));
        catalog.load_json(in);
    }
    return catalog;
}

CatalogEntry require_manifold(const RunConfig& cfg) {
    if (cfg.manifold.empty()) throw ParseError("--manifold is required");
    return load_catalog(cfg).resolve(cfg.manifold);
}

int cmd_bound(const RunConfig& cfg, std::ostream& out) {
    const auto entry = require_manifold(cfg);
    CompareOptions options;
    options.confirm = cfg.confirm;
    options.grid.half_width = cfg.domain;
    options.grid.nodes = cfg.grid;
    const auto reports = compare_bounds(entry, options);
    if (cfg.format == "csv") {
        write_reports_csv(out, reports);
    } else {
        for (const auto& r : reports) out << report_json(r) << "\n";
    }
    return kExitOk;
}

void write_record(const RunConfig& cfg, const LineProblem& problem, const MinimizeResult& result,
                  std::ostream& out) {
    if (cfg.format == "csv") {
        out << "n,V,scal,value,closed_form,rel_err,residual,iterations\n";
        out << fmt::format("{},{},{},{},{},{},{},{}\n", problem.n, problem.volume, problem.scal,
                           result.value, result.closed_form, result.relative_error(),
                           result.residual, result.iterations);
    } else {
        out << minimize_record_json(problem, result) << "\n";
    }
    if (!cfg.minimizer.empty()) {
        std::ofstream file(cfg.minimizer);
        if (!file) throw ParseError(fmt::format("cannot write `{}`", cfg.minimizer));
        write_minimizer_csv(file, result.minimizer);
    }
}

int cmd_minimize(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const auto entry = require_manifold(cfg);
    const auto problem = line_problem(entry, cfg.domain, cfg.grid);
    try {
        write_record(cfg, problem, minimize_line(problem, cfg.minimize), out);
    } catch (const ConvergenceError& e) {
        write_record(cfg, problem, e.best(), out);
        err << "error: " << e.what() << "\n";
        return kExitConvergence;
    }
    return kExitOk;
}

int cmd_profile(const RunConfig& cfg, std::ostream& out) {
    const auto entry = require_manifold(cfg);
    if (cfg.samples < 2) throw ParseError("--samples must be at least 2");
    if (!(entry.lambda > 0.0))
        throw FormulaInapplicable(fmt::format("{}: the cone needs a positive Ricci bound", entry.name));
    const SphericalCone cone(entry.data());
    out << "beta,cone_perimeter,sphere_perimeter,abs_diff\n";
    for (double beta : profile_fractions(cfg.samples)) {
        const double c = cone_iso_profile(cone, beta);
        const double s = sphere_iso_profile(entry.n + 1, beta);
        out << fmt::format("{},{},{},{}\n", beta, c, s, std::abs(c - s));
    }
    return kExitOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
    const auto outcomes = run_suite(cfg.suite, VerifyOptions{cfg.seed, cfg.trials});
    return print_outcomes(out, outcomes) ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Yamabe bounds, cone profiles and symmetrization checks", "yamacone"};
    app.set_config("--config", "", "TOML/INI file with the same keys as the flags");
    app.add_option("--manifold", cfg.manifold, "sphere:<n>, cp2, rp3 or product:<a>,<b>,...");
    app.add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--output", cfg.output, "write the report here instead of stdout");
    app.add_option("--catalog", cfg.catalog, "JSON catalog with extra manifolds");
    app.add_option("--grid", cfg.grid, "line grid nodes")->check(CLI::Range(5, 10000000));
    app.add_option("--domain", cfg.domain, "line half-width T")->check(CLI::PositiveNumber);
    app.add_option("--samples", cfg.samples, "profile sample count");
    app.add_option("--seed", cfg.seed, "seed for randomized suites");
    app.add_option("--trials", cfg.trials, "randomized cases per check (0: suite default)")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--suite", cfg.suite, "curvature|symmetrization|stability|minkowski|variational|all");
    app.add_option("--minimizer", cfg.minimizer, "write the minimizer CSV here");
    app.add_flag("--confirm", cfg.confirm, "confirm the product bound with minimize_line");
    app.add_option("--max-iterations", cfg.minimize.max_iterations, "minimizer iteration cap")
        ->check(CLI::PositiveNumber);
    app.add_option("--tolerance", cfg.minimize.residual_tolerance,
                   "Euler-Lagrange residual accepted as converged")
        ->check(CLI::PositiveNumber);

    auto* bound = app.add_subcommand("bound", "compare Yamabe lower bounds");
    auto* minimize = app.add_subcommand("minimize", "minimize the line Yamabe quotient");
    auto* profile = app.add_subcommand("profile", "cone and sphere isoperimetric profiles");
    auto* verify = app.add_subcommand("verify", "run property suites");
    for (auto* sub : {bound, minimize, profile}) {
        sub->fallthrough();
        sub->add_option("manifold", cfg.manifold, "same as --manifold");
    }
    verify->fallthrough();
    app.require_subcommand(1);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return kExitParse;
    }

    std::ofstream file;
    if (!cfg.output.empty()) {
        file.open(cfg.output);
        if (!file) {
            err << "error: cannot write `" << cfg.output << "`\n";
            return kExitParse;
        }
    }
    std::ostream& sink = cfg.output.empty() ? out : file;

    try {
        if (bound->parsed()) return cmd_bound(cfg, sink);
        if (minimize->parsed()) return cmd_minimize(cfg, sink, err);
        if (profile->parsed()) return cmd_profile(cfg, sink);
        return cmd_verify(cfg, sink);
    } catch (const FormulaInapplicable& e) {
        err << "error: " << e.what() << "\n";
        return kExitInapplicable;
    } catch (const ConvergenceError& e) {
        err << "error: " << e.what() << "\n";
        return kExitConvergence;
    } catch (const std::invalid_argument& e) {  // ParseError, ValidationError
        err << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitParse;
    }
}

}  // namespace yamacone
