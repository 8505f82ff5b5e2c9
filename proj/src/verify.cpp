#include "yamacone/verify.hpp"

#include "yamacone/bounds.hpp"
#include "yamacone/errors.hpp"
#include "yamacone/geometry.hpp"
#include "yamacone/isoperimetry.hpp"
#include "yamacone/random.hpp"
#include "yamacone/symmetrization.hpp"
#include "yamacone/variational.hpp"

#include <json.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <ostream>

namespace yamacone {

namespace {

constexpr double kPi = std::numbers::pi;
using Json = nlohmann::ordered_json;

// Worst value of one property over its cases; the first failure is kept.
class Check {
public:
    Check(std::string suite, std::string name, std::string tolerance)
        : suite_(std::move(suite)), name_(std::move(name)), tolerance_(std::move(tolerance)) {}

    void observe(double measure, bool ok, const Json& context) {
        ++cases_;
        if (!std::isnan(measure)) worst_ = std::max(worst_, measure);
        if (!ok && passed_) {
            passed_ = false;
            Json j;
            j["suite"] = suite_;
            j["check"] = name_;
            for (const auto& [k, v] : context.items()) j[k] = v;
            counterexample_ = j.dump();
        }
    }

    void fail(const std::string& message, const Json& context) {
        Json c = context;
        c["error"] = message;
        observe(std::numeric_limits<double>::quiet_NaN(), false, c);
    }

    CheckOutcome outcome() const {
        return CheckOutcome{suite_, name_, passed_,
                            fmt::format("worst {:.3e} vs {} over {} cases", worst_, tolerance_, cases_),
                            counterexample_};
    }

private:
    std::string suite_, name_, tolerance_;
    double worst_ = -std::numeric_limits<double>::infinity();
    int cases_ = 0;
    bool passed_ = true;
    std::string counterexample_;
};

double relative(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// Five-point derivative with a step scaled to the distance from the vertices.
double derivative(const std::function<double(double)>& f, double t) {
    const double h = 1e-3 * std::min(t, kPi - t);
    return (-f(t + 2 * h) + 8 * f(t + h) - 8 * f(t - h) + f(t - 2 * h)) / (12 * h);
}

int trials_or(const VerifyOptions& o, int fallback) { return o.trials > 0 ? o.trials : fallback; }

// ---------------------------------------------------------------------------

std::vector<CheckOutcome> curvature_suite(const VerifyOptions& o) {
    const std::string s = "curvature";
    Rng rng(o.seed ^ 0x11);

    Check einstein(s, "einstein_propagation", "1e-12");
    for (int n = 2; n <= 6; ++n) {
        const std::vector<double> base(n, n - 1.0);
        for (int k = 0; k < 100; ++k) {
            const double t = (k + 0.5) * kPi / 100;
            for (double e : cone_ricci(base, t)) {
                const double err = relative(e, n);
                einstein.observe(err, err <= 1e-12, Json{{"n", n}, {"t", t}, {"eigenvalue", e}});
            }
        }
    }

    Check monotone(s, "ricci_monotonicity", "eigenvalue >= n");
    for (int trial = 0; trial < trials_or(o, 1000); ++trial) {
        const int n = rng.integer(2, 6);
        const auto base = random_ricci_bounded(rng, n, 3.0);
        const double t = rng.uniform(1e-3, kPi - 1e-3);
        const auto eig = cone_ricci(base, t);
        const double lowest = *std::min_element(eig.begin(), eig.end());
        const double deficit = (n - lowest) / n;
        monotone.observe(deficit, deficit <= 1e-12,
                         Json{{"trial", trial}, {"n", n}, {"t", t}, {"base", base}, {"lowest", lowest}});
    }

    Check round(s, "round_cone_sectional", "1e-12");
    for (int k = 0; k < 100; ++k) {
        const double t = (k + 0.5) * kPi / 100;
        const auto sec = cone_sectional(1.0, t);
        const double err = std::max(std::abs(sec.tangential - 1.0), std::abs(sec.radial - 1.0));
        round.observe(err, err <= 1e-12, Json{{"t", t}, {"tangential", sec.tangential}});
    }

    Check duality(s, "volume_area_duality", "1e-7 relative");
    for (int n = 2; n <= 6; ++n) {
        const SphericalCone cone(EinsteinData::einstein_metric("trial", n, rng.uniform(0.2, 1.0) * sphere_volume(n), n - 1.0));
        const double h = 2e-5;
        for (int k = 1; k < 50; ++k) {
            const double r = k * kPi / 50;
            const double fd = (cone_ball_volume(cone, r + h) - cone_ball_volume(cone, r - h)) / (2 * h);
            const double area = cone_ball_area(cone, r);
            const double err = std::abs(fd - area) / std::max(1.0, area);
            duality.observe(err, err <= 1e-7, Json{{"n", n}, {"r", r}, {"fd", fd}, {"area", area}});
        }
    }

    Check conformal(s, "conformal_identities", "1e-8");
    for (int k = 0; k <= 1000; ++k) {
        const double t = 1e-3 + k * (kPi - 2e-3) / 1000;
        const double st = std::sin(t);
        const double e1 = std::abs(conformal_factor_f0(conformal_map_h0(t)) - st * st);
        const double dh = derivative(conformal_map_h0, t);
        const double e2 = std::abs(st * st * dh * dh - 1.0);
        const double err = std::max(e1, e2);
        conformal.observe(err, err <= 1e-8, Json{{"t", t}, {"pullback", e1}, {"derivative", e2}});
    }

    return {einstein.outcome(), monotone.outcome(), round.outcome(), duality.outcome(),
            conformal.outcome()};
}

// ---------------------------------------------------------------------------

std::vector<CheckOutcome> symmetrization_suite(const VerifyOptions& o) {
    const std::string s = "symmetrization";
    Rng rng(o.seed ^ 0x22);
    constexpr int n = 2;
    constexpr int cells = 400;
    const double p = critical_exponent(n + 1);
    const double scal = n * (n + 1.0);

    Check norms(s, "norm_preservation", "1e-6 relative");
    Check levels(s, "equimeasurability", "one cell of volume");
    Check energy(s, "polya_szego", "1e-3 relative slack");
    Check quotient(s, "quotient_decrease", "1e-3 relative slack");
    Check scaling(s, "quotient_scale_invariance", "1e-10 relative");
    for (int trial = 0; trial < trials_or(o, 10); ++trial) {
        const auto f = random_round2d(rng, n, cells, cells);
        const auto fs = rearrange(f);
        const Json ctx{{"trial", trial}, {"seed", o.seed}};

        for (double q : {1.0, 2.0, p}) {
            const double err = relative(lq_norm(fs, q), lq_norm(f, q));
            Json c = ctx;
            c["q"] = q;
            c["relative_error"] = err;
            norms.observe(err, err <= 1e-6, c);
        }

        const auto w = f.cell_measures();
        const double cell = *std::max_element(w.begin(), w.end());
        const auto v = f.cell_values();
        const double top = *std::max_element(v.begin(), v.end());
        for (int j = 0; j < 50; ++j) {
            const double level = top * (j + 0.5) / 50;
            const double gap = std::abs(superlevel_volume(f, level) - superlevel_volume(fs, level));
            Json c = ctx;
            c["level"] = level;
            c["gap"] = gap;
            levels.observe(gap / cell, gap <= cell, c);
        }

        const auto smooth = coarsen(fs, cells);
        const double ef = dirichlet_energy(f);
        const double es = dirichlet_energy(smooth);
        Json ce = ctx;
        ce["energy"] = ef;
        ce["energy_rearranged"] = es;
        energy.observe((es - ef) / ef, ef >= es - 1e-3 * ef, ce);

        const double qf = yamabe_quotient(f, scal);
        const double qs = yamabe_quotient(smooth, scal);
        Json cq = ctx;
        cq["quotient"] = qf;
        cq["quotient_rearranged"] = qs;
        quotient.observe((qs - qf) / qf, qf >= qs - 1e-3 * qf, cq);

        const double c = rng.uniform(0.1, 10.0);
        auto g = f.grid();
        for (double& x : g.values) x *= c;
        const double err = relative(yamabe_quotient(ConeFunction::round2d(n, std::move(g)), scal), qf);
        Json cs = ctx;
        cs["factor"] = c;
        scaling.observe(err, err <= 1e-10, cs);
    }

    Check transfer(s, "transfer_scaling", "1e-10 relative");
    for (int trial = 0; trial < trials_or(o, 10) * 5; ++trial) {
        const int m = rng.integer(2, 6);
        const double volume = rng.uniform(0.05, 1.0) * sphere_volume(m);
        const double a = rng.uniform(0.5, 3.0), b = rng.uniform(0.0, 1.0);
        auto profile = RadialProfile::uniform(200, [&](double t) { return b + std::exp(-a * t); });
        const auto fstar = ConeFunction::radial(m, volume, profile);
        const auto f0 = transfer_to_sphere(fstar);
        const double expected = sphere_volume(m) / volume;
        double worst = 0.0;
        for (double q : {1.0, 2.0, critical_exponent(m + 1)})
            worst = std::max(worst, relative(lq_integral(f0, q) / lq_integral(fstar, q), expected));
        worst = std::max(worst, relative(dirichlet_energy(f0) / dirichlet_energy(fstar), expected));
        transfer.observe(worst, worst <= 1e-10, Json{{"trial", trial}, {"n", m}, {"V", volume}});
    }

    return {norms.outcome(),    levels.outcome(),  energy.outcome(),
            quotient.outcome(), scaling.outcome(), transfer.outcome()};
}

// ---------------------------------------------------------------------------

std::vector<CheckOutcome> stability_suite(const VerifyOptions& o) {
    const std::string s = "stability";
    Rng rng(o.seed ^ 0x33);

    Check degenerate(s, "round_base_degeneracy", "1e-12");
    for (int n = 2; n <= 6; ++n) {
        for (int k = 0; k < 50; ++k) {
            const double t = (k + 0.5) * kPi / 50;
            const double m = slice_stability_margin({t, n, static_cast<double>(n)});
            degenerate.observe(std::abs(m), std::abs(m) <= 1e-12, Json{{"n", n}, {"t", t}, {"margin", m}});
        }
    }

    Check gap(s, "spectral_gap_positive", "margin > 0");
    for (int trial = 0; trial < trials_or(o, 200); ++trial) {
        const int n = rng.integer(2, 6);
        const double lambda1 = n + rng.uniform(1e-6, 5.0);
        const double t = rng.uniform(1e-3, kPi - 1e-3);
        const double m = slice_stability_margin({t, n, lambda1});
        gap.observe(-m, m > 0.0, Json{{"trial", trial}, {"n", n}, {"lambda1", lambda1}, {"t", t}, {"margin", m}});
    }

    Check formula(s, "margin_formula", "1e-9 relative");
    for (int trial = 0; trial < trials_or(o, 200); ++trial) {
        const int n = rng.integer(2, 6);
        const double lambda1 = rng.uniform(0.1, 3.0 * n);
        const double t = rng.uniform(0.05, kPi - 0.05);
        StabilityInput in{t, n, lambda1};
        const double st = std::sin(t);
        const double direct = lambda1 / (st * st) - (in.ricci_normal() + in.sigma2());
        const double err = std::abs(slice_stability_margin(in) - direct) / std::max(1.0, std::abs(direct));
        formula.observe(err, err <= 1e-9, Json{{"trial", trial}, {"n", n}, {"lambda1", lambda1}, {"t", t}});
    }

    return {degenerate.outcome(), gap.outcome(), formula.outcome()};
}

// ---------------------------------------------------------------------------

std::vector<CheckOutcome> minkowski_suite(const VerifyOptions& o) {
    const std::string s = "minkowski";
    Rng rng(o.seed ^ 0x44);
    const GridSpec grid{800, 800};
    const double radii[] = {0.04, 0.02};

    Check profile(s, "profile_identity", "1e-10");
    const auto betas = profile_fractions(99);
    for (int n = 2; n <= 5; ++n) {
        for (double scale : {1.0, 0.5, 0.1}) {
            const SphericalCone cone(
                EinsteinData::einstein_metric("trial", n, scale * sphere_volume(n), n - 1.0));
            for (double b : betas) {
                const double d = std::abs(cone_iso_profile(cone, b) - sphere_iso_profile(n + 1, b));
                profile.observe(d, d <= 1e-10, Json{{"n", n}, {"V", cone.base_volume()}, {"beta", b}});
            }
        }
    }

    Check preserve(s, "symmetrization_volume", "1e-10 relative");
    Check vertex(s, "vertex_ball_content", "2% relative");
    Check inclusion(s, "dilation_inclusion", "one grid cell");
    Check content(s, "content_lower_bound", "2% relative slack");

    for (int n : {2, 3}) {
        for (double rho : {0.5, 1.0, 2.0}) {
            const auto u = SliceSet::vertex_ball(n, uniform_angles(grid.t_cells), rho);
            const auto est = minkowski_content(u, radii, grid);
            const double exact = std::pow(std::sin(rho), n) * sphere_volume(n);
            const double err = relative(est.content, exact);
            vertex.observe(err, err <= 0.02, Json{{"n", n}, {"rho", rho}, {"content", est.content}, {"exact", exact}});
        }
    }

    for (int trial = 0; trial < trials_or(o, 20); ++trial) {
        const int n = 2;
        const auto u = random_slice_set(rng, n, 400);
        const auto us = symmetrize_set(u);
        const Json ctx{{"trial", trial}, {"seed", o.seed}};

        const double vu = normalized_volume(u);
        const double vs = normalized_volume(us);
        preserve.observe(relative(vs, vu), relative(vs, vu) <= 1e-10, ctx);

        for (double r : {0.05, 0.2, 0.6}) {
            for (int k = 0; k < 100; ++k) {
                const double t = (k + 0.5) * kPi / 100;
                const double lhs = dilated_slice(us, r, t).pole_radius;
                const double rhs = radius_for_volume(n, dilated_slice(u, r, t).fraction);
                const double excess = lhs - rhs;
                Json c = ctx;
                c["r"] = r;
                c["t"] = t;
                c["symmetrized_then_dilated"] = lhs;
                c["dilated_then_symmetrized"] = rhs;
                inclusion.observe(excess, excess <= kPi / grid.theta_cells, c);
            }
        }

        const auto est = minkowski_content(u, radii, grid);
        const double total = sphere_volume(n) * sin_power_integral(n, kPi);
        const double radius = radius_for_volume(n + 1, std::clamp(est.volume / total, 0.0, 1.0));
        const double model = std::pow(std::sin(radius), n) * sphere_volume(n);
        Json c = ctx;
        c["content"] = est.content;
        c["model_area"] = model;
        content.observe((model - est.content) / model, est.content >= 0.98 * model, c);
    }

    Check monotone(s, "dilation_monotone", "nondecreasing, total at r >= pi");
    for (int trial = 0; trial < 3; ++trial) {
        const auto u = random_slice_set(rng, 2, 200);
        const GridSpec coarse{200, 200};
        const double total = sphere_volume(2) * sin_power_integral(2, kPi);
        double prev = neighborhood_volume(u, 0.0, coarse);
        bool ok = true;
        for (double r : {0.05, 0.1, 0.3, 0.8, 1.5, kPi}) {
            const double v = neighborhood_volume(u, r, coarse);
            ok = ok && v >= prev * (1 - 1e-12);
            prev = v;
        }
        const double gap = std::abs(prev - total) / total;
        monotone.observe(gap, ok && gap <= 1e-9, Json{{"trial", trial}, {"final_volume", prev}, {"total", total}});
    }

    return {profile.outcome(),   preserve.outcome(), vertex.outcome(),
            inclusion.outcome(), content.outcome(),  monotone.outcome()};
}

// ---------------------------------------------------------------------------

std::vector<CheckOutcome> variational_suite(const VerifyOptions&) {
    const std::string s = "variational";
    Check convergence(s, "closed_form_agreement", "5e-3 relative");
    Check monotone(s, "monotone_objective", "nonincreasing history");
    Check cone(s, "cone_route_agreement", "5e-3 relative");
    for (int n = 2; n <= 6; ++n) {
        for (double fraction : {1.0, 2.0 / 3.0, 0.5}) {
            const LineProblem problem{n, fraction * sphere_volume(n), n * (n - 1.0)};
            const Json ctx{{"n", n}, {"V", problem.volume}};
            try {
                const auto result = minimize_line(problem);
                const double err = std::abs(result.relative_error());
                Json c = ctx;
                c["value"] = result.value;
                c["closed_form"] = result.closed_form;
                convergence.observe(err, err <= 5e-3, c);
                const bool ok = std::is_sorted(result.history.rbegin(), result.history.rend());
                monotone.observe(ok ? 0.0 : 1.0, ok, ctx);
                if (fraction == 1.0) {
                    const double via_cone = cone_route_quotient(problem, result.minimizer, 4000);
                    const double e = relative(via_cone, result.value);
                    Json cc = ctx;
                    cc["cone_value"] = via_cone;
                    cc["line_value"] = result.value;
                    cone.observe(e, e <= 5e-3, cc);
                }
            } catch (const ConvergenceError& e) {
                convergence.fail(e.what(), ctx);
            }
        }
    }
    return {convergence.outcome(), monotone.outcome(), cone.outcome()};
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"curvature", "symmetrization", "stability",
                                                "minkowski", "variational"};
    return names;
}

std::vector<CheckOutcome> run_suite(const std::string& name, const VerifyOptions& options) {
    if (name == "all") {
        std::vector<CheckOutcome> out;
        for (const auto& suite : suite_names()) {
            auto part = run_suite(suite, options);
            out.insert(out.end(), part.begin(), part.end());
        }
        return out;
    }
    if (name == "curvature") return curvature_suite(options);
    if (name == "symmetrization") return symmetrization_suite(options);
    if (name == "stability") return stability_suite(options);
    if (name == "minkowski") return minkowski_suite(options);
    if (name == "variational") return variational_suite(options);
    throw ParseError(fmt::format("unknown suite `{}`", name));
}

bool print_outcomes(std::ostream& out, const std::vector<CheckOutcome>& outcomes) {
    const CheckOutcome* first = nullptr;
    for (const auto& o : outcomes) {
        out << fmt::format("{} {}.{}: {}\n", o.passed ? "PASS" : "FAIL", o.suite, o.check, o.summary);
        if (!o.passed && !first) first = &o;
    }
    if (first) out << "counterexample: " << first->counterexample << "\n";
    return first == nullptr;
}

}  // namespace yamacone
