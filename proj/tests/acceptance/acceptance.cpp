// One line per acceptance criterion: PASS/FAIL, what was measured, runtime.
// Exit status is the number of failed criteria.

#include "yamacone/bounds.hpp"
#include "yamacone/cli.hpp"
#include "yamacone/geometry.hpp"
#include "yamacone/isoperimetry.hpp"
#include "yamacone/random.hpp"
#include "yamacone/symmetrization.hpp"
#include "yamacone/variational.hpp"

#include "../unit/oracles.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace yamacone;
using oracle::kPi;

namespace {

using Clock = std::chrono::steady_clock;

struct Verdict {
    bool passed = true;
    std::string detail;
};

// Y_n from the oracle sphere volume.
double yamabe(int n) { return n * (n - 1.0) * std::pow(oracle::sphere_volume(n), 2.0 / n); }

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

std::vector<nlohmann::json> bound_records(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    if (run_cli(args, out, err) != 0) throw std::runtime_error(err.str());
    std::vector<nlohmann::json> recs;
    std::istringstream in(out.str());
    for (std::string line; std::getline(in, line);) recs.push_back(nlohmann::json::parse(line));
    return recs;
}

Verdict ac1() {
    Verdict v;
    const double y5 = yamabe(5);
    struct Case {
        const char* manifold;
        double ratio;
    };
    double worst_ratio = 0.0, worst_value = 0.0;
    for (const Case c : {Case{"product:sphere:2,sphere:2", 2.0 / 3}, Case{"cp2", 0.75}}) {
        const auto recs = bound_records({"bound", c.manifold, "--format", "json"});
        const auto& rec = recs.back();
        const double ratio_err = std::abs(rec["ratio"].get<double>() - c.ratio);
        const double value_err = rel(rec["value"].get<double>(), std::pow(c.ratio, 0.4) * y5);
        worst_ratio = std::max(worst_ratio, ratio_err);
        worst_value = std::max(worst_value, value_err);
        v.passed = v.passed && rec["formula"] == "corollary1.4" && ratio_err <= 1e-12 && value_err <= 1e-10;
    }
    v.detail = fmt::format("ratio err {:.1e}, value rel err {:.1e}", worst_ratio, worst_value);
    return v;
}

Verdict ac2() {
    Verdict v;
    double worst = 0.0, slowest = 0.0;
    auto check = [&](int n, double fraction, double expected) {
        const auto start = Clock::now();
        const LineProblem p{n, fraction * oracle::sphere_volume(n), n * (n - 1.0), 12.0, 4001};
        const auto r = minimize_line(p);
        const double secs = std::chrono::duration<double>(Clock::now() - start).count();
        const double err = rel(r.value, expected);
        worst = std::max(worst, err);
        slowest = std::max(slowest, secs);
        v.passed = v.passed && err <= 5e-3 && secs < 30.0;
    };
    for (int n = 2; n <= 6; ++n) check(n, 1.0, yamabe(n + 1));
    check(4, 2.0 / 3, std::pow(2.0 / 3, 0.4) * yamabe(5));
    v.detail = fmt::format("worst rel err {:.2e} over 6 cases, slowest {:.2f} s", worst, slowest);
    return v;
}

Verdict ac3() {
    Verdict v;
    double worst = 0.0;
    const auto betas = profile_fractions(99);
    for (int n = 2; n <= 5; ++n) {
        for (double scale : {1.0, 0.37, 0.02}) {
            const SphericalCone cone(EinsteinData::einstein_metric("base", n, scale * oracle::sphere_volume(n), n - 1.0));
            for (double b : betas)
                worst = std::max(worst, std::abs(cone_iso_profile(cone, b) - sphere_iso_profile(n + 1, b)));
        }
    }
    v.passed = worst <= 1e-10;
    v.detail = fmt::format("max abs diff {:.1e} over n=2..5, 3 volumes, 99 fractions", worst);
    return v;
}

Verdict ac4() {
    Verdict v;
    double worst = 0.0;
    for (int n = 2; n <= 6; ++n) {
        const std::vector<double> base(n, n - 1.0);
        for (int k = 0; k < 100; ++k) {
            const double t = (k + 0.5) * kPi / 100;
            for (double e : cone_ricci(base, t)) worst = std::max(worst, rel(e, n));
        }
    }
    Rng rng(2024);
    double margin = 1e300;
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = rng.integer(2, 8);
        const auto base = random_ricci_bounded(rng, n, 5.0);
        const double t = rng.uniform(1e-3, kPi - 1e-3);
        for (double e : cone_ricci(base, t)) margin = std::min(margin, e - n);
    }
    v.passed = worst <= 1e-12 && margin >= -1e-12 * 8;
    v.detail = fmt::format("Einstein rel err {:.1e}; min(eigenvalue - n) {:.2e} over 1000 trials", worst, margin);
    return v;
}

Verdict ac5() {
    Verdict v;
    const int n = 2;
    const double p = 2.0 * (n + 1) / (n - 1);
    Rng rng(5);
    double norm_err = 0.0, energy_slack = 1e300, transfer_err = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const auto f = random_round2d(rng, n, 400, 400);
        const auto fs = rearrange(f);
        for (double q : {2.0, p}) norm_err = std::max(norm_err, rel(lq_norm(fs, q), lq_norm(f, q)));
        const double ef = dirichlet_energy(f);
        const double es = dirichlet_energy(coarsen(fs, 400));
        energy_slack = std::min(energy_slack, (ef - es) / ef);

        // Same rearranged profile over a smaller base.
        const double volume = rng.uniform(0.05, 1.0) * oracle::sphere_volume(n);
        const auto fstar = ConeFunction::radial(n, volume, coarsen(fs, 400).profile());
        const auto f0 = transfer_to_sphere(fstar);
        const double expected = oracle::sphere_volume(n) / volume;
        for (double q : {2.0, p}) transfer_err = std::max(transfer_err, rel(lq_integral(f0, q) / lq_integral(fstar, q), expected));
        transfer_err = std::max(transfer_err, rel(dirichlet_energy(f0) / dirichlet_energy(fstar), expected));
    }
    v.passed = norm_err <= 1e-6 && energy_slack >= -1e-3 && transfer_err <= 1e-10;
    v.detail = fmt::format("norm rel err {:.1e}, min energy decrease {:.2e}, transfer rel err {:.1e}", norm_err,
                           energy_slack, transfer_err);
    return v;
}

Verdict ac6() {
    Verdict v;
    const GridSpec grid{800, 800};
    const double radii[] = {0.04, 0.02};
    double vertex_err = 0.0;
    for (int n : {2, 3}) {
        for (double rho : {0.4, 1.0, 1.6, 2.5}) {
            const auto u = SliceSet::vertex_ball(n, uniform_angles(grid.t_cells), rho);
            const double exact = std::pow(std::sin(rho), n) * oracle::sphere_volume(n);
            vertex_err = std::max(vertex_err, rel(minkowski_content(u, radii, grid).content, exact));
        }
    }
    // mu+(U) >= area of the vertex ball with the volume of U.
    Rng rng(6);
    double worst_deficit = -1e300;
    const int n = 2;
    const double total = oracle::sphere_volume(n) * oracle::sin_power(n, 0.0, kPi);
    for (int trial = 0; trial < 20; ++trial) {
        const auto u = random_slice_set(rng, n, 400);
        const auto est = minkowski_content(u, radii, grid);
        const double beta = std::clamp(est.volume / total, 0.0, 1.0);
        double lo = 0.0, hi = kPi;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            (oracle::sin_power(n, 0.0, mid) < beta * oracle::sin_power(n, 0.0, kPi) ? lo : hi) = mid;
        }
        const double model = std::pow(std::sin(0.5 * (lo + hi)), n) * oracle::sphere_volume(n);
        worst_deficit = std::max(worst_deficit, (model - est.content) / model);
    }
    v.passed = vertex_err <= 0.02 && worst_deficit <= 0.02;
    v.detail = fmt::format("vertex-ball rel err {:.2e}; worst content deficit {:.2e} (grid slack 2%)", vertex_err,
                           worst_deficit);
    return v;
}

Verdict ac7() {
    Verdict v;
    double worst = 0.0;
    for (int n = 2; n <= 8; ++n) {
        for (int k = 0; k < 50; ++k) {
            const double t = 0.05 + (kPi - 0.1) * k / 49;
            worst = std::max(worst, std::abs(slice_stability_margin(StabilityInput{t, n, double(n)})));
        }
    }
    v.passed = worst <= 1e-12;
    v.detail = fmt::format("max |margin| {:.1e} over n=2..8, 50 angles", worst);
    return v;
}

Verdict ac8() {
    Verdict v;
    double worst_f = 0.0, worst_d = 0.0;
    for (int k = 0; k <= 2000; ++k) {
        const double t = 1e-3 + (kPi - 2e-3) * k / 2000;
        const double s2 = std::sin(t) * std::sin(t);
        worst_f = std::max(worst_f, std::abs(conformal_factor_f0(conformal_map_h0(t)) - s2));
        const double h = 1e-3 * std::min(t, kPi - t);
        const double d = (-conformal_map_h0(t + 2 * h) + 8 * conformal_map_h0(t + h) - 8 * conformal_map_h0(t - h) +
                          conformal_map_h0(t - 2 * h)) / (12 * h);
        worst_d = std::max(worst_d, std::abs(s2 * d * d - 1));
    }
    double worst_route = 0.0;
    for (int n = 2; n <= 6; ++n) {
        const LineProblem p{n, oracle::sphere_volume(n), n * (n - 1.0), 12.0, 4001};
        const auto r = minimize_line(p);
        worst_route = std::max(worst_route, rel(cone_route_quotient(p, r.minimizer, 4000), r.value));
    }
    v.passed = worst_f <= 1e-8 && worst_d <= 1e-8 && worst_route <= 5e-3;
    v.detail = fmt::format("f0(h0) err {:.1e}, sin^2 h0'^2 err {:.1e}, cone route rel err {:.2e}", worst_f, worst_d,
                           worst_route);
    return v;
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Verdict()> run;
        double budget;  // seconds
    };
    const std::vector<Criterion> criteria{
        {"AC1 example bounds", ac1, 1.0},
        {"AC2 line minimizer", ac2, 180.0},
        {"AC3 cone profile", ac3, 1.0},
        {"AC4 cone curvature", ac4, 60.0},
        {"AC5 symmetrization", ac5, 60.0},
        {"AC6 Minkowski content", ac6, 300.0},
        {"AC7 stability degeneracy", ac7, 60.0},
        {"AC8 conformal identities", ac8, 60.0},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = Clock::now();
        Verdict v;
        try {
            v = c.run();
        } catch (const std::exception& e) {
            v = Verdict{false, fmt::format("exception: {}", e.what())};
        }
        const double secs = std::chrono::duration<double>(Clock::now() - start).count();
        const bool ok = v.passed && secs < c.budget;
        failures += !ok;
        fmt::print("{} {}: {} [{:.2f} s, limit {} s]\n", ok ? "PASS" : "FAIL", c.name, v.detail, secs, c.budget);
    }
    return failures;
}
