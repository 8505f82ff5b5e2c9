#include "yamacone/isoperimetry.hpp"

#include "yamacone/detail/monotone.hpp"
#include "yamacone/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

namespace yamacone {

namespace {

constexpr double kPi = std::numbers::pi;

void require_open_fraction(double beta, const char* what) {
    if (!(beta > 0.0 && beta < 1.0)) {
        throw DomainError(fmt::format("{}: fraction {} is not in (0, 1)", what, beta));
    }
}

// Normalized ball measure on the base sphere, tabulated on equal colatitude
// cells and interpolated linearly inside a cell.
class ColatitudeGrid {
public:
    ColatitudeGrid(int n, int cells) : step_(kPi / cells), cumulative_(cells + 1) {
        const double total = sin_power_integral(n - 1, kPi);
        for (int j = 0; j <= cells; ++j) {
            cumulative_[j] = sin_power_integral(n - 1, j * step_) / total;
        }
        cumulative_.back() = 1.0;
    }

    double measure_below(double radius) const {
        if (radius <= 0.0) return 0.0;
        if (radius >= kPi) return 1.0;
        const auto cells = static_cast<int>(cumulative_.size()) - 1;
        const int j = std::min(static_cast<int>(radius / step_), cells - 1);
        const double w = (radius - j * step_) / step_;
        return cumulative_[j] + w * (cumulative_[j + 1] - cumulative_[j]);
    }

    double slice_measure(const DilatedSlice& s) const {
        const bool has_pole = s.pole_radius >= 0.0;
        const bool has_antipode = s.antipode_radius >= 0.0;
        if (has_pole && has_antipode && s.pole_radius + s.antipode_radius >= kPi) return 1.0;
        double m = 0.0;
        if (has_pole) m += measure_below(s.pole_radius);
        if (has_antipode) m += 1.0 - measure_below(kPi - s.antipode_radius);
        return std::min(m, 1.0);
    }

private:
    double step_;
    std::vector<double> cumulative_;
};

// sin^2(D/2) for the largest base distance D at which a point of slice angle
// `tp` lies within r of the point at angle t. Values >= 1 mean every base
// distance qualifies.
double reach_haversine(double r, double t, double tp) {
    if (tp <= 0.0 || tp >= kPi) return 1.0;  // a vertex within reach covers the slice
    const double sr = std::sin(0.5 * r);
    const double sd = std::sin(0.5 * (t - tp));
    return (sr * sr - sd * sd) / (std::sin(t) * std::sin(tp));
}

double haversine_angle(double x) {
    if (x >= 1.0) return kPi;
    if (x <= 0.0) return 0.0;
    return 2.0 * std::asin(std::sqrt(x));
}

// Largest base distance reachable from angle t into the slab [lo, hi].
double slab_reach(double r, double t, double lo, double hi) {
    const double a = std::max(lo, t - r);
    const double b = std::min(hi, t + r);
    if (a > b) return -1.0;
    double best = std::max(reach_haversine(r, t, a), reach_haversine(r, t, b));
    const double cr = std::cos(r);
    if (cr != 0.0) {
        const double c = std::cos(t) / cr;
        if (std::abs(c) <= 1.0) {
            const double critical = std::acos(c);
            if (critical > a && critical < b) {
                best = std::max(best, reach_haversine(r, t, critical));
            }
        }
    }
    return haversine_angle(best);
}

}  // namespace

// ---------------------------------------------------------------------------

double sphere_ball_fraction(int m, double r) {
    if (m < 1) throw DomainError("sphere_ball_fraction: dimension must be >= 1");
    if (r <= 0.0) return 0.0;
    if (r >= kPi) return 1.0;
    return sin_power_integral(m - 1, r) / sin_power_integral(m - 1, kPi);
}

double radius_for_volume(int m, double beta) {
    if (m < 1) throw DomainError("radius_for_volume: dimension must be >= 1");
    if (!(beta >= 0.0 && beta <= 1.0))
        throw DomainError(fmt::format("radius_for_volume: fraction {} outside [0, 1]", beta));
    if (beta == 0.0) return 0.0;
    if (beta == 1.0) return kPi;
    const double total = sin_power_integral(m - 1, kPi);
    return detail::invert_nondecreasing(
        [&](double r) { return sin_power_integral(m - 1, r) / total; },
        [&](double r) { return std::pow(std::sin(r), m - 1) / total; }, beta, 0.0, kPi);
}

double sphere_iso_profile(int m, double beta) {
    if (m < 2) throw DomainError("sphere_iso_profile: dimension must be >= 2");
    require_open_fraction(beta, "sphere_iso_profile");
    const double r = radius_for_volume(m, beta);
    return std::pow(std::sin(r), m - 1) / sin_power_integral(m - 1, kPi);
}

double cone_iso_profile(const SphericalCone& cone, double beta) {
    require_open_fraction(beta, "cone_iso_profile");
    const double total = cone.total_volume();
    const double v = cone.base_volume();
    const int n = cone.base_dimension();
    const double r = detail::invert_nondecreasing(
        [&](double x) { return cone_ball_volume(cone, x); },
        [&](double x) { return v * std::pow(std::sin(x), n); }, beta * total, 0.0, kPi);
    return cone_ball_area(cone, r) / total;
}

std::vector<double> profile_fractions(int count) {
    if (count < 1) throw DomainError("profile_fractions: need at least one sample");
    std::vector<double> betas(count);
    for (int k = 0; k < count; ++k) betas[k] = (k + 1.0) / (count + 1.0);
    return betas;
}

IsoProfile sample_sphere_profile(int m, std::span<const double> betas) {
    IsoProfile out{fmt::format("round S^{}", m), {}};
    for (double b : betas) out.samples.push_back({b, sphere_iso_profile(m, b)});
    return out;
}

IsoProfile sample_cone_profile(const SphericalCone& cone, std::span<const double> betas) {
    IsoProfile out{fmt::format("cone over {}", cone.base().name), {}};
    for (double b : betas) out.samples.push_back({b, cone_iso_profile(cone, b)});
    return out;
}

void write_profile_csv(std::ostream& out, const IsoProfile& profile) {
    out << "beta,perimeter\n";
    for (const auto& s : profile.samples) out << fmt::format("{},{}\n", s.beta, s.perimeter);
}

// ---------------------------------------------------------------------------

double suspension_distance(double d_base, double t1, double t2) {
    if (!(d_base >= 0.0)) throw DomainError("suspension_distance: negative base distance");
    if (!(t1 >= 0.0 && t1 <= kPi && t2 >= 0.0 && t2 <= kPi))
        throw DomainError("suspension_distance: angle outside [0, pi]");
    const double d = std::min(d_base, kPi);
    const double sd = std::sin(0.5 * (t1 - t2));
    const double sb = std::sin(0.5 * d);
    const double h = sd * sd + std::sin(t1) * std::sin(t2) * sb * sb;
    return 2.0 * std::asin(std::sqrt(std::clamp(h, 0.0, 1.0)));
}

double enlarge_ball(int m, double rho, double r) {
    if (m < 1) throw DomainError("enlarge_ball: dimension must be >= 1");
    if (!(rho >= 0.0 && rho <= kPi)) throw DomainError("enlarge_ball: radius outside [0, pi]");
    if (!(r >= 0.0)) throw DomainError("enlarge_ball: negative enlargement");
    return std::min(rho + r, kPi);
}

// ---------------------------------------------------------------------------

SliceSet SliceSet::from_fractions(int n, std::vector<double> t, std::vector<double> frac) {
    SliceSet u{n, std::move(t), std::move(frac), std::nullopt, {}};
    u.validate();
    return u;
}

SliceSet SliceSet::from_radii(int n, std::vector<double> t, std::vector<double> rho,
                              std::vector<SliceCenter> centers) {
    std::vector<double> frac(rho.size());
    for (std::size_t k = 0; k < rho.size(); ++k) frac[k] = sphere_ball_fraction(n, rho[k]);
    SliceSet u{n, std::move(t), std::move(frac), std::move(rho), std::move(centers)};
    u.validate();
    return u;
}

SliceSet SliceSet::vertex_ball(int n, std::vector<double> t, double radius) {
    std::vector<double> rho(t.size());
    for (std::size_t k = 0; k < t.size(); ++k) rho[k] = t[k] < radius ? kPi : 0.0;
    return from_radii(n, std::move(t), std::move(rho));
}

void SliceSet::validate() const {
    if (n < 2) throw ValidationError("SliceSet: base dimension must be >= 2");
    if (t.empty()) throw ValidationError("SliceSet: no slices");
    if (frac.size() != t.size()) throw ValidationError("SliceSet: frac/t length mismatch");
    if (!centers.empty() && centers.size() != t.size())
        throw ValidationError("SliceSet: centers/t length mismatch");
    for (std::size_t k = 0; k < t.size(); ++k) {
        if (!(t[k] > 0.0 && t[k] < kPi))
            throw ValidationError("SliceSet: slice angles must lie in (0, pi)");
        if (k > 0 && !(t[k] > t[k - 1]))
            throw ValidationError("SliceSet: slice angles must be strictly increasing");
        if (!(frac[k] >= 0.0 && frac[k] <= 1.0))
            throw ValidationError(fmt::format("SliceSet: fraction {} outside [0, 1]", frac[k]));
    }
    if (rho) {
        if (rho->size() != t.size()) throw ValidationError("SliceSet: rho/t length mismatch");
        for (std::size_t k = 0; k < t.size(); ++k) {
            const double r = (*rho)[k];
            if (!(r >= 0.0 && r <= kPi)) throw ValidationError("SliceSet: radius outside [0, pi]");
            if (std::abs(sphere_ball_fraction(n, r) - frac[k]) > 1e-8)
                throw ValidationError("SliceSet: rho and frac disagree");
        }
    }
}

std::vector<double> SliceSet::edges() const {
    std::vector<double> e(t.size() + 1);
    e.front() = 0.0;
    e.back() = kPi;
    for (std::size_t k = 1; k < t.size(); ++k) e[k] = 0.5 * (t[k - 1] + t[k]);
    return e;
}

std::vector<double> uniform_angles(int cells) {
    if (cells < 1) throw DomainError("uniform_angles: need at least one cell");
    std::vector<double> t(cells);
    const double h = kPi / cells;
    for (int i = 0; i < cells; ++i) t[i] = (i + 0.5) * h;
    return t;
}

double normalized_volume(const SliceSet& u) {
    u.validate();
    const auto e = u.edges();
    double acc = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) {
        acc += u.frac[k] * sin_power_integral(u.n, e[k], e[k + 1]);
    }
    return acc / sin_power_integral(u.n, kPi);
}

SliceSet symmetrize_set(const SliceSet& u) {
    u.validate();
    std::vector<double> rho(u.size());
    for (std::size_t k = 0; k < u.size(); ++k) rho[k] = radius_for_volume(u.n, u.frac[k]);
    return SliceSet{u.n, u.t, u.frac, std::move(rho), {}};
}

// ---------------------------------------------------------------------------

namespace {

DilatedSlice dilate_at(const SliceSet& u, const std::vector<double>& e, double r, double t) {
    const auto& rho = *u.rho;
    // Slabs whose r-reach [e_k - r, e_{k+1} + r] contains t.
    const auto first = std::lower_bound(e.begin() + 1, e.end(), t - r) - (e.begin() + 1);
    const auto last = std::upper_bound(e.begin(), e.end() - 1, t + r) - e.begin();
    DilatedSlice out;
    for (auto k = static_cast<std::size_t>(first); k < static_cast<std::size_t>(last); ++k) {
        if (u.frac[k] <= 0.0) continue;
        const double reach = slab_reach(r, t, e[k], e[k + 1]);
        if (reach < 0.0) continue;
        const double radius = std::min(kPi, rho[k] + reach);
        if (u.center(k) == SliceCenter::pole) {
            out.pole_radius = std::max(out.pole_radius, radius);
        } else {
            out.antipode_radius = std::max(out.antipode_radius, radius);
        }
    }
    return out;
}

}  // namespace

DilatedSlice dilated_slice(const SliceSet& u, double r, double t) {
    u.validate();
    if (!u.rho) throw ValidationError("dilated_slice: slice set has no round-base radii");
    if (!(r >= 0.0)) throw DomainError("dilated_slice: negative enlargement");
    require_interior_angle(t, "dilated_slice");
    DilatedSlice out = dilate_at(u, u.edges(), r, t);
    const bool pole = out.pole_radius >= 0.0;
    const bool anti = out.antipode_radius >= 0.0;
    if (pole && anti && out.pole_radius + out.antipode_radius >= kPi) {
        out.fraction = 1.0;
    } else {
        out.fraction = (pole ? sphere_ball_fraction(u.n, out.pole_radius) : 0.0) +
                       (anti ? sphere_ball_fraction(u.n, out.antipode_radius) : 0.0);
    }
    return out;
}

double neighborhood_volume(const SliceSet& u, double r, const GridSpec& grid) {
    u.validate();
    if (!u.rho) throw ValidationError("neighborhood_volume: slice set has no round-base radii");
    if (!(r >= 0.0)) throw DomainError("neighborhood_volume: negative enlargement");
    if (grid.theta_cells < 1 || grid.t_cells < 1)
        throw ResolutionError("neighborhood_volume: empty grid");
    const auto e = u.edges();
    double widest = 0.0;
    for (std::size_t k = 0; k + 1 < e.size(); ++k) widest = std::max(widest, e[k + 1] - e[k]);
    const double cell = std::max({kPi / grid.theta_cells, kPi / grid.t_cells, widest});
    if (r > 0.0 && r < 2.0 * cell) {
        throw ResolutionError(
            fmt::format("neighborhood_volume: r = {} is below two grid cells ({})", r, 2.0 * cell));
    }

    // The slice measure jumps only where a slab enters or leaves reach, so
    // integrate piecewise between those angles.
    std::vector<double> breaks;
    breaks.reserve(grid.t_cells + 3 * e.size() + 2);
    for (int i = 0; i <= grid.t_cells; ++i) breaks.push_back(kPi * i / grid.t_cells);
    for (double edge : e) {
        breaks.push_back(edge);
        breaks.push_back(edge - r);
        breaks.push_back(edge + r);
    }
    std::erase_if(breaks, [](double b) { return !(b >= 0.0 && b <= kPi); });
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end(),
                             [](double a, double b) { return b - a < 1e-14; }),
                 breaks.end());

    const ColatitudeGrid colatitude(u.n, grid.theta_cells);
    // Three-point Gauss-Legendre on each piece.
    constexpr std::array<double, 3> nodes{-0.7745966692414834, 0.0, 0.7745966692414834};
    constexpr std::array<double, 3> weights{5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        const double a = breaks[i];
        const double b = breaks[i + 1];
        const double mid = 0.5 * (a + b);
        const double half = 0.5 * (b - a);
        for (std::size_t q = 0; q < nodes.size(); ++q) {
            const double t = mid + half * nodes[q];
            const double m = colatitude.slice_measure(dilate_at(u, e, r, t));
            acc += weights[q] * half * m * std::pow(std::sin(t), u.n);
        }
    }
    return acc * sphere_volume(u.n);
}

MinkowskiEstimate minkowski_content(const SliceSet& u, std::span<const double> radii,
                                    const GridSpec& grid) {
    if (radii.empty()) throw DomainError("minkowski_content: no radii");
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (!(radii[i] > 0.0)) throw DomainError("minkowski_content: radii must be positive");
        if (i > 0 && !(radii[i] < radii[i - 1]))
            throw DomainError("minkowski_content: radii must be strictly decreasing");
    }
    MinkowskiEstimate out;
    out.volume = neighborhood_volume(u, 0.0, grid);
    for (double r : radii) {
        out.radii.push_back(r);
        out.quotients.push_back((neighborhood_volume(u, r, grid) - out.volume) / r);
    }
    if (radii.size() == 1) {
        out.content = out.quotients.back();
    } else {
        const std::size_t m = radii.size();
        const double r1 = radii[m - 2], r2 = radii[m - 1];
        const double q1 = out.quotients[m - 2], q2 = out.quotients[m - 1];
        out.content = (r1 * q2 - r2 * q1) / (r1 - r2);
    }
    return out;
}

// ---------------------------------------------------------------------------

double StabilityInput::sigma2() const {
    require_interior_angle(t, "StabilityInput");
    const double cot = std::cos(t) / std::sin(t);
    return n * cot * cot;
}

double slice_stability_margin(const StabilityInput& input) {
    require_interior_angle(input.t, "slice_stability_margin");
    if (input.n < 2) throw DomainError("slice_stability_margin: base dimension must be >= 2");
    if (!(input.lambda1 > 0.0)) throw DomainError("slice_stability_margin: lambda1 must be > 0");
    // lambda1/sin^2 - n - n cot^2 collapses to (lambda1 - n)/sin^2.
    const double s = std::sin(input.t);
    return (input.lambda1 - input.n) / (s * s);
}

}  // namespace yamacone
