#include "yamacone/symmetrization.hpp"

#include "yamacone/detail/monotone.hpp"
#include "yamacone/errors.hpp"
#include "yamacone/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numbers>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

#include <fmt/format.h>

namespace yamacone {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> uniform_edges(int cells) {
    std::vector<double> e(cells + 1);
    for (int i = 0; i <= cells; ++i) e[i] = kPi * i / cells;
    e.back() = kPi;
    return e;
}

// Measures V_{n-1} \int sin^{n-1} of equal colatitude cells; they sum to V_n.
std::vector<double> colatitude_measures(int n, int cells) {
    const double lower = sphere_volume(n - 1);
    const auto e = uniform_edges(cells);
    std::vector<double> w(cells);
    for (int j = 0; j < cells; ++j) w[j] = lower * sin_power_integral(n - 1, e[j], e[j + 1]);
    return w;
}

std::vector<double> angle_integrals(int n, const std::vector<double>& edges) {
    std::vector<double> w(edges.size() - 1);
    double prev = sin_power_integral(n, edges.front());
    for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
        const double next = sin_power_integral(n, edges[k + 1]);
        w[k] = next - prev;
        prev = next;
    }
    return w;
}

}  // namespace

// ---------------------------------------------------------------------------

RadialProfile RadialProfile::uniform(int cells, const std::function<double(double)>& fn) {
    if (cells < 1) throw ValidationError("RadialProfile: need at least one shell");
    RadialProfile p{uniform_edges(cells), std::vector<double>(cells)};
    for (int i = 0; i < cells; ++i) p.values[i] = fn(0.5 * (p.edges[i] + p.edges[i + 1]));
    return p;
}

RadialProfile RadialProfile::from_nodes(std::span<const double> nodes, std::vector<double> values) {
    if (nodes.size() != values.size() || nodes.empty())
        throw ValidationError("RadialProfile: nodes and values must be nonempty and equal length");
    RadialProfile p;
    p.edges.resize(nodes.size() + 1);
    p.edges.front() = 0.0;
    p.edges.back() = kPi;
    for (std::size_t k = 1; k < nodes.size(); ++k) p.edges[k] = 0.5 * (nodes[k - 1] + nodes[k]);
    p.values = std::move(values);
    p.validate();
    return p;
}

std::vector<double> RadialProfile::nodes() const {
    std::vector<double> c(size());
    for (std::size_t k = 0; k < size(); ++k) c[k] = 0.5 * (edges[k] + edges[k + 1]);
    return c;
}

bool RadialProfile::nonincreasing() const {
    return std::is_sorted(values.rbegin(), values.rend());
}

void RadialProfile::validate() const {
    if (values.empty() || edges.size() != values.size() + 1)
        throw ValidationError("RadialProfile: need one more edge than values");
    if (!(edges.front() >= 0.0) || !(edges.back() <= kPi))
        throw ValidationError("RadialProfile: edges must lie in [0, pi]");
    for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
        if (!(edges[k + 1] > edges[k]))
            throw ValidationError("RadialProfile: edges must be strictly increasing");
    }
    for (double v : values) {
        if (!std::isfinite(v)) throw ValidationError("RadialProfile: non-finite value");
    }
}

// ---------------------------------------------------------------------------

ConeFunction::ConeFunction(int n, double volume, std::variant<RadialProfile, Round2dGrid> data)
    : n_(n), volume_(volume), data_(std::move(data)) {
    if (n_ < 2) throw ValidationError("ConeFunction: base dimension must be >= 2");
    if (!(volume_ > 0.0)) throw ValidationError("ConeFunction: base volume must be positive");
}

ConeFunction ConeFunction::radial(int n, double volume, RadialProfile profile) {
    profile.validate();
    return ConeFunction(n, volume, std::move(profile));
}

ConeFunction ConeFunction::round2d(int n, Round2dGrid grid) {
    if (grid.theta_cells < 1 || grid.t_cells < 1 ||
        grid.values.size() != static_cast<std::size_t>(grid.theta_cells) * grid.t_cells)
        throw ValidationError("ConeFunction: round2d grid size mismatch");
    for (double v : grid.values) {
        if (!std::isfinite(v)) throw ValidationError("ConeFunction: non-finite value");
    }
    return ConeFunction(n, sphere_volume(n), std::move(grid));
}

ConeFunction ConeFunction::round2d(int n, int theta_cells, int t_cells,
                                   const std::function<double(double, double)>& fn) {
    Round2dGrid g{theta_cells, t_cells, {}};
    g.values.resize(static_cast<std::size_t>(theta_cells) * t_cells);
    const double ht = kPi / t_cells;
    const double hth = kPi / theta_cells;
    for (int i = 0; i < t_cells; ++i) {
        for (int j = 0; j < theta_cells; ++j) {
            g.values[static_cast<std::size_t>(i) * theta_cells + j] =
                fn((j + 0.5) * hth, (i + 0.5) * ht);
        }
    }
    return round2d(n, std::move(g));
}

const RadialProfile& ConeFunction::profile() const {
    if (!is_radial()) throw ValidationError("ConeFunction: not a radial function");
    return std::get<RadialProfile>(data_);
}

const Round2dGrid& ConeFunction::grid() const {
    if (is_radial()) throw ValidationError("ConeFunction: not a round2d function");
    return std::get<Round2dGrid>(data_);
}

std::vector<double> ConeFunction::cell_values() const {
    return is_radial() ? profile().values : grid().values;
}

std::vector<double> ConeFunction::cell_measures() const {
    if (is_radial()) return shell_measures(profile(), n_, volume_);
    const auto& g = grid();
    const auto tw = angle_integrals(n_, uniform_edges(g.t_cells));
    const auto thw = colatitude_measures(n_, g.theta_cells);
    std::vector<double> w(g.values.size());
    for (int i = 0; i < g.t_cells; ++i) {
        for (int j = 0; j < g.theta_cells; ++j) {
            w[static_cast<std::size_t>(i) * g.theta_cells + j] = tw[i] * thw[j];
        }
    }
    return w;
}

std::vector<double> shell_measures(const RadialProfile& profile, int n, double volume) {
    auto w = angle_integrals(n, profile.edges);
    for (double& x : w) x *= volume;
    return w;
}

// ---------------------------------------------------------------------------

double superlevel_volume(const ConeFunction& f, double s) {
    const auto v = f.cell_values();
    const auto w = f.cell_measures();
    double acc = 0.0;
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (v[k] > s) acc += w[k];
    }
    return acc;
}

double lq_integral(const ConeFunction& f, double q) {
    if (!(q > 0.0)) throw DomainError("lq_integral: exponent must be positive");
    const auto v = f.cell_values();
    const auto w = f.cell_measures();
    double acc = 0.0;
    for (std::size_t k = 0; k < v.size(); ++k) acc += w[k] * std::pow(std::abs(v[k]), q);
    return acc;
}

double lq_norm(const ConeFunction& f, double q) { return std::pow(lq_integral(f, q), 1.0 / q); }

ConeFunction rearrange(const ConeFunction& f) {
    const auto v = f.cell_values();
    const auto w = f.cell_measures();
    for (double x : v) {
        if (x < 0.0) throw ValidationError("rearrange: input must be nonnegative");
    }
    std::vector<std::size_t> order(v.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return v[a] > v[b]; });

    // Runs of equal values become one shell.
    std::vector<double> levels;
    std::vector<double> cumulative;
    double acc = 0.0;
    for (std::size_t k = 0; k < order.size(); ++k) {
        const double value = v[order[k]];
        acc += w[order[k]];
        if (!levels.empty() && levels.back() == value) {
            cumulative.back() = acc;
        } else {
            levels.push_back(value);
            cumulative.push_back(acc);
        }
    }

    const int n = f.n();
    const double volume = f.volume();
    auto ball = [&](double t) { return volume * sin_power_integral(n, t); };
    auto ball_rate = [&](double t) { return volume * std::pow(std::sin(t), n); };

    RadialProfile out;
    out.values = levels;
    out.edges.resize(levels.size() + 1);
    out.edges.front() = 0.0;
    double prev = 0.0;
    for (std::size_t k = 0; k + 1 < levels.size(); ++k) {
        const double rate = ball_rate(prev);
        const double guess = rate > 0.0 ? prev + (cumulative[k] - ball(prev)) / rate : prev;
        double edge = detail::invert_nondecreasing(ball, ball_rate, cumulative[k], prev, kPi, guess);
        // Keep shells nondegenerate even when a run's measure is below rounding.
        if (!(edge > prev)) edge = std::nextafter(prev, kPi);
        out.edges[k + 1] = edge;
        prev = edge;
    }
    out.edges.back() = kPi;
    return ConeFunction::radial(n, volume, std::move(out));
}

ConeFunction coarsen(const ConeFunction& radial, int cells) {
    const auto& src = radial.profile();
    if (cells < 1) throw ValidationError("coarsen: need at least one shell");
    const int n = radial.n();
    auto ball = [&](double t) { return sin_power_integral(n, t); };
    const auto dst_edges = uniform_edges(cells);
    std::vector<double> src_ball(src.edges.size());
    for (std::size_t k = 0; k < src.edges.size(); ++k) src_ball[k] = ball(src.edges[k]);

    RadialProfile out{dst_edges, std::vector<double>(cells, 0.0)};
    std::size_t k = 0;
    for (int j = 0; j < cells; ++j) {
        const double lo = dst_edges[j];
        const double hi = dst_edges[j + 1];
        const double lo_ball = ball(lo);
        const double hi_ball = ball(hi);
        while (k < src.size() && src.edges[k + 1] <= lo) ++k;
        double mass = 0.0;
        for (std::size_t m = k; m < src.size() && src.edges[m] < hi; ++m) {
            const double a = std::max(lo_ball, src_ball[m]);
            const double b = std::min(hi_ball, src_ball[m + 1]);
            if (b > a) mass += src.values[m] * (b - a);
        }
        const double measure = hi_ball - lo_ball;
        out.values[j] = measure > 0.0 ? mass / measure : 0.0;
    }
    return ConeFunction::radial(n, radial.volume(), std::move(out));
}

double dirichlet_energy(const ConeFunction& f) {
    const int n = f.n();
    if (f.is_radial()) {
        const auto& p = f.profile();
        const auto c = p.nodes();
        double acc = 0.0;
        for (std::size_t k = 0; k + 1 < p.size(); ++k) {
            const double dv = p.values[k + 1] - p.values[k];
            const double dt = c[k + 1] - c[k];
            acc += dv * dv / dt * std::pow(std::sin(p.edges[k + 1]), n);
        }
        return acc * f.volume();
    }

    const auto& g = f.grid();
    const double ht = kPi / g.t_cells;
    const double hth = kPi / g.theta_cells;
    const auto t_edges = uniform_edges(g.t_cells);
    const auto th_edges = uniform_edges(g.theta_cells);
    const auto thw = colatitude_measures(n, g.theta_cells);
    const double lower = sphere_volume(n - 1);

    double radial_part = 0.0;
    for (int i = 0; i + 1 < g.t_cells; ++i) {
        const double weight = std::pow(std::sin(t_edges[i + 1]), n) / ht;
        for (int j = 0; j < g.theta_cells; ++j) {
            const double dv = g.at(i + 1, j) - g.at(i, j);
            radial_part += dv * dv * weight * thw[j];
        }
    }
    // |d_theta f|^2 / sin^2 t against sin^n t dt integrates sin^{n-2} over each cell.
    const auto tw_angular = angle_integrals(n - 2, t_edges);
    double angular_part = 0.0;
    for (int i = 0; i < g.t_cells; ++i) {
        const double slice = tw_angular[i];
        for (int j = 0; j + 1 < g.theta_cells; ++j) {
            const double dv = g.at(i, j + 1) - g.at(i, j);
            angular_part +=
                dv * dv / hth * slice * lower * std::pow(std::sin(th_edges[j + 1]), n - 1);
        }
    }
    return radial_part + angular_part;
}

ConeFunction transfer_to_sphere(const ConeFunction& fstar) {
    const auto& p = fstar.profile();
    if (!p.nonincreasing())
        throw ValidationError("transfer_to_sphere: profile must be nonincreasing in t");
    return ConeFunction::radial(fstar.n(), sphere_volume(fstar.n()), p);
}

namespace {

double quotient_from_parts(const ConeFunction& f, double scal_mass) {
    const int dim = f.n() + 1;
    const double p = critical_exponent(dim);
    const double denom = std::pow(lq_integral(f, p), 2.0 / p);
    if (!(denom > 0.0)) throw DomainError("yamabe_quotient: function is identically zero");
    return (yamabe_coefficient(dim) * dirichlet_energy(f) + scal_mass) / denom;
}

}  // namespace

double yamabe_quotient(const ConeFunction& f, double scal) {
    return quotient_from_parts(f, scal * lq_integral(f, 2.0));
}

double yamabe_quotient(const ConeFunction& f, const std::function<double(double)>& scal) {
    const auto v = f.cell_values();
    const auto w = f.cell_measures();
    std::vector<double> t;
    if (f.is_radial()) {
        t = f.profile().nodes();
    } else {
        const auto& g = f.grid();
        t.reserve(v.size());
        for (int i = 0; i < g.t_cells; ++i) {
            const double ti = (i + 0.5) * kPi / g.t_cells;
            for (int j = 0; j < g.theta_cells; ++j) t.push_back(ti);
        }
    }
    double mass = 0.0;
    for (std::size_t k = 0; k < v.size(); ++k) mass += scal(t[k]) * v[k] * v[k] * w[k];
    return quotient_from_parts(f, mass);
}

// ---------------------------------------------------------------------------

void write_profile_csv(std::ostream& out, const RadialProfile& profile) {
    out << "t,value\n";
    const auto c = profile.nodes();
    for (std::size_t k = 0; k < profile.size(); ++k) {
        out << fmt::format("{},{}\n", c[k], profile.values[k]);
    }
}

RadialProfile read_profile_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line.rfind("t,value", 0) != 0)
        throw ParseError("profile CSV: expected header `t,value`");
    std::vector<double> nodes;
    std::vector<double> values;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw ParseError("profile CSV: missing comma in `" + line + "`");
        try {
            nodes.push_back(std::stod(line.substr(0, comma)));
            values.push_back(std::stod(line.substr(comma + 1)));
        } catch (const std::exception&) {
            throw ParseError("profile CSV: malformed number in `" + line + "`");
        }
    }
    return RadialProfile::from_nodes(nodes, std::move(values));
}

}  // namespace yamacone
