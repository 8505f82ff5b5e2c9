#include "yamacone/variational.hpp"

#include "yamacone/geometry.hpp"

#include <json.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <ostream>

namespace yamacone {

namespace {


struct Parts {
    double gradient = 0.0;  // \int f'^2
    double mass = 0.0;      // \int f^2
    double power = 0.0;     // \int f^p
};

Parts integrate(const LineProfile& f, double p) {
    Parts out;
    for (std::size_t i = 0; i + 1 < f.x.size(); ++i) {
        const double h = f.x[i + 1] - f.x[i];
        const double d = f.values[i + 1] - f.values[i];
        const double l = f.values[i], r = f.values[i + 1];
        out.gradient += d * d / h;
        out.mass += 0.5 * h * (l * l + r * r);
        out.power += 0.5 * h * (std::pow(std::abs(l), p) + std::pow(std::abs(r), p));
    }
    return out;
}

void check_profile(const LineProfile& f) {
    if (f.x.size() != f.values.size() || f.x.size() < 3)
        throw ValidationError("line profile: need matching x and values with at least 3 nodes");
    for (std::size_t i = 0; i + 1 < f.x.size(); ++i) {
        if (!(f.x[i + 1] > f.x[i])) throw ValidationError("line profile: x must increase");
    }
    for (double v : f.values) {
        if (!std::isfinite(v)) throw ValidationError("line profile: non-finite value");
    }
}

// Solves the interior system of A = -a D^2 + s with zero Dirichlet data.
// Diagonal dominance makes the Thomas sweep stable.
std::vector<double> solve_operator(double a, double s, double h, const std::vector<double>& rhs) {
    const std::size_t m = rhs.size();
    const double off = -a / (h * h);
    const double diag = 2.0 * a / (h * h) + s;
    std::vector<double> c(m), d(m);
    c[0] = off / diag;
    d[0] = rhs[0] / diag;
    for (std::size_t i = 1; i < m; ++i) {
        const double denom = diag - off * c[i - 1];
        c[i] = off / denom;
        d[i] = (rhs[i] - off * d[i - 1]) / denom;
    }
    std::vector<double> x(m);
    x[m - 1] = d[m - 1];
    for (std::size_t i = m - 1; i-- > 0;) x[i] = d[i] - c[i] * x[i + 1];
    return x;
}

// Interior values plus zero ends.
LineProfile with_ends(const std::vector<double>& x, const std::vector<double>& interior) {
    LineProfile f{x, std::vector<double>(x.size(), 0.0)};
    std::copy(interior.begin(), interior.end(), f.values.begin() + 1);
    return f;
}

}  // namespace

double LineProblem::p() const { return critical_exponent(n + 1); }
double LineProblem::a() const { return yamabe_coefficient(n + 1); }

std::vector<double> LineProblem::grid() const {
    std::vector<double> x(nodes);
    const double h = spacing();
    for (int i = 0; i < nodes; ++i) x[i] = -half_width + i * h;
    x.back() = half_width;
    return x;
}

void LineProblem::validate() const {
    if (n < 2) throw ValidationError("LineProblem: base dimension must be >= 2");
    if (!(volume > 0.0) || !std::isfinite(volume))
        throw ValidationError("LineProblem: volume must be positive");
    if (!(scal > 0.0) || !std::isfinite(scal))
        throw ValidationError("LineProblem: scalar curvature must be positive");
    if (!(half_width > 0.0) || !std::isfinite(half_width))
        throw ValidationError("LineProblem: domain half-width must be positive");
    if (nodes < 5) throw ValidationError("LineProblem: need at least 5 grid nodes");
}

double line_quotient(const LineProblem& problem, const LineProfile& f) {
    problem.validate();
    check_profile(f);
    const double p = problem.p();
    const Parts parts = integrate(f, p);
    if (!(parts.power > 0.0)) throw DomainError("line_quotient: function is identically zero");
    const double numerator = problem.a() * parts.gradient + problem.scal * parts.mass;
    return std::pow(problem.volume, 1.0 - 2.0 / p) * numerator / std::pow(parts.power, 2.0 / p);
}

double euler_lagrange_residual(const LineProblem& problem, const LineProfile& f) {
    problem.validate();
    check_profile(f);
    const double a = problem.a();
    const double s = problem.scal;
    const double p = problem.p();
    const std::size_t m = f.x.size();
    std::vector<double> linear(m - 2), nonlinear(m - 2);
    for (std::size_t i = 1; i + 1 < m; ++i) {
        const double hl = f.x[i] - f.x[i - 1];
        const double hr = f.x[i + 1] - f.x[i];
        const double second = 2.0 *
                              ((f.values[i + 1] - f.values[i]) / hr -
                               (f.values[i] - f.values[i - 1]) / hl) /
                              (hl + hr);
        linear[i - 1] = 2.0 * (-a * second + s * f.values[i]);
        nonlinear[i - 1] = std::pow(std::abs(f.values[i]), p - 1.0);
    }
    double lq = 0.0, qq = 0.0, ll = 0.0;
    for (std::size_t k = 0; k < linear.size(); ++k) {
        lq += linear[k] * nonlinear[k];
        qq += nonlinear[k] * nonlinear[k];
        ll += linear[k] * linear[k];
    }
    if (!(qq > 0.0) || !(ll > 0.0))
        throw DomainError("euler_lagrange_residual: function vanishes in the interior");
    const double mu = lq / qq;
    double rr = 0.0;
    for (std::size_t k = 0; k < linear.size(); ++k) {
        const double r = linear[k] - mu * nonlinear[k];
        rr += r * r;
    }
    return std::sqrt(rr / ll);
}

double closed_form_line(int n, double volume) {
    if (n < 2) throw DomainError("closed_form_line: base dimension must be >= 2");
    if (!(volume > 0.0)) throw DomainError("closed_form_line: volume must be positive");
    return std::pow(volume / sphere_volume(n), 2.0 / (n + 1)) * sphere_yamabe(n + 1);
}

double closed_form_line(const LineProblem& problem) {
    problem.validate();
    // f(t) = g(c t) with c^2 = scal / (n(n-1)) maps onto the normalized problem.
    const double c = std::sqrt(problem.scal / (problem.n * (problem.n - 1.0)));
    return std::pow(c, 1.0 + 2.0 / problem.p()) * closed_form_line(problem.n, problem.volume);
}

MinimizeResult minimize_line(const LineProblem& problem, const MinimizeOptions& options) {
    problem.validate();
    const double a = problem.a();
    const double s = problem.scal;
    const double p = problem.p();
    const double h = problem.spacing();
    const auto x = problem.grid();
    const std::size_t m = x.size() - 2;

    std::vector<double> f(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double z = (x[i + 1] - options.initial_center) / options.initial_width;
        f[i] = std::exp(-z * z);
    }

    auto quadratic = [&](const std::vector<double>& v) {
        double grad = 0.0, mass = 0.0;
        double prev = 0.0;
        for (double vi : v) {
            grad += (vi - prev) * (vi - prev);
            mass += vi * vi;
            prev = vi;
        }
        grad += prev * prev;
        return a * grad / h + s * h * mass;
    };
    auto power = [&](const std::vector<double>& v) {
        double acc = 0.0;
        for (double vi : v) acc += std::pow(vi, p);
        return h * acc;
    };
    const double scale = std::pow(problem.volume, 1.0 - 2.0 / p);
    auto quotient = [&](double num, double pw) { return scale * num / std::pow(pw, 2.0 / p); };

    MinimizeResult result;
    result.closed_form = closed_form_line(problem);
    double num = quadratic(f);
    double pw = power(f);
    double value = quotient(num, pw);
    result.history.push_back(value);

    std::vector<double> rhs(m), trial(m);
    int it = 0;
    double residual = 1.0;
    for (; it < options.max_iterations; ++it) {
        for (std::size_t i = 0; i < m; ++i) rhs[i] = std::pow(f[i], p - 1.0);
        auto target = solve_operator(a, s, h, rhs);
        const double c = num / pw;

        bool accepted = false;
        double trial_num = 0.0, trial_pw = 0.0, trial_value = 0.0;
        for (double alpha = 1.0; alpha > 1e-8; alpha *= 0.5) {
            double peak = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                trial[i] = std::max(0.0, (1.0 - alpha) * f[i] + alpha * c * target[i]);
                peak = std::max(peak, trial[i]);
            }
            if (!(peak > 0.0)) continue;
            for (double& v : trial) v /= peak;
            trial_num = quadratic(trial);
            trial_pw = power(trial);
            trial_value = quotient(trial_num, trial_pw);
            if (trial_value <= value) {
                accepted = true;
                break;
            }
        }
        if (!accepted) break;  // no descent left above round-off

        const double drop = (value - trial_value) / value;
        f.swap(trial);
        num = trial_num;
        pw = trial_pw;
        value = trial_value;
        result.history.push_back(value);
        if (drop < options.tolerance) {
            residual = euler_lagrange_residual(problem, with_ends(x, f));
            if (residual < options.residual_tolerance) {
                ++it;
                break;
            }
        }
    }

    result.value = value;
    result.iterations = it;
    result.minimizer = with_ends(x, f);
    result.residual = euler_lagrange_residual(problem, result.minimizer);
    result.converged = result.residual < options.residual_tolerance;
    if (!result.converged) {
        throw ConvergenceError(
            fmt::format("minimize_line: residual {} above {} after {} iterations", result.residual,
                        options.residual_tolerance, it),
            std::move(result));
    }
    return result;
}

ConeFunction pullback_to_cone(const LineProblem& problem, const LineProfile& f, int cells) {
    problem.validate();
    check_profile(f);
    const double normalized = problem.n * (problem.n - 1.0);
    if (std::abs(problem.scal - normalized) > 1e-9 * normalized)
        throw DomainError("pullback_to_cone: the base must be normalized to scal = n(n-1)");
    const double power = 0.5 * (problem.n - 1.0);
    auto line_value = [&](double u) {
        if (u <= f.x.front() || u >= f.x.back()) return 0.0;
        const auto hi = std::upper_bound(f.x.begin(), f.x.end(), u) - f.x.begin();
        const auto lo = hi - 1;
        const double w = (u - f.x[lo]) / (f.x[hi] - f.x[lo]);
        return (1.0 - w) * f.values[lo] + w * f.values[hi];
    };
    auto profile = RadialProfile::uniform(cells, [&](double t) {
        return line_value(conformal_map_h0(t)) * std::pow(std::sin(t), -power);
    });
    return ConeFunction::radial(problem.n, problem.volume, std::move(profile));
}

double cone_route_quotient(const LineProblem& problem, const LineProfile& f, int cells) {
    const auto w = pullback_to_cone(problem, f, cells);
    return yamabe_quotient(w, problem.n * (problem.n + 1.0));
}

std::string minimize_record_json(const LineProblem& problem, const MinimizeResult& result) {
    const double fields[] = {problem.volume, problem.scal, result.value, result.closed_form,
                             result.relative_error(), result.residual};
    for (double v : fields) {
        if (!std::isfinite(v)) throw DomainError("minimize record: non-finite field");
    }
    nlohmann::ordered_json j;
    j["n"] = problem.n;
    j["V"] = problem.volume;
    j["scal"] = problem.scal;
    j["value"] = result.value;
    j["closed_form"] = result.closed_form;
    j["rel_err"] = result.relative_error();
    j["residual"] = result.residual;
    j["iterations"] = result.iterations;
    return j.dump();
}

void write_minimizer_csv(std::ostream& out, const LineProfile& f) {
    out << "x,value\n";
    for (std::size_t i = 0; i < f.x.size(); ++i) out << fmt::format("{},{}\n", f.x[i], f.values[i]);
}

}  // namespace yamacone
