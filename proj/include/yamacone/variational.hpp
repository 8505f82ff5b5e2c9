#pragma once

#include "yamacone/errors.hpp"
#include "yamacone/symmetrization.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace yamacone {

/// Yamabe quotient of functions of the line on M x R with metric g + dt^2,
/// for a base of dimension n, volume V and constant scalar curvature `scal`.
struct LineProblem {
    int n = 0;
    double volume = 0.0;
    double scal = 0.0;
    double half_width = 12.0;
    int nodes = 4001;

    double p() const;  // p_{n+1} = 2(n+1)/(n-1)
    double a() const;  // a_{n+1} = 4n/(n-1)
    double spacing() const { return 2.0 * half_width / (nodes - 1); }
    std::vector<double> grid() const;

    /// Throws ValidationError unless n >= 2, V > 0, scal > 0, T > 0, nodes >= 5.
    void validate() const;
};

/// Grid function on [-T, T]; the end values are the Dirichlet data.
struct LineProfile {
    std::vector<double> x;
    std::vector<double> values;
};

/// (a \int f'^2 V + scal V \int f^2) / (V^{2/p} (\int f^p)^{2/p}), with
/// difference quotients for f' and trapezoids for the integrals.
double line_quotient(const LineProblem& problem, const LineProfile& f);

/// Relative size of -2a f'' + 2 scal f - mu f^{p-1} over the interior nodes,
/// with mu the least-squares multiplier. Zero exactly at discrete critical points.
double euler_lagrange_residual(const LineProblem& problem, const LineProfile& f);

/// (V/V_n)^{2/(n+1)} Y_{n+1}.
double closed_form_line(int n, double volume);

/// The infimum of the line problem for arbitrary positive scal. It reduces to
/// closed_form_line when scal = n(n-1).
double closed_form_line(const LineProblem& problem);

struct MinimizeOptions {
    int max_iterations = 20000;
    double tolerance = 1e-13;          // relative decrease of the quotient per step
    double residual_tolerance = 1e-6;  // Euler-Lagrange residual at convergence
    double initial_width = 2.0;        // of the Gaussian starting bump
    double initial_center = 0.0;
};

struct MinimizeResult {
    double value = 0.0;
    double closed_form = 0.0;
    double residual = 0.0;
    int iterations = 0;
    bool converged = false;
    LineProfile minimizer;
    std::vector<double> history;  // quotient after each accepted step

    double relative_error() const { return (value - closed_form) / closed_form; }
};

class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, MinimizeResult best)
        : std::runtime_error(what), best_(std::move(best)) {}
    const MinimizeResult& best() const { return best_; }

private:
    MinimizeResult best_;
};

/// Preconditioned descent on nonnegative grid functions vanishing at +-T:
/// each step moves toward c A^{-1} f^{p-1}, where A = -a d^2/dt^2 + scal is
/// the discrete Dirichlet operator, and backtracks until the quotient drops.
MinimizeResult minimize_line(const LineProblem& problem, const MinimizeOptions& options = {});

/// The cone function w(t) = F(h0(t)) sin(t)^{-(n-1)/2} on `cells` shells,
/// conformally equivalent to F on M x R. The problem must be normalized
/// (scal = n(n-1)).
ConeFunction pullback_to_cone(const LineProblem& problem, const LineProfile& f, int cells);

/// Yamabe quotient of the pullback on the cone, whose scalar curvature is n(n+1).
double cone_route_quotient(const LineProblem& problem, const LineProfile& f, int cells);

/// {n, V, scal, value, closed_form, rel_err, residual, iterations} on one line.
std::string minimize_record_json(const LineProblem& problem, const MinimizeResult& result);

/// CSV with header `x,value`.
void write_minimizer_csv(std::ostream& out, const LineProfile& f);

}  // namespace yamacone
