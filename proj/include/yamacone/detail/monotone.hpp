#pragma once

#include <cmath>
#include <limits>

namespace yamacone::detail {

// Smallest x in [lo, hi] with f(x) >= target for nondecreasing f, found by
// Newton steps safeguarded with bisection. `df` is the derivative of f.
// Plateaus have zero slope and are resolved by bisection toward their left end.
// `guess` seeds the first step when it lies strictly inside the bracket.
template <typename F, typename DF>
double invert_nondecreasing(F&& f, DF&& df, double target, double lo, double hi,
                            double guess = std::numeric_limits<double>::quiet_NaN()) {
    if (f(lo) >= target) return lo;
    if (f(hi) < target) return hi;
    constexpr double eps = std::numeric_limits<double>::epsilon();
    double x = (guess > lo && guess < hi) ? guess : 0.5 * (lo + hi);
    for (int iter = 0; iter < 400; ++iter) {
        const double fx = f(x);
        if (fx >= target) {
            hi = x;
        } else {
            lo = x;
        }
        const double tol = 2.0 * eps * std::abs(x) + std::numeric_limits<double>::min();
        if (hi - lo <= tol) break;
        const double mid = 0.5 * (lo + hi);
        const double slope = df(x);
        double next = (slope > 0.0) ? x - (fx - target) / slope : mid;
        if (!(next > lo && next < hi)) next = mid;
        if (std::abs(next - x) <= tol) return next;
        x = next;
    }
    return hi;
}

}  // namespace yamacone::detail
