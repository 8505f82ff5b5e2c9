#include "yamacone/random.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace yamacone {

namespace {
constexpr double kPi = std::numbers::pi;
}

ConeFunction random_round2d(Rng& rng, int n, int theta_cells, int t_cells) {
    struct Bump {
        double weight, kappa, cos_a, sin_a;
    };
    const int count = rng.integer(1, 4);
    std::vector<Bump> bumps;
    for (int i = 0; i < count; ++i) {
        const double alpha = rng.uniform(0.0, 2.0 * kPi);
        bumps.push_back({rng.uniform(0.5, 2.0), rng.uniform(1.0, 4.0), std::cos(alpha),
                         std::sin(alpha)});
    }
    const double floor = rng.uniform(0.0, 0.5);
    return ConeFunction::round2d(n, theta_cells, t_cells, [&](double theta, double t) {
        // <x, c> for x = (cos t, sin t * y), y . E = cos theta, c = (cos a, sin a E)
        const double ct = std::cos(t), st = std::sin(t), cth = std::cos(theta);
        double v = floor;
        for (const auto& b : bumps) v += b.weight * std::exp(b.kappa * (ct * b.cos_a + st * cth * b.sin_a - 1.0));
        return v;
    });
}

SliceSet random_slice_set(Rng& rng, int n, int cells) {
    auto t = uniform_angles(cells);
    const double base = rng.uniform(0.4, 2.2);
    const double a1 = rng.uniform(0.0, 0.6), k1 = rng.uniform(0.5, 3.0), p1 = rng.uniform(0.0, 2 * kPi);
    const double a2 = rng.uniform(0.0, 0.3), k2 = rng.uniform(2.0, 6.0), p2 = rng.uniform(0.0, 2 * kPi);
    std::vector<double> rho(t.size());
    for (std::size_t k = 0; k < t.size(); ++k) {
        const double r = base + a1 * std::sin(k1 * t[k] + p1) + a2 * std::sin(k2 * t[k] + p2);
        rho[k] = std::clamp(r, 0.0, kPi);
    }
    std::vector<SliceCenter> centers(t.size(), SliceCenter::pole);
    if (rng.uniform() < 0.5) {
        const double lo = rng.uniform(0.3, 2.0);
        const double hi = lo + rng.uniform(0.2, 0.8);
        for (std::size_t k = 0; k < t.size(); ++k) {
            if (t[k] > lo && t[k] < hi) {
                centers[k] = SliceCenter::antipode;
                rho[k] = std::min(rho[k], 0.5 * kPi);
            }
        }
    }
    return SliceSet::from_radii(n, std::move(t), std::move(rho), std::move(centers));
}

std::vector<double> random_ricci_bounded(Rng& rng, int n, double spread) {
    std::vector<double> out(n);
    for (double& r : out) r = (n - 1.0) + rng.uniform(0.0, spread);
    return out;
}

}  // namespace yamacone
