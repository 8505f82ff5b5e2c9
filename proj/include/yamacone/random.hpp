#pragma once

#include "yamacone/isoperimetry.hpp"
#include "yamacone/symmetrization.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace yamacone {

/// Seeded source whose draws are identical on every platform: the engine is
/// fully specified by the standard and uniforms are built from its raw bits.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int integer(int lo, int hi) {  // inclusive
        return lo + static_cast<int>(uniform() * (hi - lo + 1));
    }

private:
    std::mt19937_64 engine_;
};

/// Smooth positive function on the cone over the round S^n: a constant floor
/// plus a few von Mises-Fisher bumps placed in the (pole, colatitude, angle) plane.
ConeFunction random_round2d(Rng& rng, int n, int theta_cells, int t_cells);

/// Round-base slice set on `cells` uniform slices with smoothly varying ball
/// radii; some runs of slices are centered on the antipode.
SliceSet random_slice_set(Rng& rng, int n, int cells);

/// Eigenvalue list of length n, each entry in [n - 1, n - 1 + spread].
std::vector<double> random_ricci_bounded(Rng& rng, int n, double spread);

}  // namespace yamacone
