#pragma once

#include "yamacone/geometry.hpp"

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace yamacone {

// ---------------------------------------------------------------------------
// Isoperimetric profiles
// ---------------------------------------------------------------------------

/// Fraction of the round S^m covered by a geodesic ball of radius r.
double sphere_ball_fraction(int m, double r);

/// Smallest radius r with sphere_ball_fraction(m, r) >= beta.
double radius_for_volume(int m, double beta);

/// Normalized perimeter Vol(dB)/V_m of the ball covering the fraction beta of S^m.
double sphere_iso_profile(int m, double beta);

/// Normalized perimeter of the vertex ball covering the fraction beta of the cone.
double cone_iso_profile(const SphericalCone& cone, double beta);

struct IsoSample {
    double beta = 0.0;
    double perimeter = 0.0;
};

struct IsoProfile {
    std::string provenance;
    std::vector<IsoSample> samples;
};

/// beta_k = k / (count + 1), k = 1..count.
std::vector<double> profile_fractions(int count);

IsoProfile sample_sphere_profile(int m, std::span<const double> betas);
IsoProfile sample_cone_profile(const SphericalCone& cone, std::span<const double> betas);

/// CSV with header `beta,perimeter`.
void write_profile_csv(std::ostream& out, const IsoProfile& profile);

// ---------------------------------------------------------------------------
// Distances and model dilation
// ---------------------------------------------------------------------------

/// Distance in the spherical suspension between (x, t1) and (y, t2) when the
/// base points are at distance d_base.
double suspension_distance(double d_base, double t1, double t2);

/// Radius of the r-neighborhood of a geodesic ball of radius rho in S^m.
double enlarge_ball(int m, double rho, double r);

// ---------------------------------------------------------------------------
// Slice sets
// ---------------------------------------------------------------------------

/// Which point of the round base a slice ball is centered on: the fixed
/// point E used by symmetrization, or its antipode.
enum class SliceCenter { pole, antipode };

/// A region of the cone described slice by slice. Slice k occupies the slab
/// of angles between the midpoints to its neighbours (the first and last slabs
/// extend to the vertices). `frac` is Vol(U_t)/Vol(M). For round bases `rho`
/// holds the geodesic radius of the slice ball about its center.
struct SliceSet {
    int n = 0;
    std::vector<double> t;
    std::vector<double> frac;
    std::optional<std::vector<double>> rho;
    std::vector<SliceCenter> centers;  // empty: every slice centered at the pole

    static SliceSet from_fractions(int n, std::vector<double> t, std::vector<double> frac);
    static SliceSet from_radii(int n, std::vector<double> t, std::vector<double> rho,
                               std::vector<SliceCenter> centers = {});

    /// Geodesic ball of the given radius about the vertex at t = 0, sampled on `t`.
    static SliceSet vertex_ball(int n, std::vector<double> t, double radius);

    std::size_t size() const { return t.size(); }
    SliceCenter center(std::size_t k) const {
        return centers.empty() ? SliceCenter::pole : centers[k];
    }

    /// Throws ValidationError on malformed data.
    void validate() const;

    /// Slab boundaries: 0, midpoints between consecutive angles, pi.
    std::vector<double> edges() const;
};

/// Midpoints of `cells` equal cells partitioning (0, pi).
std::vector<double> uniform_angles(int cells);

/// Vol(U) / Vol(X); independent of the base volume.
double normalized_volume(const SliceSet& u);

/// Replace each slice by the ball about the pole with the same normalized volume.
SliceSet symmetrize_set(const SliceSet& u);

/// Evaluation grid for dilations: colatitude cells on the base sphere and
/// panels along the cone angle.
struct GridSpec {
    int theta_cells = 800;
    int t_cells = 800;
};

/// Slice at angle t of the r-neighborhood of a round-base slice set. The
/// slice is B(E, pole_radius) united with B(-E, antipode_radius); a negative
/// radius means that part is empty.
struct DilatedSlice {
    double pole_radius = -1.0;
    double antipode_radius = -1.0;
    double fraction = 0.0;  // exact normalized slice volume
};

DilatedSlice dilated_slice(const SliceSet& u, double r, double t);

/// Vol(B(U, r)) in the cone over the round S^n (that is, in S^{n+1}).
double neighborhood_volume(const SliceSet& u, double r, const GridSpec& grid);

struct MinkowskiEstimate {
    double content = 0.0;      // extrapolated liminf of (Vol(B(U,r)) - Vol(U)) / r
    double volume = 0.0;       // Vol(U) on the same grid
    std::vector<double> radii;
    std::vector<double> quotients;
};

/// `radii` must be strictly decreasing; the last two are used for linear
/// Richardson extrapolation to r = 0.
MinkowskiEstimate minkowski_content(const SliceSet& u, std::span<const double> radii,
                                    const GridSpec& grid);

// ---------------------------------------------------------------------------
// Stability of slices
// ---------------------------------------------------------------------------

/// The slice M x {t} as a hypersurface of the cone. lambda1 is the first
/// nonzero Laplace eigenvalue of the base normalized to Ricci >= (n-1) g.
struct StabilityInput {
    double t = 0.0;
    int n = 0;
    double lambda1 = 0.0;

    double sigma2() const;         // n cot^2 t
    double ricci_normal() const {  // Ricci(dt, dt)
        return static_cast<double>(n);
    }
};

/// lambda1/sin^2 t - (n + n cot^2 t). Nonnegative means every mean-zero
/// first-eigenfunction variation has Q(h, h) >= 0.
double slice_stability_margin(const StabilityInput& input);

}  // namespace yamacone
