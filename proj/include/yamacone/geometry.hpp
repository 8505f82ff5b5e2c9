#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace yamacone {

// ---------------------------------------------------------------------------
// Round sphere constants
// ---------------------------------------------------------------------------

/// Volume of the unit round sphere S^n, 2 pi^{(n+1)/2} / Gamma((n+1)/2).
double sphere_volume(int n);

/// Yamabe constant of the round S^n, n(n-1) V_n^{2/n}.
double sphere_yamabe(int n);

/// Gradient coefficient 4(d-1)/(d-2) of the Yamabe functional in dimension d >= 3.
double yamabe_coefficient(int dim);

/// Critical Sobolev exponent 2d/(d-2) in dimension d >= 3.
double critical_exponent(int dim);

struct SphereConstants {
    int n = 0;
    double volume = 0.0;
    double yamabe = 0.0;
    double a = 0.0;
    double p = 0.0;

    /// Requires n >= 3 so that a and p are finite.
    static SphereConstants of(int n);
};

// ---------------------------------------------------------------------------
// Integrals of sin^n
// ---------------------------------------------------------------------------

/// \int_0^r sin^n(t) dt. Uses the reduction recursion for moderate n and
/// adaptive Gauss-Kronrod quadrature beyond it.
double sin_power_integral(int n, double r);

/// \int_a^b sin^n(t) dt.
double sin_power_integral(int n, double a, double b);

double sin_power_integral_recursive(int n, double r);
double sin_power_integral_quadrature(int n, double r);

// ---------------------------------------------------------------------------
// Base manifolds and their spherical cones
// ---------------------------------------------------------------------------

/// A closed base manifold reduced to the data the cone construction needs:
/// dimension, volume, a Ricci lower bound (the Einstein constant when
/// `einstein` is set) and scalar curvature.
struct EinsteinData {
    std::string name;
    int n = 0;
    double volume = 0.0;
    double lambda = 0.0;
    double scalar = 0.0;
    bool einstein = true;

    /// Einstein metric Ricci = lambda g, so scalar = n lambda.
    static EinsteinData einstein_metric(std::string name, int n, double volume, double lambda);

    /// Metric with Ricci >= lambda g that is not assumed Einstein.
    static EinsteinData ricci_bounded(std::string name, int n, double volume, double lambda,
                                      double scalar);

    /// Throws ValidationError when n < 2, volume <= 0, or the Einstein
    /// relation scalar = n lambda is violated.
    void validate() const;

    /// Metric c g with c chosen so the Ricci bound becomes `target_lambda`;
    /// the volume scales by c^{n/2}.
    EinsteinData rescaled_to(double target_lambda) const;

    /// Rescaled so that lambda = n - 1.
    EinsteinData normalized() const;

    /// Bishop's inequality caps the normalized volume by V_n. A violation
    /// means the data cannot come from a real metric; it is reported, not thrown.
    std::optional<std::string> bishop_warning() const;
};

/// The suspension M x [0, pi] with metric sin^2(t) g + dt^2, where g is the
/// base metric normalized to Ricci >= (n-1) g.
class SphericalCone {
public:
    explicit SphericalCone(const EinsteinData& base);

    /// Cone over the unit round S^n.
    static SphericalCone round(int n);

    const EinsteinData& base() const { return base_; }
    int base_dimension() const { return base_.n; }
    int dimension() const { return base_.n + 1; }
    double base_volume() const { return base_.volume; }
    double total_volume() const { return total_volume_; }

private:
    EinsteinData base_;
    double total_volume_ = 0.0;
};

/// Volume of the geodesic ball of radius r about a vertex, V \int_0^r sin^n.
double cone_ball_volume(const SphericalCone& cone, double r);

/// Area of the boundary of that ball, sin^n(r) V. Zero at the vertices.
double cone_ball_area(const SphericalCone& cone, double r);

// ---------------------------------------------------------------------------
// Curvature of the cone metric
// ---------------------------------------------------------------------------

struct ConeSectional {
    double tangential = 0.0;
    double radial = 0.0;
};

/// Sectional curvatures of the cone at angle t for a base plane of curvature k_base.
ConeSectional cone_sectional(double k_base, double t);

/// Ricci eigenvalues of the cone at angle t in a frame that diagonalizes the
/// base Ricci tensor. The n tangential eigenvalues come first, the radial
/// eigenvalue (always n) last.
std::vector<double> cone_ricci(std::span<const double> base_eigenvalues, double t);

// ---------------------------------------------------------------------------
// Conformal identification of the punctured cone with M x R
// ---------------------------------------------------------------------------

/// Odd diffeomorphism (0, pi) -> R with cosh(h0(t)) sin(t) = 1 and
/// h0'(t) = 1/sin(t); h0(pi/2) = 0.
double conformal_map_h0(double t);

/// Inverse of conformal_map_h0.
double conformal_map_h0_inverse(double u);

/// cosh^{-2}(u); pulling back f0 (g + du^2) along h0 gives the cone metric.
double conformal_factor_f0(double u);

/// Throws DomainError unless 0 < t < pi.
void require_interior_angle(double t, const char* what);

}  // namespace yamacone
