#include "yamacone/geometry.hpp"

#include "yamacone/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <numbers>
#include <sstream>

namespace yamacone {

namespace {

constexpr double kPi = std::numbers::pi;

// Above this the reduction recursion is replaced by quadrature.
constexpr int kRecursionLimit = 64;

void require_dimension(int n, int minimum, const char* what) {
    if (n < minimum) {
        std::ostringstream msg;
        msg << what << ": dimension " << n << " below minimum " << minimum;
        throw DomainError(msg.str());
    }
}

}  // namespace

double sphere_volume(int n) {
    require_dimension(n, 1, "sphere_volume");
    const double half = 0.5 * (n + 1);
    return 2.0 * std::pow(kPi, half) / std::tgamma(half);
}

double sphere_yamabe(int n) {
    require_dimension(n, 2, "sphere_yamabe");
    return n * (n - 1.0) * std::pow(sphere_volume(n), 2.0 / n);
}

double yamabe_coefficient(int dim) {
    require_dimension(dim, 3, "yamabe_coefficient");
    return 4.0 * (dim - 1.0) / (dim - 2.0);
}

double critical_exponent(int dim) {
    require_dimension(dim, 3, "critical_exponent");
    return 2.0 * dim / (dim - 2.0);
}

SphereConstants SphereConstants::of(int n) {
    require_dimension(n, 3, "SphereConstants");
    return SphereConstants{n, sphere_volume(n), sphere_yamabe(n), yamabe_coefficient(n),
                           critical_exponent(n)};
}

double sin_power_integral_recursive(int n, double r) {
    if (n < 0) throw DomainError("sin_power_integral: negative exponent");
    const double s = std::sin(r);
    const double c = std::cos(r);
    // Walk the chain of the same parity as n.
    double acc = (n % 2 == 0) ? r : 1.0 - c;
    double s_pow = (n % 2 == 0) ? s : s * s;  // sin^{k-1} for the next k
    for (int k = (n % 2 == 0) ? 2 : 3; k <= n; k += 2) {
        acc = -s_pow * c / k + (k - 1.0) / k * acc;
        s_pow *= s * s;
    }
    return acc;
}

double sin_power_integral_quadrature(int n, double r) {
    if (n < 0) throw DomainError("sin_power_integral: negative exponent");
    if (r == 0.0) return 0.0;
    auto integrand = [n](double t) { return std::pow(std::sin(t), n); };
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, 0.0, r, 20,
                                                                         1e-15);
}

double sin_power_integral(int n, double r) {
    return n <= kRecursionLimit ? sin_power_integral_recursive(n, r)
                                : sin_power_integral_quadrature(n, r);
}

double sin_power_integral(int n, double a, double b) {
    return sin_power_integral(n, b) - sin_power_integral(n, a);
}

// ---------------------------------------------------------------------------

EinsteinData EinsteinData::einstein_metric(std::string name, int n, double volume, double lambda) {
    EinsteinData d{std::move(name), n, volume, lambda, n * lambda, true};
    d.validate();
    return d;
}

EinsteinData EinsteinData::ricci_bounded(std::string name, int n, double volume, double lambda,
                                         double scalar) {
    EinsteinData d{std::move(name), n, volume, lambda, scalar, false};
    d.validate();
    return d;
}

void EinsteinData::validate() const {
    if (n < 2) throw ValidationError("EinsteinData: dimension must be >= 2");
    if (!(volume > 0.0) || !std::isfinite(volume))
        throw ValidationError("EinsteinData: volume must be positive and finite");
    if (!std::isfinite(lambda) || !std::isfinite(scalar))
        throw ValidationError("EinsteinData: curvature data must be finite");
    if (einstein && std::abs(scalar - n * lambda) > 1e-12 * std::max(1.0, std::abs(scalar)))
        throw ValidationError("EinsteinData: Einstein metric requires scalar = n * lambda");
}

EinsteinData EinsteinData::rescaled_to(double target_lambda) const {
    if (!(lambda > 0.0) || !(target_lambda > 0.0))
        throw DomainError("EinsteinData: rescaling needs a positive Ricci bound");
    const double c = lambda / target_lambda;
    EinsteinData out = *this;
    out.volume = std::pow(c, 0.5 * n) * volume;
    out.lambda = target_lambda;
    out.scalar = einstein ? n * target_lambda : scalar / c;
    return out;
}

EinsteinData EinsteinData::normalized() const { return rescaled_to(n - 1.0); }

std::optional<std::string> EinsteinData::bishop_warning() const {
    if (!(lambda > 0.0)) return std::nullopt;
    const double v = normalized().volume;
    const double cap = sphere_volume(n);
    if (v > cap * (1.0 + 1e-12)) {
        std::ostringstream msg;
        msg << name << ": normalized volume " << v << " exceeds round-sphere volume " << cap;
        return msg.str();
    }
    return std::nullopt;
}

SphericalCone::SphericalCone(const EinsteinData& base) {
    base.validate();
    base_ = base.normalized();
    total_volume_ = base_.volume * sin_power_integral(base_.n, kPi);
}

SphericalCone SphericalCone::round(int n) {
    return SphericalCone(EinsteinData::einstein_metric("sphere:" + std::to_string(n), n,
                                                       sphere_volume(n), n - 1.0));
}

double cone_ball_volume(const SphericalCone& cone, double r) {
    if (!(r >= 0.0 && r <= kPi)) throw DomainError("cone_ball_volume: radius outside [0, pi]");
    if (r == kPi) return cone.total_volume();
    return cone.base_volume() * sin_power_integral(cone.base_dimension(), r);
}

double cone_ball_area(const SphericalCone& cone, double r) {
    if (!(r >= 0.0 && r <= kPi)) throw DomainError("cone_ball_area: radius outside [0, pi]");
    if (r == 0.0 || r == kPi) return 0.0;
    return std::pow(std::sin(r), cone.base_dimension()) * cone.base_volume();
}

// ---------------------------------------------------------------------------

void require_interior_angle(double t, const char* what) {
    if (!(t > 0.0 && t < kPi)) {
        std::ostringstream msg;
        msg << what << ": angle " << t << " is not in the open interval (0, pi)";
        throw DomainError(msg.str());
    }
}

ConeSectional cone_sectional(double k_base, double t) {
    require_interior_angle(t, "cone_sectional");
    const double s = std::sin(t);
    const double c = std::cos(t);
    return ConeSectional{(k_base - c * c) / (s * s), 1.0};
}

std::vector<double> cone_ricci(std::span<const double> base_eigenvalues, double t) {
    require_interior_angle(t, "cone_ricci");
    const auto n = base_eigenvalues.size();
    if (n < 2) throw DomainError("cone_ricci: base dimension must be >= 2");
    const double s2 = std::sin(t) * std::sin(t);
    const double c2 = std::cos(t) * std::cos(t);
    std::vector<double> out;
    out.reserve(n + 1);
    for (double r : base_eigenvalues) out.push_back((r - (n - 1.0) * c2 + s2) / s2);
    out.push_back(static_cast<double>(n));
    return out;
}

double conformal_map_h0(double t) {
    require_interior_angle(t, "conformal_map_h0");
    // arccosh(1/sin t) on [pi/2, pi), reflected oddly about pi/2; asinh(-cot t)
    // is the same function without the cancellation near pi/2.
    return -std::asinh(std::cos(t) / std::sin(t));
}

double conformal_map_h0_inverse(double u) { return 0.5 * kPi + std::atan(std::sinh(u)); }

double conformal_factor_f0(double u) {
    const double c = std::cosh(u);
    return 1.0 / (c * c);
}

}  // namespace yamacone
