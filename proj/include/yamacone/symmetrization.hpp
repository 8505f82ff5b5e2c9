#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <variant>
#include <vector>

namespace yamacone {

/// Step function of the cone angle: values[k] on the shell (edges[k], edges[k+1]).
/// Uniform profiles sample a function at shell midpoints; rearrangements
/// produce one shell per distinct input value.
struct RadialProfile {
    std::vector<double> edges;
    std::vector<double> values;

    /// `cells` equal shells over (0, pi), sampled at their midpoints.
    static RadialProfile uniform(int cells, const std::function<double(double)>& fn);

    /// Shells bounded by midpoints between consecutive nodes, closed off at 0 and pi.
    static RadialProfile from_nodes(std::span<const double> nodes, std::vector<double> values);

    std::size_t size() const { return values.size(); }
    std::vector<double> nodes() const;
    bool nonincreasing() const;
    void validate() const;
};

/// Samples on (colatitude x angle) cells over the cone on the unit round S^n,
/// stored angle-major: values[i * theta_cells + j] is cell (t_i, theta_j).
/// Such a function on S^{n+1} is invariant under rotations fixing the pole.
struct Round2dGrid {
    int theta_cells = 0;
    int t_cells = 0;
    std::vector<double> values;

    double at(int i, int j) const { return values[static_cast<std::size_t>(i) * theta_cells + j]; }
};

/// A function on the spherical cone over an n-dimensional base of volume V.
class ConeFunction {
public:
    static ConeFunction radial(int n, double volume, RadialProfile profile);

    /// Over the round S^n (volume V_n).
    static ConeFunction round2d(int n, Round2dGrid grid);
    static ConeFunction round2d(int n, int theta_cells, int t_cells,
                                const std::function<double(double theta, double t)>& fn);

    int n() const { return n_; }
    double volume() const { return volume_; }
    bool is_radial() const { return std::holds_alternative<RadialProfile>(data_); }
    const RadialProfile& profile() const;
    const Round2dGrid& grid() const;

    /// Cell values and cell measures in the canonical (t, theta) order.
    std::vector<double> cell_values() const;
    std::vector<double> cell_measures() const;

private:
    ConeFunction(int n, double volume, std::variant<RadialProfile, Round2dGrid> data);

    int n_ = 0;
    double volume_ = 0.0;
    std::variant<RadialProfile, Round2dGrid> data_;
};

/// Measure of each shell, V \int sin^n over it.
std::vector<double> shell_measures(const RadialProfile& profile, int n, double volume);

/// Vol({f > s}).
double superlevel_volume(const ConeFunction& f, double s);

/// \int |f|^q dvol.
double lq_integral(const ConeFunction& f, double q);
double lq_norm(const ConeFunction& f, double q);

/// Decreasing rearrangement about the vertex at t = 0. The input cells are
/// ordered by value (ties by their (t, theta) index) and their measures are
/// stacked into vertex shells, so the result is exactly equimeasurable with
/// the cellwise-constant input. Throws ValidationError on negative values.
ConeFunction rearrange(const ConeFunction& f);

/// Measure-weighted averages of a radial function on `cells` equal shells.
/// Preserves the integral; used to evaluate energies of rearrangements,
/// whose one-shell-per-cell form is too ragged for difference quotients.
ConeFunction coarsen(const ConeFunction& radial, int cells);

/// \int |grad f|^2 dvol by difference quotients between neighbouring cells.
double dirichlet_energy(const ConeFunction& f);

/// The same angular profile read on the round S^{n+1} (base volume V_n).
/// Integrals of powers and the energy scale by V_n / V.
ConeFunction transfer_to_sphere(const ConeFunction& fstar);

/// (a_{n+1} E(f) + \int scal f^2) / ||f||_{p_{n+1}}^2 with dimension n+1 constants.
double yamabe_quotient(const ConeFunction& f, double scal);
double yamabe_quotient(const ConeFunction& f, const std::function<double(double t)>& scal);

/// CSV with header `t,value`, one row per shell midpoint.
void write_profile_csv(std::ostream& out, const RadialProfile& profile);
RadialProfile read_profile_csv(std::istream& in);

}  // namespace yamacone
