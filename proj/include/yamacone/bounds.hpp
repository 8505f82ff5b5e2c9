#pragma once

#include "yamacone/geometry.hpp"
#include "yamacone/variational.hpp"

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace yamacone {

/// A manifold stored at its natural metric; normalization happens on use.
struct CatalogEntry {
    std::string name;
    int n = 0;
    double lambda = 0.0;
    double volume = 0.0;
    bool einstein = true;
    std::optional<double> scal;  // defaults to n * lambda
    std::optional<double> rv;    // sup of volume over Ricci >= (n-1) metrics, when known
    std::string note;

    EinsteinData data() const;

    /// Same metric scaled so the Ricci bound becomes `target`.
    CatalogEntry rescaled_to(double target) const;
};

class Catalog {
public:
    /// sphere:<n>, cp2 and rp3.
    static Catalog builtin();

    /// Adds entries from a JSON array [{name, n, lambda, volume, einstein, rv?, scal?}].
    void load_json(std::istream& in);
    void add(CatalogEntry entry);

    /// `name` or `name:param`; only `sphere` takes a parameter.
    CatalogEntry lookup(const std::string& item) const;

    /// `item` or `product:item,item,...`. Throws ParseError on unknown names.
    CatalogEntry resolve(const std::string& spec) const;

    std::vector<std::string> names() const;

private:
    std::map<std::string, CatalogEntry> entries_;
};

CatalogEntry sphere_entry(int n);

/// Riemannian product of Einstein factors, each rescaled to the first
/// factor's Einstein constant.
CatalogEntry product_einstein(const std::vector<CatalogEntry>& factors);

/// n lambda V^{2/n}.
double ilias_bound(int n, double lambda, double volume);

/// n(n-1) Rv^{2/n}.
double rv_bound(int n, double rv);

struct BoundReport {
    std::string formula;  // ilias | rv | theorem1.2 | corollary1.4
    std::string target;
    std::string manifold;
    int n = 0;
    double lambda = 0.0;
    double volume = 0.0;
    double normalized_volume = 0.0;
    double ratio = 0.0;  // normalized_volume / V_n
    double value = 0.0;
    std::string provenance;
    std::optional<double> numerical;  // minimize_line confirmation
    std::optional<std::string> warning;
};

/// (V'/V_n)^{2/(n+1)} Y_{n+1} for the normalized volume V'. Einstein entries
/// bound Y(M x S^1) and M x R; Ricci-bounded ones only Y(M x R, [g + dt^2]).
/// Throws FormulaInapplicable when lambda <= 0.
BoundReport product_circle_bound(const CatalogEntry& entry);

struct CompareOptions {
    bool confirm = false;
    LineProblem grid{};  // n, volume and scal are taken from the entry
};

/// ilias, rv (when known) and the product-circle bound, in that order.
std::vector<BoundReport> compare_bounds(const CatalogEntry& entry, const CompareOptions& options = {});

/// The normalized line problem of an entry (volume V', scal n(n-1)).
LineProblem line_problem(const CatalogEntry& entry, double half_width = 12.0, int nodes = 4001);

std::string report_json(const BoundReport& report);
void write_reports_csv(std::ostream& out, const std::vector<BoundReport>& reports);

}  // namespace yamacone
