#include "yamacone/bounds.hpp"

#include "yamacone/errors.hpp"

#include <json.hpp>
#include <fmt/format.h>

#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>

namespace yamacone {

namespace {

constexpr double kPi = std::numbers::pi;

void require_finite(double v, const char* field) {
    if (!std::isfinite(v)) throw DomainError(fmt::format("bound report: {} is not finite", field));
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

BoundReport base_report(const CatalogEntry& entry) {
    BoundReport r;
    r.manifold = entry.name;
    r.n = entry.n;
    r.lambda = entry.lambda;
    r.volume = entry.volume;
    if (entry.lambda > 0.0) {
        const auto normalized = entry.data().normalized();
        r.normalized_volume = normalized.volume;
        r.ratio = normalized.volume / sphere_volume(entry.n);
        r.warning = entry.data().bishop_warning();
    }
    return r;
}

}  // namespace

EinsteinData CatalogEntry::data() const {
    if (einstein) return EinsteinData::einstein_metric(name, n, volume, lambda);
    return EinsteinData::ricci_bounded(name, n, volume, lambda, scal.value_or(n * lambda));
}

CatalogEntry CatalogEntry::rescaled_to(double target) const {
    const auto d = data().rescaled_to(target);
    CatalogEntry out = *this;
    out.lambda = d.lambda;
    out.volume = d.volume;
    if (scal) out.scal = d.scalar;
    return out;
}

CatalogEntry sphere_entry(int n) {
    if (n < 2) throw ParseError(fmt::format("sphere:{}: dimension must be >= 2", n));
    const double v = sphere_volume(n);
    return CatalogEntry{fmt::format("sphere:{}", n), n, n - 1.0, v, true, std::nullopt, v,
                        "unit round sphere"};
}

Catalog Catalog::builtin() {
    Catalog c;
    c.add(CatalogEntry{"cp2", 4, 3.0, 2.0 * kPi * kPi, true, std::nullopt, 2.0 * kPi * kPi,
                       "Fubini-Study, Einstein constant 3"});
    c.add(CatalogEntry{"rp3", 3, 2.0, kPi * kPi, true, std::nullopt, kPi * kPi,
                       "round quotient of S^3"});
    return c;
}

void Catalog::add(CatalogEntry entry) {
    if (entry.name.empty() || entry.name.find_first_of(":,") != std::string::npos)
        throw ParseError("catalog: entry names must be nonempty without ':' or ','");
    entry.data().validate();
    entries_[entry.name] = std::move(entry);
}

void Catalog::load_json(std::istream& in) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(fmt::format("catalog: {}", e.what()));
    }
    if (!doc.is_array()) throw ParseError("catalog: expected a JSON array");
    for (const auto& item : doc) {
        try {
            CatalogEntry e;
            e.name = item.at("name").get<std::string>();
            e.n = item.at("n").get<int>();
            e.lambda = item.at("lambda").get<double>();
            e.volume = item.at("volume").get<double>();
            e.einstein = item.value("einstein", true);
            if (item.contains("rv")) e.rv = item.at("rv").get<double>();
            if (item.contains("scal")) e.scal = item.at("scal").get<double>();
            e.note = item.value("note", std::string{});
            add(std::move(e));
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(fmt::format("catalog entry: {}", e.what()));
        } catch (const ValidationError& e) {
            throw ParseError(fmt::format("catalog entry: {}", e.what()));
        }
    }
}

CatalogEntry Catalog::lookup(const std::string& item) const {
    const auto colon = item.find(':');
    const std::string name = item.substr(0, colon);
    if (name == "sphere") {
        if (colon == std::string::npos) throw ParseError("sphere needs a dimension, e.g. sphere:4");
        const std::string param = item.substr(colon + 1);
        std::size_t used = 0;
        int n = 0;
        try {
            n = std::stoi(param, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (param.empty() || used != param.size())
            throw ParseError(fmt::format("sphere: bad dimension `{}`", param));
        return sphere_entry(n);
    }
    if (colon != std::string::npos)
        throw ParseError(fmt::format("`{}` takes no parameter", name));
    const auto it = entries_.find(name);
    if (it == entries_.end()) throw ParseError(fmt::format("unknown manifold `{}`", name));
    return it->second;
}

CatalogEntry Catalog::resolve(const std::string& spec) const {
    constexpr std::string_view prefix = "product:";
    if (spec.rfind(prefix, 0) != 0) return lookup(spec);
    std::vector<CatalogEntry> factors;
    std::size_t start = prefix.size();
    while (true) {
        const auto comma = spec.find(',', start);
        const std::string item = spec.substr(start, comma - start);
        if (item.empty()) throw ParseError(fmt::format("empty factor in `{}`", spec));
        factors.push_back(lookup(item));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    auto product = product_einstein(factors);
    product.name = spec;
    return product;
}

std::vector<std::string> Catalog::names() const {
    std::vector<std::string> out{"sphere:<n>"};
    for (const auto& [name, entry] : entries_) out.push_back(name);
    return out;
}

CatalogEntry product_einstein(const std::vector<CatalogEntry>& factors) {
    if (factors.empty()) throw ValidationError("product_einstein: no factors");
    if (factors.size() == 1) return factors.front();
    for (const auto& f : factors) {
        if (!(f.lambda > 0.0))
            throw DomainError(fmt::format("product_einstein: {} has lambda <= 0", f.name));
        if (!f.einstein)
            throw FormulaInapplicable(fmt::format("product_einstein: {} is not Einstein", f.name));
    }
    const double common = factors.front().lambda;
    CatalogEntry out;
    out.name = "product:";
    out.lambda = common;
    out.volume = 1.0;
    out.einstein = true;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        const auto scaled = factors[i].rescaled_to(common);
        out.n += scaled.n;
        out.volume *= scaled.volume;
        out.name += (i ? "," : "") + factors[i].name;
    }
    out.note = fmt::format("product at common Einstein constant {}", common);
    return out;
}

double ilias_bound(int n, double lambda, double volume) {
    if (n < 2) throw DomainError("ilias_bound: dimension must be >= 2");
    if (!(lambda > 0.0) || !(volume > 0.0))
        throw DomainError("ilias_bound: lambda and volume must be positive");
    return n * lambda * std::pow(volume, 2.0 / n);
}

double rv_bound(int n, double rv) {
    if (n < 2) throw DomainError("rv_bound: dimension must be >= 2");
    if (!(rv >= 0.0)) throw DomainError("rv_bound: Rv must be nonnegative");
    return n * (n - 1.0) * std::pow(rv, 2.0 / n);
}

BoundReport product_circle_bound(const CatalogEntry& entry) {
    if (!(entry.lambda > 0.0))
        throw FormulaInapplicable(
            fmt::format("{}: the product bound needs a positive Ricci lower bound", entry.name));
    BoundReport r = base_report(entry);
    r.value = std::pow(r.ratio, 2.0 / (entry.n + 1)) * sphere_yamabe(entry.n + 1);
    if (entry.einstein) {
        r.formula = "corollary1.4";
        r.target = "Y(M x S^1)";
    } else {
        r.formula = "theorem1.2";
        r.target = "Y(M x R, [g + dt^2])";
    }
    r.provenance = "(V'/V_n)^(2/(n+1)) * Y_(n+1), V' at Ricci = (n-1)";
    return r;
}

std::vector<BoundReport> compare_bounds(const CatalogEntry& entry, const CompareOptions& options) {
    std::vector<BoundReport> out;
    if (entry.lambda > 0.0) {
        BoundReport ilias = base_report(entry);
        ilias.formula = "ilias";
        ilias.target = "Y(M, [g])";
        ilias.value = ilias_bound(entry.n, entry.lambda, entry.volume);
        ilias.provenance = "n * lambda * V^(2/n)";
        out.push_back(std::move(ilias));
    }
    if (entry.rv) {
        BoundReport rv = base_report(entry);
        rv.formula = "rv";
        rv.target = "Y(M)";
        rv.value = rv_bound(entry.n, *entry.rv);
        rv.provenance = fmt::format("n(n-1) * Rv^(2/n), Rv = {}", *entry.rv);
        out.push_back(std::move(rv));
    }
    BoundReport product = product_circle_bound(entry);
    if (options.confirm) {
        const auto problem =
            line_problem(entry, options.grid.half_width, options.grid.nodes);
        product.numerical = minimize_line(problem).value;
    }
    out.push_back(std::move(product));
    return out;
}

LineProblem line_problem(const CatalogEntry& entry, double half_width, int nodes) {
    if (!(entry.lambda > 0.0))
        throw FormulaInapplicable(
            fmt::format("{}: the line problem needs a positive Ricci lower bound", entry.name));
    const auto normalized = entry.data().normalized();
    LineProblem p{entry.n, normalized.volume, entry.n * (entry.n - 1.0), half_width, nodes};
    p.validate();
    return p;
}

std::string report_json(const BoundReport& r) {
    require_finite(r.lambda, "lambda");
    require_finite(r.volume, "volume");
    require_finite(r.normalized_volume, "normalized_volume");
    require_finite(r.ratio, "ratio");
    require_finite(r.value, "value");
    nlohmann::ordered_json j;
    j["formula"] = r.formula;
    j["target"] = r.target;
    j["manifold"] = r.manifold;
    j["n"] = r.n;
    j["lambda"] = r.lambda;
    j["volume"] = r.volume;
    j["normalized_volume"] = r.normalized_volume;
    j["ratio"] = r.ratio;
    j["value"] = r.value;
    j["provenance"] = r.provenance;
    if (r.numerical) {
        require_finite(*r.numerical, "numerical");
        j["numerical"] = *r.numerical;
        j["numerical_rel_err"] = (*r.numerical - r.value) / r.value;
    }
    if (r.warning) j["warning"] = *r.warning;
    return j.dump();
}

void write_reports_csv(std::ostream& out, const std::vector<BoundReport>& reports) {
    out << "formula,target,manifold,n,lambda,volume,normalized_volume,ratio,value,numerical,"
           "provenance\n";
    for (const auto& r : reports) {
        require_finite(r.value, "value");
        require_finite(r.ratio, "ratio");
        out << fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", csv_field(r.formula),
                           csv_field(r.target), csv_field(r.manifold), r.n, r.lambda, r.volume,
                           r.normalized_volume, r.ratio, r.value,
                           r.numerical ? fmt::format("{}", *r.numerical) : std::string{},
                           csv_field(r.provenance));
    }
}

}  // namespace yamacone
