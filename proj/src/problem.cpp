#include "ivvi/problem.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ivvi/error.hpp"
#include "ivvi/format.hpp"

namespace ivvi {

using json = nlohmann::ordered_json;

Interval IntervalFunction::at(std::span<const double> point) const {
    const double lo = eval(lower, point);
    const double hi = eval(upper, point);
    if (lo > hi) {
        throw BoundOrderError("lower endpoint " + format_real(lo) + " exceeds upper endpoint " + format_real(hi) +
                              " at " + format_point(point));
    }
    return Interval(lo, hi);
}

BoxDomain::BoxDomain(Vector lo, Vector hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (lo_.empty() || lo_.size() != hi_.size()) {
        throw SchemaError("domain bounds must be non-empty and of equal length");
    }
    for (std::size_t i = 0; i < lo_.size(); ++i) {
        if (!std::isfinite(lo_[i]) || !std::isfinite(hi_[i])) throw SchemaError("domain bounds must be finite");
        if (lo_[i] > hi_[i]) throw SchemaError("domain lower bound exceeds upper bound on axis " + std::to_string(i + 1));
    }
}

bool BoxDomain::contains(std::span<const double> point) const noexcept {
    if (point.size() != lo_.size()) return false;
    for (std::size_t i = 0; i < lo_.size(); ++i) {
        if (!(lo_[i] <= point[i] && point[i] <= hi_[i])) return false;
    }
    return true;
}

GridSpec GridSpec::default_for(std::size_t dimension) {
    if (dimension <= 1) return {65};
    if (dimension == 2) return {33};
    std::size_t m = 2;
    while (std::pow(static_cast<double>(m + 1), static_cast<double>(dimension)) <= kGridPointCap) ++m;
    return {m};
}

namespace {

Vector axis_lattice(double lo, double hi, std::size_t m) {
    if (lo == hi) return {lo};
    Vector v(m);
    const double span = hi - lo;
    const double denom = static_cast<double>(m - 1);
    for (std::size_t k = 0; k + 1 < m; ++k) v[k] = lo + span * static_cast<double>(k) / denom;
    v[m - 1] = hi;
    return v;
}

}  // namespace

Grid::Grid(const BoxDomain& domain, const GridSpec& spec) : ppa_(spec.points_per_axis) {
    if (ppa_ < 2) throw SchemaError("grid needs at least 2 points per axis");
    const std::size_t n = domain.dimension();
    double total = 1.0;
    for (std::size_t d = 0; d < n; ++d) {
        axis_values_.push_back(axis_lattice(domain.lo()[d], domain.hi()[d], ppa_));
        total *= static_cast<double>(axis_values_.back().size());
    }
    if (total > static_cast<double>(kGridPointCap)) {
        throw GridCapError("grid of " + format_real(total) + " points exceeds the cap of " +
                           std::to_string(kGridPointCap));
    }
    count_ = static_cast<std::size_t>(total);
    coords_.assign(n, Vector(count_));
    // Row-major: the last axis varies fastest.
    std::size_t stride = 1;
    for (std::size_t d = n; d-- > 0;) {
        const auto& vals = axis_values_[d];
        for (std::size_t k = 0; k < count_; ++k) coords_[d][k] = vals[(k / stride) % vals.size()];
        stride *= vals.size();
    }
}

Vector Grid::point(std::size_t k) const {
    Vector p(coords_.size());
    for (std::size_t d = 0; d < coords_.size(); ++d) p[d] = coords_[d][k];
    return p;
}

std::optional<std::size_t> Grid::find(std::span<const double> p) const {
    if (p.size() != coords_.size()) return std::nullopt;
    std::size_t index = 0;
    for (std::size_t d = 0; d < coords_.size(); ++d) {
        const auto& vals = axis_values_[d];
        const auto it = std::lower_bound(vals.begin(), vals.end(), p[d]);
        if (it == vals.end() || *it != p[d]) return std::nullopt;
        index = index * vals.size() + static_cast<std::size_t>(it - vals.begin());
    }
    return index;
}

std::vector<Vector> grid_points(const BoxDomain& domain, const GridSpec& spec) {
    const Grid g(domain, spec);
    std::vector<Vector> out;
    out.reserve(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) out.push_back(g.point(k));
    return out;
}

// ---------------------------------------------------------------------------

namespace {

const json& require(const json& obj, const char* key, const char* where) {
    const auto it = obj.find(key);
    if (it == obj.end()) throw SchemaError(std::string("missing field '") + key + "' in " + where);
    return *it;
}

void reject_unknown(const json& obj, std::initializer_list<std::string_view> allowed, const char* where) {
    for (const auto& [key, _] : obj.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            throw SchemaError("unknown field '" + key + "' in " + where);
        }
    }
}

Vector real_array(const json& v, std::size_t n, const char* what) {
    if (!v.is_array() || v.size() != n) {
        throw SchemaError(std::string(what) + " must be an array of " + std::to_string(n) + " numbers");
    }
    Vector out;
    for (const auto& x : v) {
        if (!x.is_number()) throw SchemaError(std::string(what) + " must contain numbers only");
        out.push_back(x.get<double>());
    }
    return out;
}

void check_bound_order(const IvopProblem& p) {
    const Grid grid(p.domain, p.grid);
    Vector pt(p.dimension);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        for (std::size_t d = 0; d < p.dimension; ++d) pt[d] = grid.axis(d)[k];
        for (std::size_t i = 0; i < p.objectives.size(); ++i) {
            const double lo = eval(p.objectives[i].lower, pt);
            const double hi = eval(p.objectives[i].upper, pt);
            if (lo > hi) {
                throw BoundOrderError("objective " + std::to_string(i + 1) + ": lower " + format_real(lo) +
                                      " > upper " + format_real(hi) + " at " + format_point(pt));
            }
        }
    }
}

}  // namespace

IvopProblem parse_problem(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SchemaError(std::string("problem document is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw SchemaError("problem document must be an object");
    reject_unknown(doc, {"dimension", "domain", "objectives", "grid"}, "problem");

    const json& dim = require(doc, "dimension", "problem");
    if (!dim.is_number_integer() || dim.get<long long>() < 1) {
        throw SchemaError("dimension must be a positive integer");
    }
    const auto n = static_cast<std::size_t>(dim.get<long long>());

    const json& domain = require(doc, "domain", "problem");
    if (!domain.is_object()) throw SchemaError("domain must be an object");
    reject_unknown(domain, {"lo", "hi"}, "domain");

    IvopProblem p;
    p.dimension = n;
    p.domain = BoxDomain(real_array(require(domain, "lo", "domain"), n, "domain.lo"),
                         real_array(require(domain, "hi", "domain"), n, "domain.hi"));

    const json& objectives = require(doc, "objectives", "problem");
    if (!objectives.is_array() || objectives.empty()) {
        throw SchemaError("objectives must be a non-empty array");
    }
    for (const auto& obj : objectives) {
        if (!obj.is_object()) throw SchemaError("each objective must be an object");
        reject_unknown(obj, {"lower", "upper"}, "objective");
        const json& lo = require(obj, "lower", "objective");
        const json& hi = require(obj, "upper", "objective");
        if (!lo.is_string() || !hi.is_string()) throw SchemaError("objective bounds must be expression strings");
        const auto lo_text = lo.get<std::string>();
        const auto hi_text = hi.get<std::string>();
        p.objectives.push_back({parse_expr(lo_text, n), parse_expr(hi_text, n)});
        p.objective_text.emplace_back(lo_text, hi_text);
    }

    p.grid = GridSpec::default_for(n);
    if (const auto it = doc.find("grid"); it != doc.end()) {
        if (!it->is_object()) throw SchemaError("grid must be an object");
        reject_unknown(*it, {"points_per_axis"}, "grid");
        if (const auto ppa = it->find("points_per_axis"); ppa != it->end()) {
            if (!ppa->is_number_integer() || ppa->get<long long>() < 2) {
                throw SchemaError("grid.points_per_axis must be an integer >= 2");
            }
            p.grid.points_per_axis = static_cast<std::size_t>(ppa->get<long long>());
        }
    }

    check_bound_order(p);
    return p;
}

IvopProblem load_problem(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SchemaError("cannot open problem file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_problem(ss.str());
}

std::string serialize_problem(const IvopProblem& problem) {
    json doc;
    doc["dimension"] = problem.dimension;
    doc["domain"]["lo"] = problem.domain.lo();
    doc["domain"]["hi"] = problem.domain.hi();
    doc["objectives"] = json::array();
    for (const auto& f : problem.objectives) {
        doc["objectives"].push_back({{"lower", to_string(f.lower)}, {"upper", to_string(f.upper)}});
    }
    doc["grid"]["points_per_axis"] = problem.grid.points_per_axis;
    return doc.dump(2) + "\n";
}

IntervalVector evaluate_objectives(const IvopProblem& problem, std::span<const double> point) {
    if (!problem.domain.contains(point)) {
        throw OutOfDomainError("point " + format_point(point) + " lies outside the domain");
    }
    std::vector<Interval> out;
    out.reserve(problem.objectives.size());
    for (const auto& f : problem.objectives) out.push_back(f.at(point));
    return IntervalVector(std::move(out));
}

LipschitzEstimate estimate_lipschitz(const IntervalFunction& g, const BoxDomain& domain, const GridSpec& spec) {
    const Grid grid(domain, spec);
    const std::size_t n = grid.dimension();
    std::vector<Interval> values;
    values.reserve(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) values.push_back(g.at(grid.point(k)));

    LipschitzEstimate est;
    for (std::size_t a = 0; a < grid.size(); ++a) {
        for (std::size_t b = a + 1; b < grid.size(); ++b) {
            double dist2 = 0.0;
            for (std::size_t d = 0; d < n; ++d) {
                const double diff = grid.axis(d)[a] - grid.axis(d)[b];
                dist2 += diff * diff;
            }
            const double dist = std::sqrt(dist2);
            if (dist == 0.0) continue;
            est.hausdorff = std::max(est.hausdorff, hausdorff(values[a], values[b]) / dist);
            est.lower = std::max(est.lower, std::abs(values[a].lo() - values[b].lo()) / dist);
            est.upper = std::max(est.upper, std::abs(values[a].hi() - values[b].hi()) / dist);
        }
    }
    return est;
}

}  // namespace ivvi
