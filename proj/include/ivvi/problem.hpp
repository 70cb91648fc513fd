#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ivvi/expr.hpp"
#include "ivvi/interval.hpp"

namespace ivvi {

/// Objective [lower(w), upper(w)].
struct IntervalFunction {
    Expr lower;
    Expr upper;

    Interval at(std::span<const double> point) const;
};

/// Axis-aligned box lo <= x <= hi.
class BoxDomain {
public:
    BoxDomain(Vector lo, Vector hi);

    std::size_t dimension() const noexcept { return lo_.size(); }
    const Vector& lo() const noexcept { return lo_; }
    const Vector& hi() const noexcept { return hi_; }
    bool contains(std::span<const double> point) const noexcept;

private:
    Vector lo_;
    Vector hi_;
};

inline constexpr std::size_t kGridPointCap = 10000;

struct GridSpec {
    std::size_t points_per_axis = 65;

    /// 65 per axis in 1-D, 33 in 2-D, otherwise the largest m with m^n <= kGridPointCap.
    static GridSpec default_for(std::size_t dimension);
};

/// Axis-uniform lattice over a box, stored column-wise (one coordinate array per axis).
class Grid {
public:
    Grid(const BoxDomain& domain, const GridSpec& spec);

    std::size_t dimension() const noexcept { return coords_.size(); }
    std::size_t size() const noexcept { return count_; }
    std::size_t points_per_axis() const noexcept { return ppa_; }
    /// Coordinate `axis` of every grid point, in row-major point order.
    std::span<const double> axis(std::size_t axis) const noexcept { return coords_[axis]; }
    Vector point(std::size_t k) const;
    /// Index of the grid point exactly equal to `p`, if any.
    std::optional<std::size_t> find(std::span<const double> p) const;

private:
    std::size_t ppa_ = 0;
    std::size_t count_ = 0;
    std::vector<Vector> coords_;
    std::vector<Vector> axis_values_;
};

/// Row-major lattice (last axis fastest) including both endpoints of every axis.
/// Throws GridCapError beyond kGridPointCap points.
std::vector<Vector> grid_points(const BoxDomain& domain, const GridSpec& spec);

struct IvopProblem {
    std::size_t dimension = 0;
    std::vector<IntervalFunction> objectives;
    BoxDomain domain{{0.0}, {0.0}};
    GridSpec grid;
    /// Source text of each objective (lower, upper), kept for reports and serialization.
    std::vector<std::pair<std::string, std::string>> objective_text;
};

/// Parses a problem document (JSON). Checks lower <= upper on the grid.
/// Throws SchemaError, ParseError or BoundOrderError.
IvopProblem parse_problem(std::string_view text);
IvopProblem load_problem(const std::filesystem::path& path);

/// JSON text that parse_problem reads back to an equivalent problem.
std::string serialize_problem(const IvopProblem& problem);

/// ([lower_i(w), upper_i(w)])_i. Throws OutOfDomainError when w is outside the box.
IntervalVector evaluate_objectives(const IvopProblem& problem, std::span<const double> point);

struct LipschitzEstimate {
    double hausdorff = 0.0;  // max d_H(G(w), G(v)) / |w - v|
    double lower = 0.0;      // same ratio for the lower endpoint function
    double upper = 0.0;
};

/// Largest difference quotient over all pairs of distinct grid points.
LipschitzEstimate estimate_lipschitz(const IntervalFunction& g, const BoxDomain& domain, const GridSpec& spec);

}  // namespace ivvi
