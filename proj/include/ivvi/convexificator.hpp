#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ivvi/expr.hpp"
#include "ivvi/problem.hpp"

namespace ivvi {

inline constexpr double kDefaultTolAlg = 1e-9;
inline constexpr double kDefaultTolDini = 1e-6;

/// Lower and upper Dini derivatives of f at a point along a direction.
struct DiniEstimate {
    double lower = 0.0;
    double upper = 0.0;
    int steps_used = 0;
};

/// Difference quotients (f(x + t d) - f(x)) / t for t = 1e-2 * 2^-k, k = 0..30,
/// evaluated in extended precision. lower/upper are the min/max over k >= 15.
DiniEstimate dini(const Expr& f, std::span<const double> point, std::span<const double> dir);

struct Convexificator {
    std::vector<Vector> vectors;
    Vector anchor;
};

/// Gradients of the smooth selections active at `point`.
Convexificator build_convexificator(const Expr& f, std::span<const double> point,
                                    double tie_tol = kDefaultTieTol);

struct ConvexificatorReport {
    bool upper_ok = true;
    bool lower_ok = true;
    std::optional<Vector> upper_witness;  // first direction breaking the upper inequality
    std::optional<Vector> lower_witness;
};

/// upper: lower Dini <= max <z, d> + tol; lower: upper Dini >= min <z, d> - tol, for every d.
ConvexificatorReport validate_convexificator(const Convexificator& c, const Expr& f,
                                             std::span<const Vector> directions,
                                             double tol = kDefaultTolDini);

/// One endpoint function sampled on a grid: values, active selections, and the
/// selections again as padded columns G[slot][axis][point] for the kernels.
/// Points with fewer selections than `slots()` repeat their first one.
class SampledFunction {
public:
    SampledFunction(const Expr& f, const Grid& grid, double tie_tol = kDefaultTieTol);

    std::size_t size() const noexcept { return values_.size(); }
    std::size_t slots() const noexcept { return slots_; }
    const double* values() const noexcept { return values_.data(); }
    const std::vector<Vector>& selections(std::size_t k) const { return selections_[k]; }
    const double* gradient_column(std::size_t slot, std::size_t axis) const noexcept {
        return padded_.data() + (slot * dim_ + axis) * values_.size();
    }

private:
    std::size_t dim_ = 0;
    std::size_t slots_ = 0;
    std::vector<double> values_;
    std::vector<std::vector<Vector>> selections_;
    std::vector<double> padded_;
};

enum class Endpoint { Lower, Upper };

const char* to_string(Endpoint e) noexcept;

/// A grid pair breaking a convexity or monotonicity inequality.
struct PairWitness {
    std::size_t objective = 0;  // 0-based
    Endpoint endpoint = Endpoint::Lower;
    Vector omega;
    Vector upsilon;
    Vector zeta_omega;
    Vector zeta_upsilon;  // monotonicity only
    double slack = 0.0;   // the inequality's left side minus its right side

    std::string describe() const;
};

struct PropertyReport {
    bool holds = true;
    std::optional<PairWitness> witness;
};

enum class Property { Convex, StrictlyConvex, Monotone, StrictlyMonotone };

/// Checks one property of a sampled endpoint function over all grid pairs.
/// The witness is the first failing pair in (omega, upsilon, selection) order.
PropertyReport check_property(Property what, const SampledFunction& f, const Grid& grid, double tol);

/// f(v) - f(w) >= <z, v - w> - tol for every grid pair and every z at w,
/// for both endpoint functions.
PropertyReport is_lu_convex(const IntervalFunction& g, const BoxDomain& d, const GridSpec& grid,
                            double tol = kDefaultTolAlg);
/// Strict form: f(v) - f(w) > <z, v - w> + tol whenever v != w.
PropertyReport is_strictly_lu_convex(const IntervalFunction& g, const BoxDomain& d, const GridSpec& grid,
                                     double tol = kDefaultTolAlg);
/// <z_v - z_w, v - w> >= -tol (strict: > tol for v != w) for all selections.
PropertyReport is_monotone(const IntervalFunction& g, const BoxDomain& d, const GridSpec& grid,
                           double tol = kDefaultTolAlg, bool strict = false);

struct MvtWitness {
    Vector c;
    double containment_gap = 0.0;  // distance from f(b) - f(a) to the hull of <z, b - a>
};

/// Looks for c on the open segment (a, b) where f(b) - f(a) lies in the hull of
/// {<z, b - a> : z in the convexificator at c}. Scans `samples` evenly spaced
/// points; if none qualifies but two neighbours bracket the target, bisects.
/// A negative `tol` selects 1e-9 * (1 + |f(b) - f(a)|).
std::optional<MvtWitness> mvt_witness(const Expr& f, std::span<const double> a, std::span<const double> b,
                                      std::size_t samples, double tol = -1.0);

}  // namespace ivvi
