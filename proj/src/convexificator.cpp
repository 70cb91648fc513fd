#include "ivvi/convexificator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ivvi/error.hpp"
#include "ivvi/format.hpp"
#include "ivvi/kernels.hpp"
#include "ivvi/parallel.hpp"

namespace ivvi {

namespace {

constexpr int kDiniSteps = 31;
constexpr int kDiniTail = 15;

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

void require_dims(std::size_t got, std::size_t want, const char* what) {
    if (got != want) {
        throw LengthMismatchError(std::string(what) + " has " + std::to_string(got) + " components, expected " +
                                  std::to_string(want));
    }
}

}  // namespace

DiniEstimate dini(const Expr& f, std::span<const double> point, std::span<const double> dir) {
    require_dims(dir.size(), point.size(), "direction");
    if (std::all_of(dir.begin(), dir.end(), [](double v) { return v == 0.0; })) {
        throw DomainError("Dini derivative needs a nonzero direction");
    }
    const std::size_t n = point.size();
    std::vector<long double> x(point.begin(), point.end());
    std::vector<long double> y(n);
    const long double fx = eval(f, std::span<const long double>(x));

    DiniEstimate est;
    est.lower = std::numeric_limits<double>::infinity();
    est.upper = -std::numeric_limits<double>::infinity();
    for (int k = kDiniTail; k < kDiniSteps; ++k) {
        const long double t = std::ldexp(1e-2L, -k);
        for (std::size_t i = 0; i < n; ++i) y[i] = x[i] + t * static_cast<long double>(dir[i]);
        const long double q = (eval(f, std::span<const long double>(y)) - fx) / t;
        est.lower = std::min(est.lower, static_cast<double>(q));
        est.upper = std::max(est.upper, static_cast<double>(q));
        ++est.steps_used;
    }
    return est;
}

Convexificator build_convexificator(const Expr& f, std::span<const double> point, double tie_tol) {
    auto branches = active_branches(f, point, tie_tol);
    return {std::move(branches.gradients), Vector(point.begin(), point.end())};
}

ConvexificatorReport validate_convexificator(const Convexificator& c, const Expr& f,
                                             std::span<const Vector> directions, double tol) {
    ConvexificatorReport rep;
    for (const auto& d : directions) {
        const DiniEstimate est = dini(f, c.anchor, d);
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (const auto& z : c.vectors) {
            const double v = dot(z, d);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        if (rep.upper_ok && !(est.lower <= hi + tol)) {
            rep.upper_ok = false;
            rep.upper_witness = d;
        }
        if (rep.lower_ok && !(est.upper >= lo - tol)) {
            rep.lower_ok = false;
            rep.lower_witness = d;
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------

SampledFunction::SampledFunction(const Expr& f, const Grid& grid, double tie_tol) : dim_(grid.dimension()) {
    const std::size_t n = grid.size();
    values_.resize(n);
    selections_.resize(n);
    Vector p(dim_);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t d = 0; d < dim_; ++d) p[d] = grid.axis(d)[k];
        values_[k] = eval(f, p);
        selections_[k] = active_branches(f, p, tie_tol).gradients;
        slots_ = std::max(slots_, selections_[k].size());
    }
    padded_.resize(slots_ * dim_ * n);
    for (std::size_t k = 0; k < n; ++k) {
        const auto& sel = selections_[k];
        for (std::size_t s = 0; s < slots_; ++s) {
            const Vector& z = s < sel.size() ? sel[s] : sel.front();
            for (std::size_t d = 0; d < dim_; ++d) padded_[(s * dim_ + d) * n + k] = z[d];
        }
    }
}

const char* to_string(Endpoint e) noexcept { return e == Endpoint::Lower ? "lower" : "upper"; }

std::string PairWitness::describe() const {
    std::string s = "objective " + std::to_string(objective + 1) + " " + to_string(endpoint) + ": w=" +
                    format_point(omega) + " v=" + format_point(upsilon) + " z_w=" + format_point(zeta_omega);
    if (!zeta_upsilon.empty()) s += " z_v=" + format_point(zeta_upsilon);
    s += " slack=" + format_real(slack);
    return s;
}

namespace {

struct Hit {
    std::size_t upsilon = kernels::npos;
    std::size_t sel_omega = 0;
};

// Per-omega search for the first failing upsilon. Returns npos when none.
Hit first_violation(Property what, const SampledFunction& f, const Grid& grid, double tol, std::size_t w,
                    std::vector<double>& buf) {
    const std::size_t n = grid.size();
    const std::size_t dim = grid.dimension();
    std::vector<kernels::Factor> lhs(dim), rhs(dim);
    for (std::size_t d = 0; d < dim; ++d) rhs[d] = {grid.axis(d).data(), grid.axis(d)[w]};

    const bool strict = what == Property::StrictlyConvex || what == Property::StrictlyMonotone;
    const double* col = buf.data();
    const double le = strict ? tol : -tol;
    const double lt = -tol;
    kernels::DominanceArgs dom{std::span(&col, 1), std::span(&le, 1), std::span(&lt, 1), n, 1,
                               strict ? kernels::StrictMode::None : kernels::StrictMode::PerGroup,
                               strict ? w : kernels::npos};

    Hit best;
    const auto& sel = f.selections(w);
    for (std::size_t s = 0; s < sel.size(); ++s) {
        if (what == Property::Convex || what == Property::StrictlyConvex) {
            // f(v) - f(w) - <z, v - w>
            for (std::size_t d = 0; d < dim; ++d) lhs[d] = {nullptr, sel[s][d]};
            kernels::shifted_dot({buf.data(), n, kernels::Reduce::Assign, f.values(), -f.values()[w], lhs, rhs});
        } else {
            // min over selections z_v of <z_v - z_w, v - w>
            for (std::size_t slot = 0; slot < f.slots(); ++slot) {
                for (std::size_t d = 0; d < dim; ++d) lhs[d] = {f.gradient_column(slot, d), sel[s][d]};
                kernels::shifted_dot({buf.data(), n, slot == 0 ? kernels::Reduce::Assign : kernels::Reduce::Min,
                                      nullptr, 0.0, lhs, rhs});
            }
        }
        const std::size_t k = kernels::first_dominated(dom);
        if (k < best.upsilon) best = {k, s};
    }
    return best;
}

double convex_slack(const SampledFunction& f, const Grid& grid, std::size_t w, std::size_t v, const Vector& z) {
    double acc = f.values()[v];
    acc += -f.values()[w];
    for (std::size_t d = 0; d < grid.dimension(); ++d) {
        acc += (0.0 - z[d]) * (grid.axis(d)[v] - grid.axis(d)[w]);
    }
    return acc;
}

double monotone_slack(const Grid& grid, std::size_t w, std::size_t v, const Vector& zw, const Vector& zv) {
    double acc = 0.0;
    for (std::size_t d = 0; d < grid.dimension(); ++d) {
        acc += (zv[d] - zw[d]) * (grid.axis(d)[v] - grid.axis(d)[w]);
    }
    return acc;
}

}  // namespace

PropertyReport check_property(Property what, const SampledFunction& f, const Grid& grid, double tol) {
    const std::size_t n = grid.size();
    std::vector<Hit> hits(n);
    parallel_for(n, [&](std::size_t begin, std::size_t end) {
        std::vector<double> buf(n);
        for (std::size_t w = begin; w < end; ++w) hits[w] = first_violation(what, f, grid, tol, w, buf);
    });

    PropertyReport rep;
    for (std::size_t w = 0; w < n; ++w) {
        if (hits[w].upsilon == kernels::npos) continue;
        const std::size_t v = hits[w].upsilon;
        PairWitness wit;
        wit.omega = grid.point(w);
        wit.upsilon = grid.point(v);
        wit.zeta_omega = f.selections(w)[hits[w].sel_omega];
        if (what == Property::Convex || what == Property::StrictlyConvex) {
            wit.slack = convex_slack(f, grid, w, v, wit.zeta_omega);
        } else {
            // The selection at v attaining the minimum.
            double best = std::numeric_limits<double>::infinity();
            for (const auto& zv : f.selections(v)) {
                const double m = monotone_slack(grid, w, v, wit.zeta_omega, zv);
                if (m < best) {
                    best = m;
                    wit.zeta_upsilon = zv;
                }
            }
            wit.slack = best;
        }
        rep.holds = false;
        rep.witness = std::move(wit);
        break;
    }
    return rep;
}

namespace {

PropertyReport check_interval_function(Property what, const IntervalFunction& g, const BoxDomain& d,
                                       const GridSpec& spec, double tol) {
    const Grid grid(d, spec);
    for (Endpoint e : {Endpoint::Lower, Endpoint::Upper}) {
        const SampledFunction f(e == Endpoint::Lower ? g.lower : g.upper, grid);
        auto rep = check_property(what, f, grid, tol);
        if (!rep.holds) {
            rep.witness->endpoint = e;
            return rep;
        }
    }
    return {};
}

}  // namespace

PropertyReport is_lu_convex(const IntervalFunction& g, const BoxDomain& d, const GridSpec& grid, double tol) {
    return check_interval_function(Property::Convex, g, d, grid, tol);
}

PropertyReport is_strictly_lu_convex(const IntervalFunction& g, const BoxDomain& d, const GridSpec& grid,
                                     double tol) {
    return check_interval_function(Property::StrictlyConvex, g, d, grid, tol);
}

PropertyReport is_monotone(const IntervalFunction& g, const BoxDomain& d, const GridSpec& grid, double tol,
                           bool strict) {
    return check_interval_function(strict ? Property::StrictlyMonotone : Property::Monotone, g, d, grid, tol);
}

// ---------------------------------------------------------------------------

namespace {

struct Hull {
    double lo;
    double hi;
};

Hull support_hull(const Expr& f, std::span<const double> c, std::span<const double> dir) {
    const auto branches = active_branches(f, c);
    Hull h{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (const auto& z : branches.gradients) {
        const double v = dot(z, dir);
        h.lo = std::min(h.lo, v);
        h.hi = std::max(h.hi, v);
    }
    return h;
}

double gap_of(const Hull& h, double target) { return std::max({0.0, h.lo - target, target - h.hi}); }

// -1: hull below target, +1: above, 0: contains it.
int side_of(const Hull& h, double target) {
    if (h.hi < target) return -1;
    if (h.lo > target) return 1;
    return 0;
}

}  // namespace

std::optional<MvtWitness> mvt_witness(const Expr& f, std::span<const double> a, std::span<const double> b,
                                      std::size_t samples, double tol) {
    require_dims(b.size(), a.size(), "segment end");
    const std::size_t n = a.size();
    Vector dir(n);
    for (std::size_t i = 0; i < n; ++i) dir[i] = b[i] - a[i];
    const double target = eval(f, b) - eval(f, a);
    if (tol < 0.0) tol = 1e-9 * (1.0 + std::abs(target));

    Vector c(n);
    auto at = [&](double t) -> Vector& {
        for (std::size_t i = 0; i < n; ++i) c[i] = a[i] + t * dir[i];
        return c;
    };

    // Segment ends only seed brackets; witnesses are interior.
    double bracket_lo = -1.0, bracket_hi = -1.0;
    int side_lo = 0;
    int prev_side = side_of(support_hull(f, at(0.0), dir), target);
    double prev_t = 0.0;
    for (std::size_t k = 1; k <= samples + 1; ++k) {
        const double t = static_cast<double>(k) / static_cast<double>(samples + 1);
        const Hull h = support_hull(f, at(k > samples ? 1.0 : t), dir);
        const double gap = gap_of(h, target);
        if (k <= samples && gap <= tol) return MvtWitness{c, gap};
        const int side = side_of(h, target);
        if (bracket_lo < 0.0 && prev_side != 0 && side == -prev_side) {
            bracket_lo = prev_t;
            bracket_hi = t;
            side_lo = prev_side;
        }
        prev_side = side;
        prev_t = t;
    }
    if (bracket_lo < 0.0) return std::nullopt;

    std::optional<MvtWitness> best;
    for (int iter = 0; iter < 80; ++iter) {
        const double mid = 0.5 * (bracket_lo + bracket_hi);
        if (mid <= bracket_lo || mid >= bracket_hi) break;
        const Hull h = support_hull(f, at(mid), dir);
        const double gap = gap_of(h, target);
        if (!best || gap < best->containment_gap) best = MvtWitness{c, gap};
        const int side = side_of(h, target);
        if (side == 0) break;
        (side == side_lo ? bracket_lo : bracket_hi) = mid;
    }
    if (best && best->containment_gap <= tol) return best;
    return std::nullopt;
}

}  // namespace ivvi
