#include "ivvi/interval.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ivvi/error.hpp"

namespace ivvi {

namespace {

Interval checked(double lo, double hi, const char* op) {
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
        throw ArithmeticRangeError(std::string("interval ") + op + " overflowed to a non-finite endpoint");
    }
    return Interval(lo, hi);
}

}  // namespace

Interval::Interval(double lo, double hi) : lo_(lo), hi_(hi) {
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
        throw InvalidIntervalError("interval endpoints must be finite");
    }
    if (lo > hi) {
        throw InvalidIntervalError("interval lower endpoint exceeds upper endpoint");
    }
}

Interval add(const Interval& x, const Interval& y) {
    return checked(x.lo() + y.lo(), x.hi() + y.hi(), "sum");
}

Interval neg(const Interval& x) noexcept {
    // -hi <= -lo always holds for a valid interval.
    return Interval(-x.hi(), -x.lo());
}

Interval sub(const Interval& x, const Interval& y) {
    return checked(x.lo() - y.hi(), x.hi() - y.lo(), "difference");
}

Interval scale(double alpha, const Interval& x) {
    if (!std::isfinite(alpha)) {
        throw ArithmeticRangeError("interval scale factor must be finite");
    }
    if (alpha >= 0.0) {
        return checked(alpha * x.lo(), alpha * x.hi(), "scale");
    }
    return checked(alpha * x.hi(), alpha * x.lo(), "scale");
}

Interval mul(const Interval& x, const Interval& y) {
    const double q[4] = {x.hi() * y.hi(), x.hi() * y.lo(), x.lo() * y.hi(), x.lo() * y.lo()};
    const auto [mn, mx] = std::minmax_element(std::begin(q), std::end(q));
    return checked(*mn, *mx, "product");
}

double hausdorff(const Interval& x, const Interval& y) noexcept {
    return std::max(std::abs(x.lo() - y.lo()), std::abs(x.hi() - y.hi()));
}

std::string_view to_string(LuRelation r) noexcept {
    switch (r) {
        case LuRelation::PrecEq: return "prec_eq";
        case LuRelation::PrecStrict: return "prec";
        case LuRelation::SuccEq: return "succ_eq";
        case LuRelation::SuccStrict: return "succ";
        case LuRelation::Equal: return "equal";
        case LuRelation::Incomparable: return "incomparable";
    }
    return "incomparable";
}

LuRelation lu_compare(const Interval& x, const Interval& y) noexcept {
    if (x.lo() == y.lo() && x.hi() == y.hi()) return LuRelation::Equal;
    if (x.lo() <= y.lo() && x.hi() <= y.hi()) return LuRelation::PrecStrict;
    if (x.lo() >= y.lo() && x.hi() >= y.hi()) return LuRelation::SuccStrict;
    return LuRelation::Incomparable;
}

IntervalVector::IntervalVector(std::vector<Interval> components) : components_(std::move(components)) {}

IntervalVector::IntervalVector(std::initializer_list<Interval> components) : components_(components) {}

LuRelation lu_vec_compare(const IntervalVector& x, const IntervalVector& y) {
    if (x.size() != y.size()) {
        throw LengthMismatchError("interval vectors have different lengths");
    }
    bool any_prec = false;
    bool any_succ = false;
    for (std::size_t k = 0; k < x.size(); ++k) {
        switch (lu_compare(x[k], y[k])) {
            case LuRelation::Equal: break;
            case LuRelation::PrecEq:
            case LuRelation::PrecStrict: any_prec = true; break;
            case LuRelation::SuccEq:
            case LuRelation::SuccStrict: any_succ = true; break;
            case LuRelation::Incomparable: return LuRelation::Incomparable;
        }
    }
    if (any_prec && any_succ) return LuRelation::Incomparable;
    if (any_prec) return LuRelation::PrecStrict;
    if (any_succ) return LuRelation::SuccStrict;
    return LuRelation::Equal;
}

}  // namespace ivvi
