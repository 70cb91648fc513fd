#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string_view>
#include <vector>

namespace ivvi {

/// Closed real interval [lo, hi] with finite endpoints and lo <= hi.
///
/// Arithmetic is plain IEEE double on the endpoints, no outward rounding.
/// A real x embeds as the degenerate interval [x, x].
class Interval {
public:
    constexpr Interval() noexcept = default;
    Interval(double lo, double hi);
    static Interval point(double x) { return Interval(x, x); }

    constexpr double lo() const noexcept { return lo_; }
    constexpr double hi() const noexcept { return hi_; }
    constexpr double width() const noexcept { return hi_ - lo_; }
    constexpr bool contains(double x) const noexcept { return lo_ <= x && x <= hi_; }

    friend constexpr bool operator==(const Interval&, const Interval&) noexcept = default;

private:
    double lo_ = 0.0;
    double hi_ = 0.0;
};

Interval add(const Interval& x, const Interval& y);
Interval neg(const Interval& x) noexcept;
/// Minkowski difference x + (-y) = [x.lo - y.hi, x.hi - y.lo].
Interval sub(const Interval& x, const Interval& y);
Interval scale(double alpha, const Interval& x);
/// Hull of the four corner products.
Interval mul(const Interval& x, const Interval& y);
/// max(|x.lo - y.lo|, |x.hi - y.hi|)
double hausdorff(const Interval& x, const Interval& y) noexcept;

inline Interval operator+(const Interval& x, const Interval& y) { return add(x, y); }
inline Interval operator-(const Interval& x) { return neg(x); }
inline Interval operator-(const Interval& x, const Interval& y) { return sub(x, y); }
inline Interval operator*(const Interval& x, const Interval& y) { return mul(x, y); }
inline Interval operator*(double alpha, const Interval& x) { return scale(alpha, x); }

/// Outcome of comparing two intervals (or interval vectors) under the LU order.
///
/// PrecStrict means x <=_LU y with x != y. Equal is reported instead of PrecEq
/// when every endpoint matches; PrecEq/SuccEq are only produced by callers that
/// need the non-strict relation explicitly.
enum class LuRelation { PrecEq, PrecStrict, SuccEq, SuccStrict, Equal, Incomparable };

std::string_view to_string(LuRelation r) noexcept;

/// Exact endpoint comparison, no tolerance.
LuRelation lu_compare(const Interval& x, const Interval& y) noexcept;

/// True for PrecEq, PrecStrict and Equal.
constexpr bool lu_precedes_or_equal(LuRelation r) noexcept {
    return r == LuRelation::PrecEq || r == LuRelation::PrecStrict || r == LuRelation::Equal;
}

class IntervalVector {
public:
    IntervalVector() = default;
    explicit IntervalVector(std::vector<Interval> components);
    IntervalVector(std::initializer_list<Interval> components);

    std::size_t size() const noexcept { return components_.size(); }
    const Interval& operator[](std::size_t i) const { return components_[i]; }
    std::span<const Interval> components() const noexcept { return components_; }

    auto begin() const noexcept { return components_.begin(); }
    auto end() const noexcept { return components_.end(); }

    friend bool operator==(const IntervalVector&, const IntervalVector&) = default;

private:
    std::vector<Interval> components_;
};

/// Componentwise LU comparison. Any incomparable or mixed-direction component
/// pair makes the vectors Incomparable. Throws LengthMismatchError on size mismatch.
LuRelation lu_vec_compare(const IntervalVector& x, const IntervalVector& y);

}  // namespace ivvi
