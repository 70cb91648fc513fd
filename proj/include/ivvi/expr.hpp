#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ivvi {

using Vector = std::vector<double>;

enum class NodeKind { Constant, Var, Add, Sub, Mul, Pow, Neg, Abs, Max, Min, Exp, Log, Sin, Cos };

/// Immutable piecewise-smooth scalar expression over R^n.
///
/// Nodes are shared, so copies are cheap. Constants are non-negative: a
/// leading minus always becomes a Neg node, which keeps printing and parsing
/// inverse to each other. Variable indices are 1-based.
class Expr {
public:
    struct Node;

    static Expr constant(double value);
    static Expr variable(std::size_t index);
    static Expr unary(NodeKind kind, Expr child);
    static Expr binary(NodeKind kind, Expr lhs, Expr rhs);
    static Expr power(Expr base, int exponent);
    /// Max or Min over two or more children.
    static Expr nary(NodeKind kind, std::vector<Expr> children);

    NodeKind kind() const noexcept;
    double constant_value() const noexcept;
    std::size_t variable_index() const noexcept;
    int exponent() const noexcept;
    std::span<const Expr> children() const noexcept;

    /// Largest variable index referenced, 0 for a constant expression.
    std::size_t max_variable() const noexcept;

    friend bool operator==(const Expr& a, const Expr& b) noexcept;

private:
    explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

/// Parses `text` as an expression over x1..x`dimension`.
///
///     expr   := term (("+"|"-") term)*
///     term   := factor ("*" factor)*
///     factor := "-" factor | atom ("^" INT)?
///     atom   := NUMBER | VAR | FUNC "(" expr ("," expr)* ")" | "(" expr ")"
///
/// FUNC is one of abs, max, min, exp, log, sin, cos. Throws ParseError (or the
/// UnknownVariableError / BadArityError refinements) carrying the byte offset.
Expr parse_expr(std::string_view text, std::size_t dimension);

/// Canonical text form; parse_expr(to_string(e), n) == e.
std::string to_string(const Expr& e);

/// Throws DomainError for log of a non-positive argument or a non-finite result,
/// LengthMismatchError if the point is shorter than the largest variable index.
double eval(const Expr& e, std::span<const double> point);
long double eval(const Expr& e, std::span<const long double> point);

inline constexpr double kDefaultTieTol = 1e-9;
inline constexpr std::size_t kSelectionCap = 64;

/// Gradients of every smooth selection active at a point.
struct ActiveBranchSet {
    std::vector<Vector> gradients;  // sorted lexicographically, no duplicates
    bool is_smooth_point = true;
};

/// Collects the gradients of all smooth pieces active at `point`.
///
/// A Max/Min child is active when its value is within tie_tol of the extremum
/// and an Abs node is tied when its argument is within tie_tol of zero, both
/// after scaling by 1 + magnitude. Independent ties combine as a Cartesian
/// product. Throws SelectionCapError past kSelectionCap selections.
ActiveBranchSet active_branches(const Expr& e, std::span<const double> point,
                                double tie_tol = kDefaultTieTol);

}  // namespace ivvi
