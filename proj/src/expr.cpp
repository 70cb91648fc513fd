#include "ivvi/expr.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <string>

#include "ivvi/error.hpp"
#include "ivvi/format.hpp"

namespace ivvi {

struct Expr::Node {
    NodeKind kind;
    double value = 0.0;      // Constant
    std::size_t index = 0;   // Var, 1-based
    int exponent = 0;        // Pow
    std::vector<Expr> children;
    std::size_t max_var = 0;
};

namespace {

bool is_unary_function(NodeKind k) {
    return k == NodeKind::Abs || k == NodeKind::Exp || k == NodeKind::Log || k == NodeKind::Sin ||
           k == NodeKind::Cos || k == NodeKind::Neg;
}

std::size_t children_max_var(const std::vector<Expr>& children) {
    std::size_t m = 0;
    for (const auto& c : children) m = std::max(m, c.max_variable());
    return m;
}

}  // namespace

Expr Expr::constant(double value) {
    if (!std::isfinite(value) || value < 0.0) {
        throw Error("expression constants must be finite and non-negative");
    }
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Constant;
    n->value = value;
    return Expr(std::move(n));
}

Expr Expr::variable(std::size_t index) {
    if (index == 0) throw Error("variable indices are 1-based");
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Var;
    n->index = index;
    n->max_var = index;
    return Expr(std::move(n));
}

Expr Expr::unary(NodeKind kind, Expr child) {
    if (!is_unary_function(kind)) throw Error("not a unary node kind");
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->children.push_back(std::move(child));
    n->max_var = children_max_var(n->children);
    return Expr(std::move(n));
}

Expr Expr::binary(NodeKind kind, Expr lhs, Expr rhs) {
    if (kind != NodeKind::Add && kind != NodeKind::Sub && kind != NodeKind::Mul) {
        throw Error("not a binary node kind");
    }
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->children = {std::move(lhs), std::move(rhs)};
    n->max_var = children_max_var(n->children);
    return Expr(std::move(n));
}

Expr Expr::power(Expr base, int exponent) {
    if (exponent < 1) throw Error("power exponent must be a positive integer");
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Pow;
    n->exponent = exponent;
    n->children.push_back(std::move(base));
    n->max_var = children_max_var(n->children);
    return Expr(std::move(n));
}

Expr Expr::nary(NodeKind kind, std::vector<Expr> children) {
    if (kind != NodeKind::Max && kind != NodeKind::Min) throw Error("not an n-ary node kind");
    if (children.size() < 2) throw Error("max/min need at least two arguments");
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->children = std::move(children);
    n->max_var = children_max_var(n->children);
    return Expr(std::move(n));
}

NodeKind Expr::kind() const noexcept { return node_->kind; }
double Expr::constant_value() const noexcept { return node_->value; }
std::size_t Expr::variable_index() const noexcept { return node_->index; }
int Expr::exponent() const noexcept { return node_->exponent; }
std::span<const Expr> Expr::children() const noexcept { return node_->children; }
std::size_t Expr::max_variable() const noexcept { return node_->max_var; }

bool operator==(const Expr& a, const Expr& b) noexcept {
    if (a.node_ == b.node_) return true;
    const auto& x = *a.node_;
    const auto& y = *b.node_;
    if (x.kind != y.kind || x.children.size() != y.children.size()) return false;
    switch (x.kind) {
        case NodeKind::Constant: return x.value == y.value;
        case NodeKind::Var: return x.index == y.index;
        case NodeKind::Pow:
            if (x.exponent != y.exponent) return false;
            break;
        default: break;
    }
    for (std::size_t i = 0; i < x.children.size(); ++i) {
        if (!(x.children[i] == y.children[i])) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
public:
    Parser(std::string_view text, std::size_t dimension) : text_(text), dim_(dimension) {}

    Expr parse() {
        Expr e = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    Expr expr() {
        Expr lhs = term();
        for (;;) {
            if (accept('+')) {
                lhs = Expr::binary(NodeKind::Add, lhs, term());
            } else if (accept('-')) {
                lhs = Expr::binary(NodeKind::Sub, lhs, term());
            } else {
                return lhs;
            }
        }
    }

    Expr term() {
        Expr lhs = factor();
        while (accept('*')) lhs = Expr::binary(NodeKind::Mul, lhs, factor());
        return lhs;
    }

    Expr factor() {
        if (accept('-')) return Expr::unary(NodeKind::Neg, factor());
        Expr base = atom();
        if (accept('^')) {
            skip_ws();
            const std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            if (start == pos_) fail("expected integer exponent");
            if (pos_ < text_.size() && (text_[pos_] == '.' || text_[pos_] == 'e' || text_[pos_] == 'E')) {
                fail("exponent must be an integer");
            }
            int k = 0;
            const auto res = std::from_chars(text_.data() + start, text_.data() + pos_, k);
            if (res.ec != std::errc() || k < 1) {
                pos_ = start;
                fail("exponent must be a positive integer");
            }
            return Expr::power(base, k);
        }
        return base;
    }

    Expr atom() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Expr e = expr();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
        fail(std::string("unexpected character '") + c + "'");
    }

    Expr number() {
        const std::size_t start = pos_;
        auto digits = [&] {
            const std::size_t s = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            return pos_ - s;
        };
        std::size_t n = digits();
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            n += digits();
        }
        if (n == 0) {
            pos_ = start;
            fail("malformed number");
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            ++pos_;
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
            if (digits() == 0) fail("malformed exponent in number");
        }
        double v = 0.0;
        const auto res = std::from_chars(text_.data() + start, text_.data() + pos_, v);
        if (res.ec != std::errc() || res.ptr != text_.data() + pos_ || !std::isfinite(v)) {
            pos_ = start;
            fail("number out of range");
        }
        return Expr::constant(v);
    }

    Expr identifier() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        const std::string_view name = text_.substr(start, pos_ - start);

        if (name.size() > 1 && name[0] == 'x' &&
            std::all_of(name.begin() + 1, name.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
            std::size_t idx = 0;
            const auto res = std::from_chars(name.data() + 1, name.data() + name.size(), idx);
            if (res.ec != std::errc() || idx == 0 || idx > dim_) {
                throw UnknownVariableError("unknown variable '" + std::string(name) + "' (dimension " +
                                               std::to_string(dim_) + ")",
                                           start);
            }
            return Expr::variable(idx);
        }

        NodeKind kind;
        if (name == "abs") kind = NodeKind::Abs;
        else if (name == "max") kind = NodeKind::Max;
        else if (name == "min") kind = NodeKind::Min;
        else if (name == "exp") kind = NodeKind::Exp;
        else if (name == "log") kind = NodeKind::Log;
        else if (name == "sin") kind = NodeKind::Sin;
        else if (name == "cos") kind = NodeKind::Cos;
        else {
            skip_ws();
            if (pos_ < text_.size() && text_[pos_] == '(') {
                throw ParseError("unknown function '" + std::string(name) + "'", start);
            }
            throw UnknownVariableError("unknown variable '" + std::string(name) + "'", start);
        }

        expect('(');
        std::vector<Expr> args;
        args.push_back(expr());
        while (accept(',')) args.push_back(expr());
        expect(')');

        if (kind == NodeKind::Max || kind == NodeKind::Min) {
            if (args.size() < 2) {
                throw BadArityError(std::string(name) + " takes at least two arguments", start);
            }
            return Expr::nary(kind, std::move(args));
        }
        if (args.size() != 1) {
            throw BadArityError(std::string(name) + " takes exactly one argument", start);
        }
        return Expr::unary(kind, std::move(args.front()));
    }

    std::string_view text_;
    std::size_t dim_;
    std::size_t pos_ = 0;
};

}  // namespace

Expr parse_expr(std::string_view text, std::size_t dimension) {
    return Parser(text, dimension).parse();
}

// ---------------------------------------------------------------------------
// Printer

namespace {

// 1: sum/difference, 2: product, 3: factor (negation, power), 4: atom
int level(const Expr& e) {
    switch (e.kind()) {
        case NodeKind::Add:
        case NodeKind::Sub: return 1;
        case NodeKind::Mul: return 2;
        case NodeKind::Neg:
        case NodeKind::Pow: return 3;
        default: return 4;
    }
}

std::string_view function_name(NodeKind k) {
    switch (k) {
        case NodeKind::Abs: return "abs";
        case NodeKind::Max: return "max";
        case NodeKind::Min: return "min";
        case NodeKind::Exp: return "exp";
        case NodeKind::Log: return "log";
        case NodeKind::Sin: return "sin";
        case NodeKind::Cos: return "cos";
        default: return "";
    }
}

void print(const Expr& e, std::string& out);

void print_at(const Expr& e, int min_level, std::string& out) {
    if (level(e) >= min_level) {
        print(e, out);
    } else {
        out += '(';
        print(e, out);
        out += ')';
    }
}

void print(const Expr& e, std::string& out) {
    const auto ch = e.children();
    switch (e.kind()) {
        case NodeKind::Constant: out += format_real(e.constant_value()); break;
        case NodeKind::Var:
            out += 'x';
            out += std::to_string(e.variable_index());
            break;
        case NodeKind::Add:
        case NodeKind::Sub:
            print_at(ch[0], 1, out);
            out += e.kind() == NodeKind::Add ? " + " : " - ";
            print_at(ch[1], 2, out);
            break;
        case NodeKind::Mul:
            print_at(ch[0], 2, out);
            out += " * ";
            print_at(ch[1], 3, out);
            break;
        case NodeKind::Neg:
            out += '-';
            print_at(ch[0], 3, out);
            break;
        case NodeKind::Pow:
            print_at(ch[0], 4, out);
            out += '^';
            out += std::to_string(e.exponent());
            break;
        default:
            out += function_name(e.kind());
            out += '(';
            for (std::size_t i = 0; i < ch.size(); ++i) {
                if (i) out += ", ";
                print(ch[i], out);
            }
            out += ')';
            break;
    }
}

}  // namespace

std::string to_string(const Expr& e) {
    std::string out;
    print(e, out);
    return out;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

template <typename T>
T ipow(T base, int k) {
    T r = base;
    for (int i = 1; i < k; ++i) r *= base;
    return r;
}

template <typename T>
T eval_node(const Expr& e, std::span<const T> x) {
    const auto ch = e.children();
    switch (e.kind()) {
        case NodeKind::Constant: return static_cast<T>(e.constant_value());
        case NodeKind::Var: return x[e.variable_index() - 1];
        case NodeKind::Add: return eval_node(ch[0], x) + eval_node(ch[1], x);
        case NodeKind::Sub: return eval_node(ch[0], x) - eval_node(ch[1], x);
        case NodeKind::Mul: return eval_node(ch[0], x) * eval_node(ch[1], x);
        case NodeKind::Pow: return ipow(eval_node(ch[0], x), e.exponent());
        case NodeKind::Neg: return -eval_node(ch[0], x);
        case NodeKind::Abs: return std::abs(eval_node(ch[0], x));
        case NodeKind::Max: {
            T m = eval_node(ch[0], x);
            for (std::size_t i = 1; i < ch.size(); ++i) m = std::max(m, eval_node(ch[i], x));
            return m;
        }
        case NodeKind::Min: {
            T m = eval_node(ch[0], x);
            for (std::size_t i = 1; i < ch.size(); ++i) m = std::min(m, eval_node(ch[i], x));
            return m;
        }
        case NodeKind::Exp: return std::exp(eval_node(ch[0], x));
        case NodeKind::Log: {
            const T v = eval_node(ch[0], x);
            if (!(v > 0)) throw DomainError("log of a non-positive argument");
            return std::log(v);
        }
        case NodeKind::Sin: return std::sin(eval_node(ch[0], x));
        case NodeKind::Cos: return std::cos(eval_node(ch[0], x));
    }
    return T(0);
}

template <typename T>
T eval_checked(const Expr& e, std::span<const T> x) {
    if (e.max_variable() > x.size()) {
        throw LengthMismatchError("point has " + std::to_string(x.size()) + " coordinates, expression uses x" +
                                  std::to_string(e.max_variable()));
    }
    const T v = eval_node(e, x);
    if (!std::isfinite(v)) throw DomainError("expression evaluated to a non-finite value");
    return v;
}

}  // namespace

double eval(const Expr& e, std::span<const double> point) { return eval_checked(e, point); }

long double eval(const Expr& e, std::span<const long double> point) { return eval_checked(e, point); }

// ---------------------------------------------------------------------------
// Active branches

namespace {

struct Branches {
    double value;
    std::vector<Vector> grads;
    bool tied;
};

void canonicalize(std::vector<Vector>& g) {
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    if (g.size() > kSelectionCap) {
        throw SelectionCapError("more than " + std::to_string(kSelectionCap) + " active selections");
    }
}

Vector scaled(const Vector& g, double s) {
    Vector r(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) r[i] = s * g[i];
    return r;
}

class BranchCollector {
public:
    BranchCollector(std::span<const double> x, double tie_tol) : x_(x), tol_(tie_tol) {}

    Branches visit(const Expr& e) {
        const auto ch = e.children();
        const std::size_t n = x_.size();
        switch (e.kind()) {
            case NodeKind::Constant: return {e.constant_value(), {Vector(n, 0.0)}, false};
            case NodeKind::Var: {
                Vector g(n, 0.0);
                g[e.variable_index() - 1] = 1.0;
                return {x_[e.variable_index() - 1], {std::move(g)}, false};
            }
            case NodeKind::Add:
            case NodeKind::Sub: {
                const double sign = e.kind() == NodeKind::Add ? 1.0 : -1.0;
                Branches a = visit(ch[0]);
                Branches b = visit(ch[1]);
                std::vector<Vector> out;
                for (const auto& ga : a.grads) {
                    for (const auto& gb : b.grads) {
                        Vector g(n);
                        for (std::size_t i = 0; i < n; ++i) g[i] = ga[i] + sign * gb[i];
                        out.push_back(std::move(g));
                    }
                }
                canonicalize(out);
                return {e.kind() == NodeKind::Add ? a.value + b.value : a.value - b.value, std::move(out),
                        a.tied || b.tied};
            }
            case NodeKind::Mul: {
                Branches a = visit(ch[0]);
                Branches b = visit(ch[1]);
                std::vector<Vector> out;
                for (const auto& ga : a.grads) {
                    for (const auto& gb : b.grads) {
                        Vector g(n);
                        for (std::size_t i = 0; i < n; ++i) g[i] = ga[i] * b.value + a.value * gb[i];
                        out.push_back(std::move(g));
                    }
                }
                canonicalize(out);
                return {a.value * b.value, std::move(out), a.tied || b.tied};
            }
            case NodeKind::Pow: {
                Branches a = visit(ch[0]);
                const int k = e.exponent();
                const double v = a.value;
                const double factor = k == 1 ? 1.0 : k * ipow(v, k - 1);
                return chain(std::move(a), ipow(v, k), factor);
            }
            case NodeKind::Neg: {
                Branches a = visit(ch[0]);
                const double v = a.value;
                return chain(std::move(a), -v, -1.0);
            }
            case NodeKind::Exp: {
                Branches a = visit(ch[0]);
                const double v = std::exp(a.value);
                return chain(std::move(a), v, v);
            }
            case NodeKind::Log: {
                Branches a = visit(ch[0]);
                const double v = a.value;
                if (!(v > 0.0)) throw DomainError("log of a non-positive argument");
                return chain(std::move(a), std::log(v), 1.0 / v);
            }
            case NodeKind::Sin: {
                Branches a = visit(ch[0]);
                const double v = a.value;
                return chain(std::move(a), std::sin(v), std::cos(v));
            }
            case NodeKind::Cos: {
                Branches a = visit(ch[0]);
                const double v = a.value;
                return chain(std::move(a), std::cos(v), -std::sin(v));
            }
            case NodeKind::Abs: {
                Branches a = visit(ch[0]);
                if (near(a.value, 0.0)) {
                    std::vector<Vector> out;
                    for (const auto& g : a.grads) {
                        out.push_back(g);
                        out.push_back(scaled(g, -1.0));
                    }
                    canonicalize(out);
                    return {std::abs(a.value), std::move(out), true};
                }
                const double v = a.value;
                return chain(std::move(a), std::abs(v), v > 0.0 ? 1.0 : -1.0);
            }
            case NodeKind::Max:
            case NodeKind::Min: {
                const bool is_max = e.kind() == NodeKind::Max;
                std::vector<Branches> parts;
                parts.reserve(ch.size());
                for (const auto& c : ch) parts.push_back(visit(c));
                double best = parts.front().value;
                for (const auto& p : parts) best = is_max ? std::max(best, p.value) : std::min(best, p.value);
                std::vector<Vector> out;
                std::size_t active = 0;
                bool tied = false;
                for (auto& p : parts) {
                    if (!near(p.value, best)) continue;
                    ++active;
                    tied = tied || p.tied;
                    for (auto& g : p.grads) out.push_back(std::move(g));
                }
                canonicalize(out);
                return {best, std::move(out), tied || active > 1};
            }
        }
        throw Error("unreachable expression node");
    }

private:
    bool near(double a, double b) const {
        return std::abs(a - b) <= tol_ * (1.0 + std::max(std::abs(a), std::abs(b)));
    }

    static Branches chain(Branches a, double value, double factor) {
        for (auto& g : a.grads) {
            for (auto& gi : g) gi *= factor;
        }
        canonicalize(a.grads);
        return {value, std::move(a.grads), a.tied};
    }

    std::span<const double> x_;
    double tol_;
};

}  // namespace

ActiveBranchSet active_branches(const Expr& e, std::span<const double> point, double tie_tol) {
    if (e.max_variable() > point.size()) {
        throw LengthMismatchError("point dimension is smaller than the expression's variable count");
    }
    BranchCollector collector(point, tie_tol);
    Branches b = collector.visit(e);
    if (!std::isfinite(b.value)) throw DomainError("expression evaluated to a non-finite value");
    ActiveBranchSet out;
    out.gradients = std::move(b.grads);
    out.is_smooth_point = !b.tied;
    return out;
}

}  // namespace ivvi
