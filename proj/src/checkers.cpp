#include "ivvi/checkers.hpp"

#include <algorithm>
#include <array>
#include <limits>

#include "ivvi/error.hpp"
#include "ivvi/format.hpp"
#include "ivvi/kernels.hpp"
#include "ivvi/parallel.hpp"

namespace ivvi {

namespace {

constexpr std::array<CheckerId, 6> kCheckers = {CheckerId::Eff,         CheckerId::WeakEff,
                                                CheckerId::Minty,       CheckerId::Stampacchia,
                                                CheckerId::WeakMinty,   CheckerId::WeakStampacchia};

}  // namespace

const char* to_string(CheckerId id) noexcept {
    switch (id) {
        case CheckerId::Eff: return "eff";
        case CheckerId::WeakEff: return "weak-eff";
        case CheckerId::Minty: return "minty";
        case CheckerId::Stampacchia: return "stampacchia";
        case CheckerId::WeakMinty: return "weak-minty";
        case CheckerId::WeakStampacchia: return "weak-stampacchia";
    }
    return "?";
}

CheckerId parse_checker_id(std::string_view text) {
    for (CheckerId id : kCheckers) {
        if (text == to_string(id)) return id;
    }
    throw UnknownCheckerError("unknown checker '" + std::string(text) +
                              "' (expected eff, weak-eff, minty, stampacchia, weak-minty or weak-stampacchia)");
}

std::span<const CheckerId> all_checkers() noexcept { return kCheckers; }

std::string CheckWitness::describe() const {
    std::string s = "v=" + format_point(upsilon);
    if (!selections.empty()) {
        s += " selections=";
        for (std::size_t j = 0; j < selections.size(); ++j) {
            if (j) s += ",";
            s += format_point(selections[j]);
        }
    }
    s += " values=" + format_point(values);
    return s;
}

std::vector<std::size_t> pareto_filter(std::span<const Vector> vectors) {
    std::vector<std::size_t> keep;
    if (vectors.empty()) return keep;
    const std::size_t m = vectors.front().size();
    for (const auto& v : vectors) {
        if (v.size() != m) throw LengthMismatchError("pareto_filter needs vectors of equal length");
    }
    // Column layout for the dominance kernel.
    std::vector<Vector> cols(m, Vector(vectors.size()));
    for (std::size_t k = 0; k < vectors.size(); ++k) {
        for (std::size_t j = 0; j < m; ++j) cols[j][k] = vectors[k][j];
    }
    std::vector<const double*> ptrs;
    for (const auto& c : cols) ptrs.push_back(c.data());
    for (std::size_t k = 0; k < vectors.size(); ++k) {
        kernels::DominanceArgs a{ptrs, vectors[k], vectors[k], vectors.size(), std::max<std::size_t>(m, 1),
                                 kernels::StrictMode::PerGroup, k};
        if (kernels::first_dominated(a) == kernels::npos) keep.push_back(k);
    }
    return keep;
}

// ---------------------------------------------------------------------------

ProblemTables::ProblemTables(const IvopProblem& problem, const GridSpec& grid, double tie_tol)
    : problem_(problem), grid_(problem.domain, grid), tie_tol_(tie_tol) {
    functions_.reserve(2 * problem_.objectives.size());
    for (const auto& g : problem_.objectives) {
        functions_.emplace_back(g.lower, grid_, tie_tol);
        functions_.emplace_back(g.upper, grid_, tie_tol);
    }
}

const Expr& ProblemTables::expr(std::size_t j) const {
    const auto& g = problem_.objectives[j / 2];
    return j % 2 == 0 ? g.lower : g.upper;
}

namespace {

// Values and selections of every endpoint function at the candidate.
struct Candidate {
    Vector point;
    std::size_t index = kernels::npos;  // grid index, if on the grid
    Vector values;
    std::vector<std::vector<Vector>> selections;
};

Candidate make_candidate(std::span<const double> w, const ProblemTables& t) {
    const IvopProblem& p = t.problem();
    if (w.size() != p.dimension) {
        throw LengthMismatchError("point has " + std::to_string(w.size()) + " coordinates, problem dimension is " +
                                  std::to_string(p.dimension));
    }
    if (!p.domain.contains(w)) throw OutOfDomainError("point " + format_point(w) + " lies outside the domain");
    Candidate c;
    c.point.assign(w.begin(), w.end());
    if (auto k = t.grid().find(w)) c.index = *k;
    for (std::size_t j = 0; j < t.function_count(); ++j) {
        if (c.index != kernels::npos) {
            c.values.push_back(t.function(j).values()[c.index]);
            c.selections.push_back(t.function(j).selections(c.index));
        } else {
            c.values.push_back(eval(t.expr(j), w));
            c.selections.push_back(active_branches(t.expr(j), w, t.tie_tol()).gradients);
        }
    }
    return c;
}

double inner(const Vector& z, const Grid& g, std::size_t v, const Vector& w) {
    double acc = 0.0;
    acc += 0.0;
    for (std::size_t d = 0; d < g.dimension(); ++d) acc += z[d] * (g.axis(d)[v] - w[d]);
    return acc;
}

CheckVerdict efficiency(bool weak, const Candidate& c, const ProblemTables& t) {
    const std::size_t m = t.function_count();
    std::vector<const double*> cols(m);
    for (std::size_t j = 0; j < m; ++j) cols[j] = t.function(j).values();
    kernels::DominanceArgs a{cols, c.values, c.values, t.grid().size(), weak ? 2 : m,
                             kernels::StrictMode::PerGroup, c.index};
    const std::size_t k = kernels::first_dominated(a);
    if (k == kernels::npos) return {};
    CheckWitness wit;
    wit.upsilon = t.grid().point(k);
    for (std::size_t j = 0; j < m; ++j) wit.values.push_back(cols[j][k]);
    return {false, std::move(wit)};
}

CheckVerdict variational(bool minty, bool weak, const Candidate& c, const ProblemTables& t, const CheckOptions& o) {
    const Grid& g = t.grid();
    const std::size_t n = g.size();
    const std::size_t dim = g.dimension();
    const std::size_t m = t.function_count();

    std::vector<kernels::Factor> lhs(dim), rhs(dim);
    for (std::size_t d = 0; d < dim; ++d) rhs[d] = {g.axis(d).data(), c.point[d]};

    // Minty: per-function minimum over selections at v.
    // Stampacchia: per-function maximum over selections at w.
    std::vector<Vector> cols(m, Vector(n));
    for (std::size_t j = 0; j < m; ++j) {
        if (minty) {
            const SampledFunction& f = t.function(j);
            for (std::size_t slot = 0; slot < f.slots(); ++slot) {
                for (std::size_t d = 0; d < dim; ++d) lhs[d] = {f.gradient_column(slot, d), 0.0};
                kernels::shifted_dot({cols[j].data(), n, slot == 0 ? kernels::Reduce::Assign : kernels::Reduce::Min,
                                      nullptr, 0.0, lhs, rhs});
            }
        } else {
            const auto& sel = c.selections[j];
            for (std::size_t s = 0; s < sel.size(); ++s) {
                for (std::size_t d = 0; d < dim; ++d) lhs[d] = {nullptr, -sel[s][d]};
                kernels::shifted_dot({cols[j].data(), n, s == 0 ? kernels::Reduce::Assign : kernels::Reduce::Max,
                                      nullptr, 0.0, lhs, rhs});
            }
        }
    }

    std::vector<const double*> ptrs(m);
    for (std::size_t j = 0; j < m; ++j) ptrs[j] = cols[j].data();
    Vector le(m), lt(m, -o.tol);
    kernels::DominanceArgs a{ptrs, le, lt, n, 1, kernels::StrictMode::PerGroup, c.index};
    if (weak) {
        std::fill(le.begin(), le.end(), -o.tol);
    } else {
        std::fill(le.begin(), le.end(), o.tol);
        a.group_size = m;
        if (o.rule == BlockingRule::Literal) a.strict = kernels::StrictMode::None;
    }
    const std::size_t k = kernels::first_dominated(a);
    if (k == kernels::npos) return {};

    CheckWitness wit;
    wit.upsilon = g.point(k);
    for (std::size_t j = 0; j < m; ++j) {
        wit.values.push_back(cols[j][k]);
        const auto& sel = minty ? t.function(j).selections(k) : c.selections[j];
        // The selection attaining the reduced value, first in sorted order.
        std::size_t pick = 0;
        for (std::size_t s = 0; s < sel.size(); ++s) {
            if (inner(sel[s], g, k, c.point) == cols[j][k]) {
                pick = s;
                break;
            }
        }
        wit.selections.push_back(sel[pick]);
    }
    return {false, std::move(wit)};
}

CheckVerdict dispatch(CheckerId id, const Candidate& c, const ProblemTables& t, const CheckOptions& o) {
    switch (id) {
        case CheckerId::Eff: return efficiency(false, c, t);
        case CheckerId::WeakEff: return efficiency(true, c, t);
        case CheckerId::Minty: return variational(true, false, c, t, o);
        case CheckerId::Stampacchia: return variational(false, false, c, t, o);
        case CheckerId::WeakMinty: return variational(true, true, c, t, o);
        case CheckerId::WeakStampacchia: return variational(false, true, c, t, o);
    }
    return {};
}

}  // namespace

CheckVerdict check_point(CheckerId id, std::span<const double> w, const ProblemTables& t, const CheckOptions& o) {
    return dispatch(id, make_candidate(w, t), t, o);
}

CheckVerdict is_lu_efficient(std::span<const double> w, const ProblemTables& t, const CheckOptions& o) {
    return check_point(CheckerId::Eff, w, t, o);
}
CheckVerdict is_weak_lu_efficient(std::span<const double> w, const ProblemTables& t, const CheckOptions& o) {
    return check_point(CheckerId::WeakEff, w, t, o);
}
CheckVerdict solves_imvvlip(std::span<const double> w, const ProblemTables& t, const CheckOptions& o) {
    return check_point(CheckerId::Minty, w, t, o);
}
CheckVerdict solves_isvvlip(std::span<const double> w, const ProblemTables& t, const CheckOptions& o) {
    return check_point(CheckerId::Stampacchia, w, t, o);
}
CheckVerdict solves_iwmvvlip(std::span<const double> w, const ProblemTables& t, const CheckOptions& o) {
    return check_point(CheckerId::WeakMinty, w, t, o);
}
CheckVerdict solves_iwsvvlip(std::span<const double> w, const ProblemTables& t, const CheckOptions& o) {
    return check_point(CheckerId::WeakStampacchia, w, t, o);
}

std::vector<std::size_t> solution_set(const ProblemTables& t, CheckerId id, const CheckOptions& o) {
    const std::size_t n = t.grid().size();
    std::vector<char> holds(n, 0);
    parallel_for(n, [&](std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) {
            holds[k] = dispatch(id, make_candidate(t.grid().point(k), t), t, o).holds ? 1 : 0;
        }
    });
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < n; ++k) {
        if (holds[k]) out.push_back(k);
    }
    return out;
}

}  // namespace ivvi
