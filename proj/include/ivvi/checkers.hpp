#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ivvi/convexificator.hpp"
#include "ivvi/problem.hpp"

namespace ivvi {

enum class CheckerId { Eff, WeakEff, Minty, Stampacchia, WeakMinty, WeakStampacchia };

/// "eff", "weak-eff", "minty", "stampacchia", "weak-minty", "weak-stampacchia".
const char* to_string(CheckerId id) noexcept;
/// Throws UnknownCheckerError.
CheckerId parse_checker_id(std::string_view text);
std::span<const CheckerId> all_checkers() noexcept;

struct CheckWitness {
    Vector upsilon;
    /// One gradient per endpoint function in the order L1, U1, L2, U2, ...;
    /// empty for the efficiency checkers.
    std::vector<Vector> selections;
    /// The 2p compared quantities (objective values or inner products).
    Vector values;

    std::string describe() const;
};

struct CheckVerdict {
    bool holds = true;
    std::optional<CheckWitness> witness;
};

/// Indices of the vectors no other vector dominates (<= everywhere, < somewhere).
std::vector<std::size_t> pareto_filter(std::span<const Vector> vectors);

/// How the non-weak variational systems "<= 0" are read.
enum class BlockingRule {
    /// <= 0 componentwise and not the zero vector.
    Nonzero,
    /// <= 0 componentwise, with v = w excluded.
    Literal,
};

struct CheckOptions {
    double tol = kDefaultTolAlg;
    double tie_tol = kDefaultTieTol;
    BlockingRule rule = BlockingRule::Literal;
};

/// A problem sampled on its grid: the grid plus all 2p endpoint functions.
class ProblemTables {
public:
    ProblemTables(const IvopProblem& problem, const GridSpec& grid, double tie_tol = kDefaultTieTol);
    explicit ProblemTables(const IvopProblem& problem) : ProblemTables(problem, problem.grid) {}

    const IvopProblem& problem() const noexcept { return problem_; }
    const Grid& grid() const noexcept { return grid_; }
    double tie_tol() const noexcept { return tie_tol_; }
    /// Endpoint function j: objective j / 2, lower when j is even.
    const SampledFunction& function(std::size_t j) const { return functions_[j]; }
    std::size_t function_count() const noexcept { return functions_.size(); }
    const Expr& expr(std::size_t j) const;

private:
    IvopProblem problem_;
    Grid grid_;
    double tie_tol_;
    std::vector<SampledFunction> functions_;
};

/// Throws OutOfDomainError when w lies outside the box. Candidates need not be grid points.
CheckVerdict check_point(CheckerId id, std::span<const double> w, const ProblemTables& tables,
                         const CheckOptions& opts = {});

/// No grid v with G(v) strictly LU-below G(w).
CheckVerdict is_lu_efficient(std::span<const double> w, const ProblemTables& t, const CheckOptions& o = {});
/// No grid v with G_i(v) strictly LU-below G_i(w) for every i.
CheckVerdict is_weak_lu_efficient(std::span<const double> w, const ProblemTables& t, const CheckOptions& o = {});
/// Minty: selections at the roaming point v; blocked when some tuple makes
/// (<z_i^L, v - w>, <z_i^U, v - w>)_i <= 0 (see BlockingRule).
CheckVerdict solves_imvvlip(std::span<const double> w, const ProblemTables& t, const CheckOptions& o = {});
/// Stampacchia: selections at the candidate w; blocked when every tuple does.
CheckVerdict solves_isvvlip(std::span<const double> w, const ProblemTables& t, const CheckOptions& o = {});
/// Weak Minty: blocked when some tuple makes every component < -tol.
CheckVerdict solves_iwmvvlip(std::span<const double> w, const ProblemTables& t, const CheckOptions& o = {});
/// Weak Stampacchia: blocked when every tuple makes every component < -tol.
CheckVerdict solves_iwsvvlip(std::span<const double> w, const ProblemTables& t, const CheckOptions& o = {});

/// Grid indices (ascending) whose verdict holds.
std::vector<std::size_t> solution_set(const ProblemTables& tables, CheckerId id, const CheckOptions& opts = {});

}  // namespace ivvi
