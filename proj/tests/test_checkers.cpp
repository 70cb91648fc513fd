#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <functional>
#include <random>

#include "ivvi/checkers.hpp"
#include "ivvi/error.hpp"

using namespace ivvi;

namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = IVVI_FIXTURE_DIR;
const fs::path kCorpus = IVVI_CORPUS_DIR;

std::vector<fs::path> corpus_files() {
    std::vector<fs::path> out;
    for (const auto& e : fs::directory_iterator(kCorpus)) out.push_back(e.path());
    std::sort(out.begin(), out.end());
    return out;
}

IvopProblem problem(const char* json) { return parse_problem(json); }

const char* kIdentity = R"({"dimension": 1, "domain": {"lo": [0], "hi": [1]},
                            "objectives": [{"lower": "x1", "upper": "x1"}]})";

std::vector<std::size_t> brute_pareto(const std::vector<Vector>& v) {
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < v.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < v.size() && !dominated; ++j) {
            bool le = true, lt = false;
            for (std::size_t d = 0; d < v[i].size(); ++d) {
                le = le && v[j][d] <= v[i][d];
                lt = lt || v[j][d] < v[i][d];
            }
            dominated = j != i && le && lt;
        }
        if (!dominated) keep.push_back(i);
    }
    return keep;
}

// Reference checkers written straight from the definitions: interval orders via
// lu_compare, explicit enumeration of selection tuples, no kernels.
struct Oracle {
    const IvopProblem& p;
    Grid grid;
    double tol = 1e-9;

    std::vector<Expr> functions() const {
        std::vector<Expr> out;
        for (const auto& g : p.objectives) {
            out.push_back(g.lower);
            out.push_back(g.upper);
        }
        return out;
    }

    bool eff(std::size_t w, bool weak) const {
        const Vector pw = grid.point(w);
        const IntervalVector gw = evaluate_objectives(p, pw);
        for (std::size_t v = 0; v < grid.size(); ++v) {
            if (v == w) continue;
            const IntervalVector gv = evaluate_objectives(p, grid.point(v));
            if (weak) {
                bool all = true;
                for (std::size_t i = 0; i < gv.size(); ++i) all = all && lu_compare(gv[i], gw[i]) == LuRelation::PrecStrict;
                if (all) return false;
            } else if (lu_vec_compare(gv, gw) == LuRelation::PrecStrict) {
                return false;
            }
        }
        return true;
    }

    // Calls visit(values) for every selection tuple at `at`, values[j] = <z_j, v - w>.
    void tuples(std::size_t at, const Vector& pw, const Vector& pv, const std::function<void(const Vector&)>& visit) const {
        const auto fs = functions();
        std::vector<std::vector<Vector>> sets;
        for (const auto& f : fs) sets.push_back(active_branches(f, grid.point(at)).gradients);
        std::vector<std::size_t> idx(fs.size(), 0);
        while (true) {
            Vector vals;
            for (std::size_t j = 0; j < fs.size(); ++j) {
                double ip = 0;
                for (std::size_t d = 0; d < pw.size(); ++d) ip += sets[j][idx[j]][d] * (pv[d] - pw[d]);
                vals.push_back(ip);
            }
            visit(vals);
            std::size_t j = 0;
            while (j < fs.size() && ++idx[j] == sets[j].size()) idx[j++] = 0;
            if (j == fs.size()) break;
        }
    }

    bool blocked(const Vector& vals, bool weak) const {
        if (weak) return std::all_of(vals.begin(), vals.end(), [&](double x) { return x < -tol; });
        return std::all_of(vals.begin(), vals.end(), [&](double x) { return x <= tol; });
    }

    bool vi(std::size_t w, bool minty, bool weak) const {
        const Vector pw = grid.point(w);
        for (std::size_t v = 0; v < grid.size(); ++v) {
            if (v == w) continue;
            const Vector pv = grid.point(v);
            bool any = false, all = true;
            tuples(minty ? v : w, pw, pv, [&](const Vector& vals) {
                const bool b = blocked(vals, weak);
                any = any || b;
                all = all && b;
            });
            if (minty ? any : all) return false;
        }
        return true;
    }

    bool holds(CheckerId id, std::size_t w) const {
        switch (id) {
            case CheckerId::Eff: return eff(w, false);
            case CheckerId::WeakEff: return eff(w, true);
            case CheckerId::Minty: return vi(w, true, false);
            case CheckerId::Stampacchia: return vi(w, false, false);
            case CheckerId::WeakMinty: return vi(w, true, true);
            case CheckerId::WeakStampacchia: return vi(w, false, true);
        }
        return false;
    }
};

}  // namespace

TEST_CASE("checker ids") {
    CHECK(all_checkers().size() == 6);
    for (CheckerId id : all_checkers()) CHECK(parse_checker_id(to_string(id)) == id);
    CHECK_THROWS_AS(parse_checker_id("pareto"), UnknownCheckerError);
}

TEST_CASE("pareto filter examples") {
    CHECK(pareto_filter(std::vector<Vector>{{1, 2}, {2, 1}, {2, 2}}) == std::vector<std::size_t>{0, 1});
    CHECK(pareto_filter(std::vector<Vector>{{3, 3}}) == std::vector<std::size_t>{0});
    CHECK(pareto_filter(std::vector<Vector>{{1, 1}, {1, 1}, {1, 1}}) == std::vector<std::size_t>{0, 1, 2});
    CHECK(pareto_filter(std::vector<Vector>{}).empty());
}

TEST_CASE("pareto filter matches an O(m^2) scan") {
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<int> u(0, 5);
    for (int t = 0; t < 1000; ++t) {
        const std::size_t m = 1 + t % 40, dim = 1 + t % 4;
        std::vector<Vector> v(m, Vector(dim));
        for (auto& x : v)
            for (auto& c : x) c = u(rng);
        CHECK(pareto_filter(v) == brute_pareto(v));
    }
}

TEST_CASE("identity instance") {
    const IvopProblem p = problem(kIdentity);
    const ProblemTables t(p);
    for (CheckerId id : all_checkers()) {
        CAPTURE(to_string(id));
        CHECK(check_point(id, Vector{0.0}, t).holds);
        CHECK(solution_set(t, id) == std::vector<std::size_t>{0});
    }
    const auto v = solves_imvvlip(Vector{0.5}, t);
    CHECK_FALSE(v.holds);
    REQUIRE(v.witness);
    CHECK(v.witness->upsilon == Vector{0.0});
    CHECK_THROWS_AS(is_lu_efficient(Vector{1.5}, t), OutOfDomainError);
    CHECK_THROWS_AS(is_lu_efficient(Vector{0.5, 0.5}, t), LengthMismatchError);
}

TEST_CASE("smooth instance verdicts") {
    const IvopProblem p = load_problem(kFixtures / "smooth_pair.json");
    const ProblemTables t(p);
    CHECK(is_lu_efficient(Vector{0.5}, t).holds);
    const auto v = is_lu_efficient(Vector{-0.5}, t);
    CHECK_FALSE(v.holds);
    // The first dominating grid point lies between -0.5 and 0.5.
    CHECK(v.witness->upsilon[0] > -0.5);
    CHECK(v.witness->upsilon[0] <= 0.5);
    CHECK(is_lu_efficient(Vector{0.0}, t).holds);
    CHECK(is_lu_efficient(Vector{1.0}, t).holds);
    CHECK_FALSE(is_weak_lu_efficient(Vector{1.5}, t).holds);
    CHECK(solves_iwmvvlip(Vector{0.5}, t).holds);
    CHECK_FALSE(solves_iwsvvlip(Vector{1.5}, t).holds);

    // 0 and 1 are not grid points; their nearest neighbours outside [0, 1] stay efficient.
    const auto eff = solution_set(t, CheckerId::Eff);
    REQUIRE(!eff.empty());
    CHECK(t.grid().point(eff.front())[0] == -0.015625);
    CHECK(t.grid().point(eff.back())[0] == 1.015625);
    CHECK(eff.size() == 23);
}

TEST_CASE("canonical nonsmooth instance") {
    const IvopProblem p = load_problem(kFixtures / "canonical_nonsmooth.json");
    const ProblemTables t(p);
    CHECK(solves_imvvlip(Vector{0.5}, t).holds);
    const auto v = solves_imvvlip(Vector{-0.5}, t);
    CHECK_FALSE(v.holds);
    CHECK(v.witness->upsilon[0] > -0.5);
    CHECK(v.witness->upsilon[0] <= 0.0);
    CHECK(v.witness->selections.size() == 4);
    CHECK(v.witness->values.size() == 4);
    // Off-grid candidates are evaluated directly.
    CHECK(is_lu_efficient(Vector{0.3}, t).holds);
    CHECK(solves_isvvlip(Vector{0.3}, t).holds);
}

TEST_CASE("nonzero blocking rule rejects the zero vector only") {
    const IvopProblem p = problem(R"({"dimension": 1, "domain": {"lo": [-1], "hi": [1]},
                                      "objectives": [{"lower": "x1^2", "upper": "x1^2"}]})");
    const ProblemTables t(p);
    CheckOptions nonzero;
    nonzero.rule = BlockingRule::Nonzero;
    // At -h the only grid point in between is the stationary point 0.
    const double h = 2.0 / 64;
    CHECK_FALSE(solves_imvvlip(Vector{-h}, t).holds);
    CHECK(solves_imvvlip(Vector{-h}, t, nonzero).holds);
    CHECK(solves_imvvlip(Vector{0.0}, t).holds);
    CHECK(solves_imvvlip(Vector{0.0}, t, nonzero).holds);
}

TEST_CASE("checkers agree with the definition-level oracle") {
    const char* small[] = {
        R"j({"dimension": 1, "domain": {"lo": [-1], "hi": [3]}, "grid": {"points_per_axis": 17},
            "objectives": [{"lower": "abs(x1)", "upper": "abs(x1) + 1"}, {"lower": "abs(x1 - 1)", "upper": "abs(x1 - 1) + 1"}]})j",
        R"j({"dimension": 1, "domain": {"lo": [-1], "hi": [3]}, "grid": {"points_per_axis": 17},
            "objectives": [{"lower": "x1^2", "upper": "x1^2 + abs(x1 - 1)"}, {"lower": "max(x1 - 1, 2 - 2*x1)", "upper": "max(x1 - 1, 2 - 2*x1) + 1"}]})j",
        R"j({"dimension": 1, "domain": {"lo": [-1], "hi": [1]}, "grid": {"points_per_axis": 17},
            "objectives": [{"lower": "-x1^2", "upper": "-x1^2 + 1"}]})j",
        R"j({"dimension": 2, "domain": {"lo": [-1, -1], "hi": [3, 3]}, "grid": {"points_per_axis": 5},
            "objectives": [{"lower": "abs(x1) + abs(x2)", "upper": "abs(x1) + abs(x2) + 1"}, {"lower": "abs(x1 - 1) + x2^2", "upper": "abs(x1 - 1) + x2^2 + 1"}, {"lower": "max(x1, x2)", "upper": "max(x1, x2) + 2"}]})j",
        R"j({"dimension": 2, "domain": {"lo": [0, 0], "hi": [1, 1]}, "grid": {"points_per_axis": 5},
            "objectives": [{"lower": "x1 + x2", "upper": "x1 + x2 + 1"}, {"lower": "x1 - x2", "upper": "x1 - x2 + 2"}]})j",
    };
    for (const char* text : small) {
        const IvopProblem p = problem(text);
        const ProblemTables t(p);
        const Oracle oracle{p, Grid(p.domain, p.grid)};
        for (CheckerId id : all_checkers()) {
            const auto set = solution_set(t, id);
            std::vector<std::size_t> want;
            for (std::size_t k = 0; k < t.grid().size(); ++k) {
                if (oracle.holds(id, k)) want.push_back(k);
            }
            CAPTURE(to_string(id));
            CHECK(set == want);
        }
    }
}

TEST_CASE("implications, determinism and permutation invariance on the corpus") {
    for (const auto& path : corpus_files()) {
        CAPTURE(path.filename().string());
        const IvopProblem p = load_problem(path);
        const ProblemTables t(p);
        auto set_of = [&](CheckerId id) { return solution_set(t, id); };
        auto subset = [](const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
            return std::includes(b.begin(), b.end(), a.begin(), a.end());
        };
        CHECK(subset(set_of(CheckerId::Eff), set_of(CheckerId::WeakEff)));
        CHECK(subset(set_of(CheckerId::Minty), set_of(CheckerId::WeakMinty)));
        CHECK(subset(set_of(CheckerId::Stampacchia), set_of(CheckerId::WeakStampacchia)));

        // Repeated runs give identical verdicts and witnesses.
        for (std::size_t k = 0; k < t.grid().size(); k += 7) {
            const Vector w = t.grid().point(k);
            for (CheckerId id : all_checkers()) {
                const auto a = check_point(id, w, t), b = check_point(id, w, t);
                CHECK(a.holds == b.holds);
                if (a.witness) CHECK(a.witness->describe() == b.witness->describe());
            }
        }

        // Reversing the objectives leaves every solution set unchanged.
        IvopProblem r = p;
        std::reverse(r.objectives.begin(), r.objectives.end());
        const ProblemTables tr(r);
        for (CheckerId id : all_checkers()) CHECK(solution_set(tr, id) == set_of(id));
    }
}
