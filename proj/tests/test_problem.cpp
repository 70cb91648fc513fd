#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <set>

#include "ivvi/error.hpp"
#include "ivvi/problem.hpp"

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

IntervalFunction interval_function(const char* lo, const char* hi, std::size_t n = 1) {
    return {parse_expr(lo, n), parse_expr(hi, n)};
}

}  // namespace

TEST_CASE("loading the canonical nonsmooth instance") {
    const IvopProblem p = load_problem(kFixtures / "canonical_nonsmooth.json");
    CHECK(p.dimension == 1);
    CHECK(p.objectives.size() == 2);
    CHECK(p.grid.points_per_axis == 65);
    const IntervalVector g = evaluate_objectives(p, Vector{0.0});
    CHECK(g[0] == Interval(0, 1));
    CHECK(g[1] == Interval(1, 2));
}

TEST_CASE("loading the smooth instance") {
    const IvopProblem p = load_problem(kFixtures / "smooth_pair.json");
    const IntervalVector g = evaluate_objectives(p, Vector{1.0});
    CHECK(g[0] == Interval(1, 2));
    CHECK(g[1] == Interval(0, 2));
    CHECK_THROWS_AS(evaluate_objectives(p, Vector{2.5}), OutOfDomainError);
}

TEST_CASE("bound order is validated on the grid") {
    try {
        load_problem(kFixtures / "bad_order.json");
        FAIL("loaded");
    } catch (const BoundOrderError& e) {
        CHECK(std::string(e.what()).find("(0.03125)") != std::string::npos);
    }
    CHECK_THROWS_AS(load_problem(kFixtures / "bad_expr.json"), ParseError);
}

TEST_CASE("schema errors") {
    CHECK_THROWS_AS(parse_problem("not json"), SchemaError);
    CHECK_THROWS_AS(parse_problem("[]"), SchemaError);
    CHECK_THROWS_AS(parse_problem(R"({"domain": {"lo": [0], "hi": [1]}, "objectives": [{"lower": "x1", "upper": "x1"}]})"),
                    SchemaError);
    CHECK_THROWS_AS(parse_problem(R"({"dimension": 0, "domain": {"lo": [], "hi": []}, "objectives": []})"),
                    SchemaError);
    CHECK_THROWS_AS(parse_problem(R"({"dimension": 2, "domain": {"lo": [0], "hi": [1]},
                                      "objectives": [{"lower": "x1", "upper": "x1"}]})"),
                    SchemaError);
    CHECK_THROWS_AS(parse_problem(R"({"dimension": 1, "domain": {"lo": [2], "hi": [1]},
                                      "objectives": [{"lower": "x1", "upper": "x1"}]})"),
                    SchemaError);
    CHECK_THROWS_AS(parse_problem(R"({"dimension": 1, "domain": {"lo": [0], "hi": [1]}, "objectives": []})"),
                    SchemaError);
    CHECK_THROWS_AS(parse_problem(R"({"Dimension": 1, "dimension": 1, "domain": {"lo": [0], "hi": [1]},
                                      "objectives": [{"lower": "x1", "upper": "x1"}]})"),
                    SchemaError);
    CHECK_THROWS_AS(parse_problem(R"({"dimension": 1, "domain": {"lo": [0], "hi": [1]},
                                      "objectives": [{"lower": "x1", "upper": 3}]})"),
                    SchemaError);
    CHECK_THROWS_AS(parse_problem(R"({"dimension": 1, "domain": {"lo": [0], "hi": [1]},
                                      "objectives": [{"lower": "x1", "upper": "x1"}], "grid": {"points_per_axis": 1}})"),
                    SchemaError);
    CHECK_THROWS_AS(parse_problem(R"({"dimension": 1, "domain": {"lo": [0], "hi": [1]},
                                      "objectives": [{"lower": "x2", "upper": "x1"}]})"),
                    UnknownVariableError);
    CHECK_THROWS_AS(load_problem(kFixtures / "missing.json"), SchemaError);
}

TEST_CASE("grid points") {
    const auto g1 = grid_points(BoxDomain({0.0}, {1.0}), GridSpec{3});
    CHECK(g1 == std::vector<Vector>{{0.0}, {0.5}, {1.0}});

    const auto g2 = grid_points(BoxDomain({0.0, 0.0}, {1.0, 1.0}), GridSpec{3});
    REQUIRE(g2.size() == 9);
    CHECK(g2[0] == Vector{0.0, 0.0});
    CHECK(g2[1] == Vector{0.0, 0.5});
    CHECK(g2[3] == Vector{0.5, 0.0});
    CHECK(g2[8] == Vector{1.0, 1.0});
    CHECK(std::is_sorted(g2.begin(), g2.end()));

    const auto g3 = grid_points(BoxDomain({-1.0, 0.1}, {2.0, 0.7}), GridSpec{7});
    CHECK(std::set<Vector>(g3.begin(), g3.end()).size() == g3.size());
    CHECK(g3.front() == Vector{-1.0, 0.1});
    CHECK(g3.back() == Vector{2.0, 0.7});
    CHECK(std::is_sorted(g3.begin(), g3.end()));
    CHECK(grid_points(BoxDomain({-1.0, 0.1}, {2.0, 0.7}), GridSpec{7}) == g3);

    CHECK_THROWS_AS(grid_points(BoxDomain({0, 0, 0}, {1, 1, 1}), GridSpec{30}), GridCapError);
    CHECK(grid_points(BoxDomain({0, 0}, {1, 1}), GridSpec{100}).size() == 10000);
    // A flat axis contributes a single coordinate.
    CHECK(grid_points(BoxDomain({0, 5}, {1, 5}), GridSpec{4}).size() == 4);
}

TEST_CASE("default grids") {
    CHECK(GridSpec::default_for(1).points_per_axis == 65);
    CHECK(GridSpec::default_for(2).points_per_axis == 33);
    CHECK(GridSpec::default_for(3).points_per_axis == 21);
    CHECK(GridSpec::default_for(4).points_per_axis == 10);
}

TEST_CASE("grid lookup") {
    const Grid g(BoxDomain({-1.0, 0.0}, {3.0, 1.0}), GridSpec{5});
    for (std::size_t k = 0; k < g.size(); ++k) CHECK(g.find(g.point(k)) == k);
    CHECK_FALSE(g.find(Vector{0.1, 0.0}).has_value());
}

TEST_CASE("serialization round-trips") {
    for (const auto& path : corpus_files()) {
        const IvopProblem p = load_problem(path);
        const IvopProblem q = parse_problem(serialize_problem(p));
        CHECK(q.dimension == p.dimension);
        CHECK(q.domain.lo() == p.domain.lo());
        CHECK(q.domain.hi() == p.domain.hi());
        CHECK(q.grid.points_per_axis == p.grid.points_per_axis);
        REQUIRE(q.objectives.size() == p.objectives.size());
        for (std::size_t i = 0; i < p.objectives.size(); ++i) {
            CHECK(q.objectives[i].lower == p.objectives[i].lower);
            CHECK(q.objectives[i].upper == p.objectives[i].upper);
        }
        CHECK(serialize_problem(q) == serialize_problem(p));
    }
}

TEST_CASE("lipschitz estimates") {
    const BoxDomain d({-1.0}, {1.0});
    const auto e = estimate_lipschitz(interval_function("abs(x1)", "abs(x1) + 1"), d, GridSpec{65});
    CHECK(e.hausdorff == doctest::Approx(1.0));
    CHECK(estimate_lipschitz(interval_function("0", "1"), d, GridSpec{65}).hausdorff == 0.0);

    for (const auto& path : corpus_files()) {
        const IvopProblem p = load_problem(path);
        for (const auto& g : p.objectives) {
            const auto est = estimate_lipschitz(g, p.domain, p.grid);
            CHECK(std::isfinite(est.hausdorff));
            CHECK(std::isfinite(est.lower));
            CHECK(std::isfinite(est.upper));
            CHECK(std::max(est.lower, est.upper) >= est.hausdorff - 1e-12);
        }
    }
}

TEST_CASE("corpus invariants") {
    const auto files = corpus_files();
    CHECK(files.size() == 10);
    std::set<std::size_t> dims, ps;
    for (const auto& path : files) {
        const IvopProblem p = load_problem(path);
        dims.insert(p.dimension);
        ps.insert(p.objectives.size());
        const Grid grid(p.domain, p.grid);
        for (std::size_t k = 0; k < grid.size(); ++k) {
            const IntervalVector g = evaluate_objectives(p, grid.point(k));
            for (const auto& x : g) CHECK(x.lo() <= x.hi());
        }
    }
    CHECK(dims == std::set<std::size_t>{1, 2});
    CHECK(ps == std::set<std::size_t>{1, 2, 3});
}
