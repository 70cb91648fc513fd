#include "ivvi/cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ivvi/checkers.hpp"
#include "ivvi/convexificator.hpp"
#include "ivvi/error.hpp"
#include "ivvi/format.hpp"
#include "ivvi/harness.hpp"
#include "ivvi/problem.hpp"

namespace ivvi {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

class UsageError : public Error {
public:
    using Error::Error;
};

struct Config {
    std::string problem;
    std::string point;
    std::string checker;
    std::string corpus;
    std::string out;
    std::string csv;
    std::size_t grid = 0;
    double tol_alg = kDefaultTolAlg;
    double tol_dini = kDefaultTolDini;
};

Vector parse_point(const std::string& text) {
    Vector p;
    std::size_t pos = 0;
    while (true) {
        const std::size_t comma = text.find(',', pos);
        std::string_view item(text.data() + pos, (comma == std::string::npos ? text.size() : comma) - pos);
        while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
        while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
        double v = 0.0;
        const char* first = item.data();
        if (!item.empty() && item.front() == '+') ++first;
        const auto res = std::from_chars(first, item.data() + item.size(), v);
        if (item.empty() || res.ec != std::errc() || res.ptr != item.data() + item.size() || !std::isfinite(v)) {
            throw UsageError("cannot parse point '" + text + "': expected comma-separated reals");
        }
        p.push_back(v);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return p;
}

IvopProblem load(const Config& c) {
    if (c.problem.empty()) throw UsageError("--problem is required");
    return load_problem(c.problem);
}

GridSpec grid_of(const Config& c, const IvopProblem& p) {
    return c.grid ? GridSpec{c.grid} : p.grid;
}

Vector point_of(const Config& c, const IvopProblem& p) {
    if (c.point.empty()) throw UsageError("--point is required");
    Vector w = parse_point(c.point);
    if (w.size() != p.dimension) {
        throw UsageError("point has " + std::to_string(w.size()) + " coordinates, problem dimension is " +
                         std::to_string(p.dimension));
    }
    return w;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot write " + path);
    f << text;
}

std::string interval_text(const Interval& x) {
    return "[" + format_real(x.lo()) + ", " + format_real(x.hi()) + "]";
}

int cmd_eval(const Config& c, std::ostream& out) {
    const IvopProblem p = load(c);
    const Vector w = point_of(c, p);
    const IntervalVector g = evaluate_objectives(p, w);
    for (std::size_t i = 0; i < g.size(); ++i) {
        out << "G" << i + 1 << format_point(w) << " = " << interval_text(g[i]) << "\n";
    }
    return kExitOk;
}

int cmd_convexificator(const Config& c, std::ostream& out) {
    const IvopProblem p = load(c);
    const Vector w = point_of(c, p);
    if (!p.domain.contains(w)) throw OutOfDomainError("point " + format_point(w) + " lies outside the domain");
    // Coordinate directions and their negatives.
    std::vector<Vector> dirs;
    for (std::size_t d = 0; d < p.dimension; ++d) {
        for (double s : {1.0, -1.0}) {
            Vector e(p.dimension, 0.0);
            e[d] = s;
            dirs.push_back(e);
        }
    }
    bool ok = true;
    for (std::size_t i = 0; i < p.objectives.size(); ++i) {
        for (Endpoint e : {Endpoint::Lower, Endpoint::Upper}) {
            const Expr& f = e == Endpoint::Lower ? p.objectives[i].lower : p.objectives[i].upper;
            const Convexificator cx = build_convexificator(f, w);
            const ConvexificatorReport rep = validate_convexificator(cx, f, dirs, c.tol_dini);
            out << "objective " << i + 1 << " " << to_string(e) << ": {";
            for (std::size_t k = 0; k < cx.vectors.size(); ++k) out << (k ? ", " : "") << format_point(cx.vectors[k]);
            out << "} upper=" << (rep.upper_ok ? "ok" : "fail") << " lower=" << (rep.lower_ok ? "ok" : "fail")
                << "\n";
            ok = ok && rep.upper_ok && rep.lower_ok;
        }
    }
    return ok ? kExitOk : kExitFailed;
}

CheckOptions check_options(const Config& c) {
    CheckOptions o;
    o.tol = c.tol_alg;
    return o;
}

int cmd_check_point(const Config& c, std::ostream& out) {
    const IvopProblem p = load(c);
    const Vector w = point_of(c, p);
    if (c.checker.empty()) throw UsageError("--checker is required");
    const CheckerId id = parse_checker_id(c.checker);
    const ProblemTables tables(p, grid_of(c, p));
    const CheckVerdict v = check_point(id, w, tables, check_options(c));
    out << to_string(id) << " at " << format_point(w) << ": " << (v.holds ? "holds" : "fails") << "\n";
    if (v.witness) out << "witness: " << v.witness->describe() << "\n";
    return v.holds ? kExitOk : kExitFailed;
}

int cmd_scan(const Config& c, std::ostream& out) {
    const IvopProblem p = load(c);
    if (c.checker.empty()) throw UsageError("--checker is required");
    const CheckerId id = parse_checker_id(c.checker);
    const ProblemTables tables(p, grid_of(c, p));
    const auto set = solution_set(tables, id, check_options(c));
    out << to_string(id) << ": " << set.size() << " of " << tables.grid().size() << " grid points\n";
    nlohmann::ordered_json doc;
    doc["checker"] = to_string(id);
    doc["grid_points"] = tables.grid().size();
    doc["solutions"] = nlohmann::ordered_json::array();
    for (std::size_t k : set) {
        const Vector pt = tables.grid().point(k);
        out << format_point(pt) << "\n";
        doc["solutions"].push_back(pt);
    }
    if (!c.out.empty()) write_file(c.out, doc.dump(2) + "\n");
    return kExitOk;
}

int cmd_verify(const Config& c, std::ostream& out) {
    HarnessOptions opts;
    opts.check.tol = c.tol_alg;
    if (c.grid) opts.grid = GridSpec{c.grid};
    CorpusReport report;
    if (!c.corpus.empty()) {
        report = run_corpus(c.corpus, opts);
    } else if (!c.problem.empty()) {
        InstanceReport inst;
        inst.name = std::filesystem::path(c.problem).filename().string();
        inst.theorems = InstanceRun(load_problem(c.problem), opts).verify_all();
        for (const auto& t : inst.theorems) {
            if (t.outcome == Outcome::Pass) ++report.pass;
            if (t.outcome == Outcome::Fail) ++report.fail;
            if (t.outcome == Outcome::NotApplicable) ++report.not_applicable;
        }
        report.instances.push_back(std::move(inst));
    } else {
        throw UsageError("verify needs --corpus or --problem");
    }
    for (const auto& inst : report.instances) {
        if (!inst.error.empty()) {
            out << inst.name << ": error: " << inst.error << "\n";
            continue;
        }
        out << inst.name << ":";
        for (const auto& t : inst.theorems) out << " " << t.theorem << "=" << to_string(t.outcome);
        out << "\n";
    }
    out << "pass " << report.pass << ", fail " << report.fail << ", not-applicable " << report.not_applicable
        << ", errors " << report.errors << "\n";
    if (!c.out.empty()) write_file(c.out, report_json(report));
    if (!c.csv.empty()) write_file(c.csv, report_csv(report));
    return report.all_pass() ? kExitOk : kExitFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Interval-valued vector optimization and variational inequality checks", "ivvi"};
    app.require_subcommand(1);
    Config c;

    auto add_problem = [&](CLI::App* s) { s->add_option("--problem", c.problem, "Problem file (JSON)"); };
    auto add_point = [&](CLI::App* s) { s->add_option("--point", c.point, "Comma-separated coordinates"); };
    auto add_grid = [&](CLI::App* s) {
        s->add_option("--grid", c.grid, "Grid points per axis")->check(CLI::Range(2, 100000));
        s->add_option("--tol-alg", c.tol_alg, "Tolerance of algebraic inequalities")->check(CLI::NonNegativeNumber);
    };

    auto* eval_cmd = app.add_subcommand("eval", "Evaluate the interval objectives at a point");
    add_problem(eval_cmd);
    add_point(eval_cmd);

    auto* cx_cmd = app.add_subcommand("convexificator", "Print and validate convexificators at a point");
    add_problem(cx_cmd);
    add_point(cx_cmd);
    cx_cmd->add_option("--tol-dini", c.tol_dini, "Tolerance of Dini-based inequalities")
        ->check(CLI::NonNegativeNumber);

    auto* check_cmd = app.add_subcommand("check-point", "Decide one solution concept at a point");
    add_problem(check_cmd);
    add_point(check_cmd);
    check_cmd->add_option("--checker", c.checker, "eff|weak-eff|minty|stampacchia|weak-minty|weak-stampacchia");
    add_grid(check_cmd);

    auto* scan_cmd = app.add_subcommand("scan", "List the grid points solving one concept");
    add_problem(scan_cmd);
    scan_cmd->add_option("--checker", c.checker, "Checker id");
    scan_cmd->add_option("--out", c.out, "Write the solution set as JSON");
    add_grid(scan_cmd);

    auto* verify_cmd = app.add_subcommand("verify", "Check the solution-set theorems on a corpus");
    verify_cmd->add_option("--corpus", c.corpus, "Directory of problem files");
    add_problem(verify_cmd);
    verify_cmd->add_option("--out", c.out, "Write the JSON report");
    verify_cmd->add_option("--csv", c.csv, "Write the CSV summary");
    add_grid(verify_cmd);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "ivvi: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (eval_cmd->parsed()) return cmd_eval(c, out);
        if (cx_cmd->parsed()) return cmd_convexificator(c, out);
        if (check_cmd->parsed()) return cmd_check_point(c, out);
        if (scan_cmd->parsed()) return cmd_scan(c, out);
        if (verify_cmd->parsed()) return cmd_verify(c, out);
    } catch (const Error& e) {
        err << "ivvi: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace ivvi
