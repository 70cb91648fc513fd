#include "ivvi/harness.hpp"

#include <algorithm>
#include <iterator>

#include <json.hpp>

#include "ivvi/error.hpp"
#include "ivvi/format.hpp"

namespace ivvi {

const char* to_string(HypothesisStatus s) noexcept {
    switch (s) {
        case HypothesisStatus::ConvexityVerified: return "convexity-verified";
        case HypothesisStatus::StrictConvexityVerified: return "strict-convexity-verified";
        case HypothesisStatus::Violated: return "violated";
        case HypothesisStatus::NotRequired: return "not-required";
    }
    return "?";
}

const char* to_string(Outcome o) noexcept {
    switch (o) {
        case Outcome::Pass: return "pass";
        case Outcome::Fail: return "fail";
        case Outcome::NotApplicable: return "not-applicable";
    }
    return "?";
}

InstanceRun::InstanceRun(const IvopProblem& problem, const HarnessOptions& opts)
    : opts_(opts), tables_(problem, opts.grid.value_or(problem.grid), opts.check.tie_tol) {
    convex_ = check_all(Property::Convex);
    strict_ = check_all(Property::StrictlyConvex);
    for (CheckerId id : all_checkers()) solutions_.push_back(solution_set(tables_, id, opts_.check));
}

const std::vector<std::size_t>& InstanceRun::solutions(CheckerId id) const {
    return solutions_[static_cast<std::size_t>(id)];
}

PropertyReport InstanceRun::check_all(Property what) const {
    for (std::size_t j = 0; j < tables_.function_count(); ++j) {
        auto rep = check_property(what, tables_.function(j), tables_.grid(), opts_.check.tol);
        if (!rep.holds) {
            rep.witness->objective = j / 2;
            rep.witness->endpoint = j % 2 == 0 ? Endpoint::Lower : Endpoint::Upper;
            return rep;
        }
    }
    return {};
}

namespace {

void add_difference(TheoremReport& r, const Grid& grid, const std::vector<std::size_t>& a,
                    const std::vector<std::size_t>& b, CheckerId in, CheckerId out) {
    std::vector<std::size_t> diff;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(diff));
    for (std::size_t k : diff) {
        r.witnesses.push_back({grid.point(k), std::string("solves ") + to_string(in) + " but not " + to_string(out)});
    }
}

}  // namespace

TheoremReport InstanceRun::set_relation(const char* theorem, CheckerId lhs, CheckerId rhs, bool inclusion_only,
                                        bool strict) const {
    TheoremReport r;
    r.theorem = theorem;
    r.relation = std::string(to_string(lhs)) + (inclusion_only ? " subset-of " : " == ") + to_string(rhs);
    const PropertyReport& hyp = strict ? strict_ : convex_;
    if (!hyp.holds) {
        r.hypothesis_status = HypothesisStatus::Violated;
        if (opts_.enforce_hypotheses) {
            r.outcome = Outcome::NotApplicable;
            r.witnesses.push_back({hyp.witness->omega, hyp.witness->describe()});
            return r;
        }
    } else {
        r.hypothesis_status =
            strict ? HypothesisStatus::StrictConvexityVerified : HypothesisStatus::ConvexityVerified;
    }
    const auto& a = solutions(lhs);
    const auto& b = solutions(rhs);
    add_difference(r, tables_.grid(), a, b, lhs, rhs);
    if (!inclusion_only) add_difference(r, tables_.grid(), b, a, rhs, lhs);
    r.outcome = r.witnesses.empty() ? Outcome::Pass : Outcome::Fail;
    return r;
}

TheoremReport InstanceRun::verify_t37() const {
    TheoremReport r;
    r.theorem = "3.7";
    r.hypothesis_status = HypothesisStatus::NotRequired;
    r.relation = "convex <=> monotone, strictly convex <=> strictly monotone";
    const Grid& grid = tables_.grid();
    const double tol = opts_.check.tol;
    for (std::size_t j = 0; j < tables_.function_count(); ++j) {
        const auto& f = tables_.function(j);
        const PropertyReport checks[4] = {
            check_property(Property::Convex, f, grid, tol), check_property(Property::Monotone, f, grid, tol),
            check_property(Property::StrictlyConvex, f, grid, tol),
            check_property(Property::StrictlyMonotone, f, grid, tol)};
        const char* names[4] = {"convex", "monotone", "strictly convex", "strictly monotone"};
        for (int pair = 0; pair < 2; ++pair) {
            const auto& x = checks[2 * pair];
            const auto& y = checks[2 * pair + 1];
            if (x.holds == y.holds) continue;
            const auto& failed = x.holds ? y : x;
            std::string detail = "objective " + std::to_string(j / 2 + 1) + (j % 2 == 0 ? " lower: " : " upper: ") +
                                 names[2 * pair] + "=" + (x.holds ? "yes" : "no") + ", " + names[2 * pair + 1] +
                                 "=" + (y.holds ? "yes" : "no") + "; " + failed.witness->describe();
            r.witnesses.push_back({failed.witness->omega, std::move(detail)});
        }
    }
    r.outcome = r.witnesses.empty() ? Outcome::Pass : Outcome::Fail;
    return r;
}

TheoremReport InstanceRun::verify_t41() const {
    return set_relation("4.1", CheckerId::Eff, CheckerId::Minty, false, false);
}
TheoremReport InstanceRun::verify_t42() const {
    return set_relation("4.2", CheckerId::Stampacchia, CheckerId::Minty, true, false);
}
TheoremReport InstanceRun::verify_t43() const {
    return set_relation("4.3", CheckerId::WeakEff, CheckerId::WeakStampacchia, false, false);
}
TheoremReport InstanceRun::verify_t44() const {
    return set_relation("4.4", CheckerId::WeakMinty, CheckerId::WeakStampacchia, false, false);
}
TheoremReport InstanceRun::verify_t45() const {
    return set_relation("4.5", CheckerId::Eff, CheckerId::WeakEff, false, true);
}

std::vector<TheoremReport> InstanceRun::verify_all() const {
    return {verify_t37(), verify_t41(), verify_t42(), verify_t43(), verify_t44(), verify_t45()};
}

TheoremReport verify_t37(const IvopProblem& p, const HarnessOptions& o) { return InstanceRun(p, o).verify_t37(); }
TheoremReport verify_t41(const IvopProblem& p, const HarnessOptions& o) { return InstanceRun(p, o).verify_t41(); }
TheoremReport verify_t42(const IvopProblem& p, const HarnessOptions& o) { return InstanceRun(p, o).verify_t42(); }
TheoremReport verify_t43(const IvopProblem& p, const HarnessOptions& o) { return InstanceRun(p, o).verify_t43(); }
TheoremReport verify_t44(const IvopProblem& p, const HarnessOptions& o) { return InstanceRun(p, o).verify_t44(); }
TheoremReport verify_t45(const IvopProblem& p, const HarnessOptions& o) { return InstanceRun(p, o).verify_t45(); }

CorpusReport run_corpus(const std::filesystem::path& dir, const HarnessOptions& opts) {
    namespace fs = std::filesystem;
    CorpusReport report;
    std::error_code ec;
    if (!fs::is_directory(dir, ec)) throw SchemaError("corpus directory not found: " + dir.string());
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());

    for (const auto& path : files) {
        InstanceReport inst;
        inst.name = path.filename().string();
        try {
            const IvopProblem problem = load_problem(path);
            inst.theorems = InstanceRun(problem, opts).verify_all();
        } catch (const Error& e) {
            inst.error = e.what();
        }
        if (!inst.error.empty()) ++report.errors;
        for (const auto& t : inst.theorems) {
            switch (t.outcome) {
                case Outcome::Pass: ++report.pass; break;
                case Outcome::Fail: ++report.fail; break;
                case Outcome::NotApplicable: ++report.not_applicable; break;
            }
        }
        report.instances.push_back(std::move(inst));
    }
    return report;
}

std::string report_json(const CorpusReport& r) {
    using json = nlohmann::ordered_json;
    json doc;
    doc["instances"] = json::array();
    for (const auto& inst : r.instances) {
        json ji;
        ji["instance"] = inst.name;
        if (!inst.error.empty()) ji["error"] = inst.error;
        ji["theorems"] = json::array();
        for (const auto& t : inst.theorems) {
            json jt;
            jt["theorem"] = t.theorem;
            jt["hypothesis_status"] = to_string(t.hypothesis_status);
            jt["relation"] = t.relation;
            jt["outcome"] = to_string(t.outcome);
            jt["witnesses"] = json::array();
            for (const auto& w : t.witnesses) jt["witnesses"].push_back({{"point", w.point}, {"detail", w.detail}});
            ji["theorems"].push_back(std::move(jt));
        }
        doc["instances"].push_back(std::move(ji));
    }
    doc["summary"] = {{"pass", r.pass}, {"fail", r.fail}, {"not_applicable", r.not_applicable}, {"errors", r.errors}};
    return doc.dump(2) + "\n";
}

std::string report_csv(const CorpusReport& r) {
    std::string out = "instance,theorem,outcome\n";
    for (const auto& inst : r.instances) {
        if (!inst.error.empty()) out += inst.name + ",load,error\n";
        for (const auto& t : inst.theorems) out += inst.name + "," + t.theorem + "," + to_string(t.outcome) + "\n";
    }
    return out;
}

}  // namespace ivvi
