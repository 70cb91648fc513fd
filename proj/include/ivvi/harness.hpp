#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ivvi/checkers.hpp"
#include "ivvi/problem.hpp"

namespace ivvi {

enum class HypothesisStatus { ConvexityVerified, StrictConvexityVerified, Violated, NotRequired };
enum class Outcome { Pass, Fail, NotApplicable };

const char* to_string(HypothesisStatus s) noexcept;
const char* to_string(Outcome o) noexcept;

struct ReportWitness {
    Vector point;
    std::string detail;
};

struct TheoremReport {
    std::string theorem;   // "3.7", "4.1" .. "4.5"
    HypothesisStatus hypothesis_status = HypothesisStatus::NotRequired;
    std::string relation;  // e.g. "eff == minty"
    Outcome outcome = Outcome::Pass;
    std::vector<ReportWitness> witnesses;
};

struct HarnessOptions {
    CheckOptions check;
    /// Grid used for every instance; nullopt keeps each problem's own grid.
    std::optional<GridSpec> grid;
    /// Test-only: evaluate the set relations even when the hypothesis fails.
    bool enforce_hypotheses = true;
};

/// One instance with everything the theorem checks share.
class InstanceRun {
public:
    InstanceRun(const IvopProblem& problem, const HarnessOptions& opts = {});

    const ProblemTables& tables() const noexcept { return tables_; }
    const std::vector<std::size_t>& solutions(CheckerId id) const;
    /// Convexity of every endpoint function; the witness names the first failure.
    const PropertyReport& convexity() const noexcept { return convex_; }
    const PropertyReport& strict_convexity() const noexcept { return strict_; }

    TheoremReport verify_t37() const;
    TheoremReport verify_t41() const;
    TheoremReport verify_t42() const;
    TheoremReport verify_t43() const;
    TheoremReport verify_t44() const;
    TheoremReport verify_t45() const;
    /// 3.7 then 4.1 .. 4.5.
    std::vector<TheoremReport> verify_all() const;

private:
    TheoremReport set_relation(const char* theorem, CheckerId lhs, CheckerId rhs, bool inclusion_only,
                               bool strict) const;
    PropertyReport check_all(Property what) const;

    HarnessOptions opts_;
    ProblemTables tables_;
    PropertyReport convex_;
    PropertyReport strict_;
    std::vector<std::vector<std::size_t>> solutions_;
};

TheoremReport verify_t37(const IvopProblem& p, const HarnessOptions& o = {});
TheoremReport verify_t41(const IvopProblem& p, const HarnessOptions& o = {});
TheoremReport verify_t42(const IvopProblem& p, const HarnessOptions& o = {});
TheoremReport verify_t43(const IvopProblem& p, const HarnessOptions& o = {});
TheoremReport verify_t44(const IvopProblem& p, const HarnessOptions& o = {});
TheoremReport verify_t45(const IvopProblem& p, const HarnessOptions& o = {});

struct InstanceReport {
    std::string name;   // file name
    std::string error;  // load failure, empty when the instance ran
    std::vector<TheoremReport> theorems;
};

struct CorpusReport {
    std::vector<InstanceReport> instances;
    std::size_t pass = 0;
    std::size_t fail = 0;
    std::size_t not_applicable = 0;
    std::size_t errors = 0;

    bool all_pass() const noexcept { return fail == 0 && errors == 0; }
};

/// Runs every *.json file in `dir` (sorted by name). Files that fail to load
/// are recorded and skipped.
CorpusReport run_corpus(const std::filesystem::path& dir, const HarnessOptions& opts = {});

std::string report_json(const CorpusReport& r);
/// "instance,theorem,outcome" rows.
std::string report_csv(const CorpusReport& r);

}  // namespace ivvi
