#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ivvi/cli.hpp"

using namespace ivvi;

namespace fs = std::filesystem;

namespace {

const std::string kFixtures = IVVI_FIXTURE_DIR;
const std::string kCorpus = IVVI_CORPUS_DIR;

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

}  // namespace

TEST_CASE("eval") {
    const Run r = cli({"eval", "--problem", kFixtures + "/canonical_nonsmooth.json", "--point", "0"});
    CHECK(r.code == 0);
    CHECK(r.out == "G1(0) = [0, 1]\nG2(0) = [1, 2]\n");
    CHECK(cli({"eval", "--problem", kFixtures + "/canonical_nonsmooth.json", "--point", "bad"}).code == 2);
    CHECK(cli({"eval", "--problem", kFixtures + "/canonical_nonsmooth.json", "--point", "0,1"}).code == 2);
    CHECK(cli({"eval", "--problem", kFixtures + "/canonical_nonsmooth.json", "--point", "5"}).code == 2);
    CHECK(cli({"eval", "--problem", kFixtures + "/missing.json", "--point", "0"}).code == 2);
    CHECK(cli({"eval", "--problem", kFixtures + "/bad_order.json", "--point", "0"}).code == 2);
}

TEST_CASE("usage errors") {
    CHECK(cli({}).code == 2);
    CHECK(cli({"frobnicate"}).code == 2);
    CHECK(cli({"eval", "--bogus"}).code == 2);
    CHECK(cli({"eval", "--point", "0"}).code == 2);
    CHECK(cli({"check-point", "--problem", kFixtures + "/smooth_pair.json", "--point", "0", "--checker", "nope"})
              .code == 2);
    CHECK(cli({"scan", "--problem", kFixtures + "/smooth_pair.json", "--checker", "eff", "--grid", "1"}).code == 2);
    CHECK(cli({"verify"}).code == 2);
    const Run help = cli({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("verify") != std::string::npos);
}

TEST_CASE("convexificator command") {
    const Run r = cli({"convexificator", "--problem", kFixtures + "/canonical_nonsmooth.json", "--point", "0"});
    CHECK(r.code == 0);
    CHECK(r.out.find("objective 1 lower: {(-1), (1)} upper=ok lower=ok") != std::string::npos);
}

TEST_CASE("check-point exit codes follow the verdict") {
    const std::string p = kFixtures + "/canonical_nonsmooth.json";
    const Run ok = cli({"check-point", "--problem", p, "--point", "0.5", "--checker", "minty"});
    CHECK(ok.code == 0);
    CHECK(ok.out == "minty at (0.5): holds\n");
    const Run bad = cli({"check-point", "--problem", p, "--point", "-0.5", "--checker", "minty"});
    CHECK(bad.code == 1);
    CHECK(bad.out.find("witness: v=") != std::string::npos);
}

TEST_CASE("scan writes the solution set") {
    const fs::path out = fs::temp_directory_path() / "ivvi_cli_scan.json";
    const Run r = cli({"scan", "--problem", kCorpus + "/03_identity.json", "--checker", "eff", "--grid", "5", "--out",
                       out.string()});
    CHECK(r.code == 0);
    CHECK(r.out == "eff: 1 of 5 grid points\n(0)\n");
    CHECK(slurp(out).find("\"solutions\"") != std::string::npos);
}

TEST_CASE("verify exit codes and deterministic reports") {
    const fs::path dir = fs::temp_directory_path() / "ivvi_cli_verify";
    fs::remove_all(dir);
    fs::create_directories(dir);
    for (const char* name : {"02_abs_pair.json", "09_concave.json"}) fs::copy_file(kCorpus + "/" + name, dir / name);
    const fs::path reports = fs::temp_directory_path() / "ivvi_cli_reports";
    fs::create_directories(reports);
    const std::string json = (reports / "report.json").string(), csv = (reports / "report.csv").string();
    const Run a = cli({"verify", "--corpus", dir.string(), "--out", json, "--csv", csv});
    CHECK(a.code == 0);
    const std::string first = slurp(json);
    const Run b = cli({"verify", "--corpus", dir.string(), "--out", json, "--csv", csv});
    CHECK(a.out == b.out);
    CHECK(slurp(json) == first);
    CHECK(slurp(csv).find("02_abs_pair.json,4.1,pass") != std::string::npos);

    // A theorem failure maps to exit 1: 4.3 breaks when the kink is off the grid.
    const Run c = cli({"verify", "--problem", kFixtures + "/canonical_nonsmooth.json"});
    CHECK(c.code == 1);
    CHECK(c.out.find("4.3=fail") != std::string::npos);
    CHECK(cli({"verify", "--corpus", (dir / "missing").string()}).code == 2);
}
