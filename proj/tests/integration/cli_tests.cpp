// Runs the installed binary end to end and checks exit codes and artifacts.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const std::string kBin = CHEBVAR_BIN;
const std::string kFixtures = FIXTURE_DIR;

int run(const std::string& args, const std::string& log = "cli.log") {
    const std::string cmd = kBin + " " + args + " > " + log + " 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::current_path() / "cli_scratch" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("variance on the trivial fixture") {
    const fs::path out = scratch("variance");
    REQUIRE(run("variance --config " + kFixtures + "/trivial.cfg --out " + out.string()) == 0);
    const std::string csv = slurp(out / "variance.csv");
    CHECK(csv.rfind("x,Q,V,xQlogx,ratio\n10,3,66.8330", 0) == 0);
    const std::string manifest = slurp(out / "manifest.txt");
    CHECK(manifest.find("subcommand = variance") != std::string::npos);
    CHECK(manifest.find("artifact = variance.csv") != std::string::npos);
    CHECK(manifest.find("exit_status = 0") != std::string::npos);
    CHECK(manifest.find("[context]") != std::string::npos);
}

TEST_CASE("check, classify and theta succeed") {
    const fs::path out = scratch("misc");
    CHECK(run("check --config " + kFixtures + "/trivial.cfg --out " + out.string()) == 0);
    CHECK(slurp(out / "check.csv").find(",fail,") == std::string::npos);
    CHECK(run("classify --config " + kFixtures + "/a5.cfg --out " + out.string()) == 0);
    CHECK(fs::exists(out / "classify.csv"));
    CHECK(fs::exists(out / "frequencies.csv"));
    CHECK(run("theta --config " + kFixtures + "/trivial.cfg --out " + out.string()) == 0);
    CHECK(slurp(out / "theta.csv").find("3,2,2.30258509299404") != std::string::npos);
}

TEST_CASE("thm2 refuses a context with nontrivial abelian part") {
    const fs::path out = scratch("thm2");
    const fs::path log = out / "log.txt";
    CHECK(run("thm2 --config " + kFixtures + "/s3.cfg --out " + out.string(), log.string()) == 2);
    CHECK(slurp(log).find("m = 3") != std::string::npos);
    CHECK_FALSE(fs::exists(out / "thm2.csv"));
}

TEST_CASE("configuration errors exit 2") {
    const fs::path dir = scratch("badcfg");
    std::ofstream(dir / "bad.cfg") << "[context]\npolynomial = 0, 1\ngroup_order = 1\nclass = 1\n"
                                      "class_density = 1/1\nabelian_conductor = 1\nfrobnicate = 3\n[run]\nx = 10\n";
    const fs::path log = dir / "log.txt";
    CHECK(run("variance --config " + (dir / "bad.cfg").string() + " --out " + dir.string(), log.string()) == 2);
    CHECK(slurp(log).find("bad.cfg:7") != std::string::npos);
    CHECK(run("variance --config " + (dir / "missing.cfg").string()) == 2);
    CHECK(run("frobnicate --config x") == 2);
    CHECK(run("variance") == 2);
    CHECK(run("variance --config " + kFixtures + "/trivial.cfg --workers 0") == 2);
}

TEST_CASE("thm1 range violation exits 2") {
    const fs::path dir = scratch("thm1");
    std::ofstream(dir / "q.cfg") << "[context]\npolynomial = 0, 1\ngroup_order = 1\nclass = 1\n"
                                    "class_density = 1/1\nabelian_conductor = 1\n[run]\nx = 1000\nQ = 1\n";
    CHECK(run("thm1 --config " + (dir / "q.cfg").string() + " --out " + dir.string()) == 2);
}

TEST_CASE("resource errors exit 3") {
    const fs::path dir = scratch("resource");
    std::ofstream(dir / "big.cfg") << "[context]\npolynomial = 0, 1\ngroup_order = 1\nclass = 1\n"
                                      "class_density = 1/1\nabelian_conductor = 1\n[run]\nx = 100000000\n"
                                      "Q = 10\nmemory_budget_mb = 1\n";
    const fs::path log = dir / "log.txt";
    CHECK(run("variance --config " + (dir / "big.cfg").string() + " --out " + dir.string(), log.string()) == 3);
    CHECK(slurp(log).find("resource error") != std::string::npos);
}

TEST_CASE("worker count does not change the output") {
    const fs::path a = scratch("w1"), b = scratch("w4");
    REQUIRE(run("variance --config " + kFixtures + "/trivial.cfg --workers 1 --out " + a.string()) == 0);
    REQUIRE(run("variance --config " + kFixtures + "/trivial.cfg --workers 4 --out " + b.string()) == 0);
    CHECK(slurp(a / "variance.csv") == slurp(b / "variance.csv"));
}
