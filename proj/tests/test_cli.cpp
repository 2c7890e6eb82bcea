#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <gtest/gtest.h>
#include <json.hpp>

namespace {

struct CliRun {
    int code = -1;
    std::string out;
};

CliRun run(const std::string& args) {
    std::string cmd = std::string(QALG_BIN) + " " + args + " 2>/dev/null";
    CliRun r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string sample(const std::string& name) { return std::string(QALG_SAMPLES) + "/" + name; }

std::vector<nlohmann::json> lines(const std::string& out) {
    std::vector<nlohmann::json> v;
    std::stringstream ss(out);
    for (std::string l; std::getline(ss, l);) v.push_back(nlohmann::json::parse(l));
    return v;
}

}  // namespace

TEST(Cli, ThetaFullSuite) {
    CliRun r = run("check --family theta --lam 2 --suite all");
    EXPECT_EQ(r.code, 0);
    auto ls = lines(r.out);
    EXPECT_GE(ls.size(), 35u);
    EXPECT_LE(ls.size(), 45u);
    for (const auto& l : ls)
        if (l.contains("status")) {
            EXPECT_NE(l["status"], "fail") << l.dump();
        }
}

TEST(Cli, ClassicalFullSuite) { EXPECT_EQ(run("check --family classical --suite all").code, 0); }

TEST(Cli, InvalidParametersAreData) {
    CliRun r = run("check --file " + sample("bad.json"));
    EXPECT_EQ(r.code, 0);
    auto ls = lines(r.out);
    ASSERT_FALSE(ls.empty());
    EXPECT_EQ(ls[0]["check_id"], "def21.validate");
    EXPECT_EQ(ls[0]["status"], "fail");
    EXPECT_EQ(run("check --strict --file " + sample("bad.json")).code, 3);
}

TEST(Cli, SchemaErrorExitCode) {
    std::string path = ::testing::TempDir() + "qalg_broken.json";
    std::ofstream(path) << "{\n  \"family\": \"theta\",\n  \"args\": {\"lam\": 2,}\n}\n";
    EXPECT_EQ(run("check --file " + path).code, 2);
    EXPECT_EQ(run("check --family nope").code, 2);
}

TEST(Cli, MinusBranchWithNonzeroPIsRefused) {
    CliRun r = run("check --file " + sample("minus_branch_bad.json"));
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.out.find("\"error\":\"AssumptionViolated\""), std::string::npos);
}

TEST(Cli, MinusBranchWithVanishingPRuns) {
    CliRun r = run("check --suite dga --file " + sample("minus_branch.json"));
    EXPECT_EQ(r.code, 0) << r.out;
}

TEST(Cli, Deterministic) {
    CliRun a = run("check --family theta --lam 2 --suite all");
    CliRun b = run("check --family theta --lam 2 --suite all");
    EXPECT_EQ(a.out, b.out);
}

TEST(Cli, SeedOnlyChangesRandomSamples) {
    auto a = lines(run("check --family theta --lam 2 --suite dga --seed 1").out);
    auto b = lines(run("check --family theta --lam 2 --suite dga --seed 2").out);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t k = 0; k < a.size(); ++k)
        if (a[k].value("check_id", "") != "dga.leibniz") {
            EXPECT_EQ(a[k], b[k]);
        }
}

TEST(Cli, ChecksFilterAndSummary) {
    CliRun r = run("bialg audit --family theta --lam 2 --checks involutivity,relA,columns --out summary");
    EXPECT_EQ(r.code, 0);
    auto ls = lines(r.out);
    ASSERT_EQ(ls.size(), 7u);
    EXPECT_EQ(ls[0]["check_id"], "bialg.involutivity");
    EXPECT_EQ(ls[1]["check_id"], "bialg.relA");
    EXPECT_EQ(ls[2]["check_id"], "bialg.column.0");
    EXPECT_EQ(ls.back()["summary"]["pass"], 6);
}

TEST(Cli, ParamsShowRoundTrip) {
    CliRun a = run("params show --family theta");
    std::string path = ::testing::TempDir() + "qalg_theta.json";
    std::ofstream(path) << a.out;
    EXPECT_EQ(run("params show --file " + path).out, a.out);
}

TEST(Cli, Reductions) {
    EXPECT_EQ(run("plane reduce --family theta --lam 2 --expr 'x1 x0'").out, "4/5 x0 x1 + 3/5 x2 x3\n");
    EXPECT_EQ(run("sphere reduce --family theta --lam 2 --expr 'x0 x0 + x1 x1 + x2 x2 + x3 x3'").out, "1\n");
    EXPECT_EQ(run("dga reduce --d --family classical --expr 'x0 x0'").out, "2 x0 dx0\n");
}

TEST(Cli, YangBaxter) {
    auto ls = lines(run("plane ybe --family theta --lam 2").out);
    ASSERT_EQ(ls.size(), 2u);
    EXPECT_EQ(ls[0]["status"], "pass");
    EXPECT_EQ(ls[1]["data"]["quantum_zero"], false);
}
