#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "displab/tools/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun cli(const std::vector<std::string>& args) {
    std::ostringstream o, e;
    const int code = displab::cli::run(args, o, e);
    return {code, o.str(), e.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("displab_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string config(const std::string& body) {
        const fs::path p = dir_ / "run.cfg";
        std::ofstream(p) << body;
        return p.string();
    }
    std::string out(const std::string& sub = "out") const { return (dir_ / sub).string(); }

    fs::path dir_;
};

const std::string kQuick =
    "spec_version = 1\n"
    "profile = gaussian:1\n"
    "h_list = 0.4, 0.2, 0.1\n"
    "length = 25.6\n"
    "T = 0.25\n"
    "time_samples = 50\n";

}  // namespace

TEST_F(CliTest, ExactSchemeSweepIsDegenerate) {
    const CliRun r = cli({"sweep", "--config", config(kQuick + "scheme = exact\n"), "--out", out()});
    ASSERT_EQ(r.code, 0) << r.err;
    const std::string rates = slurp(fs::path(out()) / "rates.json");
    EXPECT_NE(rates.find("degenerate: exact scheme"), std::string::npos);
    EXPECT_TRUE(fs::exists(fs::path(out()) / "results.csv"));
    EXPECT_TRUE(fs::exists(fs::path(out()) / "plotdata.csv"));
}

TEST_F(CliTest, MissingSchemeExitsTwoNamingField) {
    const CliRun r = cli({"sweep", "--config", config(kQuick), "--out", out()});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("scheme"), std::string::npos);
}

TEST_F(CliTest, MalformedConfigReportsLine) {
    const CliRun r = cli({"sweep", "--config", config("spec_version = 1\nscheme fd3\n"), "--out", out()});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("line 2"), std::string::npos) << r.err;
}

TEST_F(CliTest, SweepOutputsAreByteIdenticalAcrossRuns) {
    const std::string cfg = config(kQuick + "scheme = fd3\n");
    const std::vector<std::string> files{"results.csv", "plotdata.csv", "rates.json"};
    ASSERT_EQ(cli({"sweep", "--config", cfg, "--out", out(), "--jobs", "1"}).code, 0);
    std::vector<std::string> first;
    for (const auto& f : files) first.push_back(slurp(fs::path(out()) / f));
    ASSERT_EQ(cli({"sweep", "--config", cfg, "--out", out(), "--jobs", "3"}).code, 0);
    for (std::size_t i = 0; i < files.size(); ++i) EXPECT_EQ(first[i], slurp(fs::path(out()) / files[i])) << files[i];
    const std::string results = first[0];
    EXPECT_EQ(results.rfind("# displab ", 0), 0u);
    EXPECT_NE(results.find("# scheme = fd3"), std::string::npos);
}

TEST_F(CliTest, UnmetSlopeContractExitsOne) {
    const CliRun r = cli({"sweep", "--config", config(kQuick + "scheme = fd3\nexpect_slope = 7\n"), "--out", out()});
    EXPECT_EQ(r.code, 1);
}

TEST_F(CliTest, FlagsOverrideWithoutConfigFile) {
    const CliRun r = cli({"sweep", "--scheme", "hyperviscous:2", "--profile", "gaussian:1", "--h-list", "0.4,0.2,0.1", "--T",
                       "0.25", "--out", out()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(slurp(fs::path(out()) / "rates.json").find("hyperviscous:2"), std::string::npos);
}

TEST_F(CliTest, PropagateWritesTraceAndSummary) {
    const CliRun r = cli({"propagate", "--config", config(kQuick + "scheme = fd3\np = 2\nsample_interval = 0.05\n"), "--out",
                       out()});
    ASSERT_EQ(r.code, 0) << r.err;
    const std::string trace = slurp(fs::path(out()) / "trace.csv");
    EXPECT_NE(trace.find("t,j,re,im"), std::string::npos);
    EXPECT_NE(slurp(fs::path(out()) / "summary.json").find("\"l2\""), std::string::npos);
}

TEST_F(CliTest, RatesRefitsExistingResults) {
    ASSERT_EQ(cli({"sweep", "--config", config(kQuick + "scheme = hyperviscous:2\n"), "--out", out()}).code, 0);
    const CliRun r = cli({"rates", "--results", (fs::path(out()) / "results.csv").string(), "--out", out()});
    EXPECT_TRUE(r.code == 0 || r.code == 1);
    EXPECT_TRUE(fs::exists(fs::path(out()) / "rates_refit.json"));
}

TEST_F(CliTest, MinimizeJWritesTable) {
    const CliRun r = cli({"minimize-j", "--h-list", "1e-3,1e-4,1e-5,1e-6", "--out", out()});
    EXPECT_TRUE(r.code == 0 || r.code == 1) << r.err;
    const std::string csv = slurp(fs::path(out()) / "minimize_j.csv");
    EXPECT_NE(csv.find("h,c_h,min_j"), std::string::npos);
    EXPECT_TRUE(fs::exists(fs::path(out()) / "minimize_j.json"));
}

TEST_F(CliTest, StrichartzSingleDissipativeScheme) {
    const CliRun r = cli({"strichartz", "--scheme", "hyperviscous:2", "--out", out()});
    EXPECT_EQ(r.code, 0) << r.out << r.err;
    EXPECT_NE(slurp(fs::path(out()) / "strichartz.csv").find("hyperviscous:2,"), std::string::npos);
}

TEST_F(CliTest, UnknownSubcommandExitsTwo) {
    EXPECT_EQ(cli({"transmogrify"}).code, 2);
    EXPECT_EQ(cli({}).code, 2);
}

TEST_F(CliTest, VersionFlag) {
    const CliRun r = cli({"--version"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("0.3.0"), std::string::npos);
}

TEST_F(CliTest, WriteAtomicReplacesContent) {
    const fs::path p = dir_ / "f.txt";
    displab::cli::write_atomic(p.string(), "one");
    displab::cli::write_atomic(p.string(), "two");
    EXPECT_EQ(slurp(p), "two");
    EXPECT_FALSE(fs::exists(p.string() + ".tmp"));
}
