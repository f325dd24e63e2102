#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "cli.hpp"
#include "multicast/dataset.hpp"
#include "multicast/report.hpp"

namespace multicast {
namespace {

namespace fs = std::filesystem;

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome invoke(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("multicast_cli_" + std::to_string(::getpid()) + "_" +
                                            ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir_);
        std::ofstream(dir_ / "worked.csv") << "d1,d2\n1.7,2.3\n2.6,3.1\n";
        std::ofstream series(dir_ / "series.csv");
        series << "a,b\n";
        for (int t = 0; t < 60; ++t) series << 10 + (t % 7) << "," << 20 + (t % 5) * 0.5 << "\n";
    }
    void TearDown() override { fs::remove_all(dir_); }
    [[nodiscard]] std::string path(const std::string& name) const { return (dir_ / name).string(); }

    fs::path dir_;
};

TEST_F(CliTest, InspectReproducesWorkedEncodings) {
    const std::vector<std::pair<std::string, std::string>> cases{
        {"di", "1273,2361"}, {"vi", "1723,2631"}, {"vc", "17,23,26,31"}};
    for (const auto& [scheme, golden] : cases) {
        const auto r = invoke({"inspect", "--input", path("worked.csv"), "--digits", "2", "--factor", "10",
                               "--mux", scheme});
        ASSERT_EQ(r.code, 0) << r.err;
        EXPECT_NE(r.out.find("\n" + golden + "\n"), std::string::npos) << r.out;
        EXPECT_NE(r.out.find("17 26"), std::string::npos);
    }
}

TEST_F(CliTest, InspectLimitMustBePositive) {
    const auto r = invoke({"inspect", "--input", path("worked.csv"), "--limit", "0"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("--limit"), std::string::npos);
}

TEST_F(CliTest, InspectSax) {
    const auto r = invoke({"inspect", "--input", path("series.csv"), "--sax", "--segment-len", "6"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("sax words"), std::string::npos);
}

TEST_F(CliTest, DigitalAlphabetOverflowIsUsageError) {
    const auto r = invoke({"inspect", "--input", path("series.csv"), "--sax", "--alphabet", "digit",
                           "--alphabet-size", "20"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("DigitalAlphabetOverflow"), std::string::npos);
}

TEST_F(CliTest, ForecastIsByteIdenticalAcrossRuns) {
    const auto a = invoke({"forecast", "--input", path("series.csv"), "--horizon", "8", "--output", path("a.csv")});
    const auto b = invoke({"forecast", "--input", path("series.csv"), "--horizon", "8", "--output", path("b.csv")});
    ASSERT_EQ(a.code, 0) << a.err;
    ASSERT_EQ(b.code, 0) << b.err;
    EXPECT_EQ(slurp(path("a.csv")), slurp(path("b.csv")));
    const auto loaded = load_csv(path("a.csv")).series;
    EXPECT_EQ(loaded.length(), 8u);
    EXPECT_EQ(loaded.dim_names(), (std::vector<std::string>{"a", "b"}));
}

TEST_F(CliTest, ForecastWithOracle) {
    std::ofstream(dir_ / "future.csv") << "a,b\n11,20.5\n12,21\n";
    const auto r = invoke({"forecast", "--input", path("series.csv"), "--horizon", "2", "--output",
                           path("o.csv"), "--backend", "oracle", "--oracle-future", path("future.csv")});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto got = load_csv(path("o.csv")).series;
    EXPECT_NEAR(got.at(0, 0), 11.0, 0.01);
    EXPECT_NEAR(got.at(1, 1), 21.0, 0.01);

    const auto missing = invoke({"forecast", "--input", path("series.csv"), "--horizon", "2", "--output",
                                 path("o.csv"), "--backend", "oracle"});
    EXPECT_EQ(missing.code, 1);
}

TEST_F(CliTest, UsageErrors) {
    EXPECT_EQ(invoke({}).code, 1);
    EXPECT_EQ(invoke({"bogus"}).code, 1);
    EXPECT_EQ(invoke({"forecast", "--input", path("series.csv"), "--output", path("x.csv")}).code, 1);
    EXPECT_EQ(invoke({"forecast", "--input", path("series.csv"), "--horizon", "0", "--output", path("x.csv")}).code,
              1);
    EXPECT_EQ(invoke({"forecast", "--input", path("series.csv"), "--horizon", "2", "--output", path("x.csv"),
                      "--backend", "http"})
                  .code,
              1);
}

TEST_F(CliTest, ExitCodes) {
    EXPECT_EQ(invoke({"inspect", "--input", path("missing.csv")}).code, 2);
    std::ofstream(dir_ / "ragged.csv") << "a,b\n1,2\n3\n";
    EXPECT_EQ(invoke({"inspect", "--input", path("ragged.csv")}).code, 4);
    const auto unreachable = invoke({"forecast", "--input", path("series.csv"), "--horizon", "2", "--output",
                                     path("x.csv"), "--backend", "http", "--endpoint",
                                     "http://127.0.0.1:1/v1/completions", "--timeout-ms", "500"});
    EXPECT_EQ(unreachable.code, 3) << unreachable.err;
}

TEST_F(CliTest, EvaluateSingleMethodAndPlots) {
    const auto r = invoke({"evaluate", "--input", path("series.csv"), "--methods", "persistence", "--report",
                           path("r.json"), "--plots", path("plots")});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto report = report_from_json(slurp(path("r.json")));
    ASSERT_EQ(report.methods.size(), 1u);
    EXPECT_EQ(report.methods[0].name, "persistence");
    EXPECT_TRUE(fs::exists(path("r.txt")));
    std::size_t svgs = 0;
    for (const auto& entry : fs::directory_iterator(path("plots"))) svgs += entry.path().extension() == ".svg";
    EXPECT_EQ(svgs, 2u);
}

TEST_F(CliTest, EvaluateUnknownMethodListsValidNames) {
    const auto r = invoke({"evaluate", "--input", path("series.csv"), "--methods", "arima", "--report",
                           path("r.json")});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("multicast-vi"), std::string::npos);
    EXPECT_FALSE(fs::exists(path("r.json")));
}

TEST_F(CliTest, EvaluateNoTimingIsByteStable) {
    for (const char* name : {"x.json", "y.json"}) {
        const auto r = invoke({"evaluate", "--input", path("series.csv"), "--report", path(name), "--no-timing"});
        ASSERT_EQ(r.code, 0) << r.err;
    }
    EXPECT_EQ(slurp(path("x.json")), slurp(path("y.json")));
}

TEST_F(CliTest, HelpShowsDefaults) {
    const auto r = invoke({"forecast", "--help"});
    EXPECT_EQ(r.code, 0);
    for (const char* text : {"--mux", "vi", "--digits", "--samples", "--temperature", "0.7", "--top-p", "0.9"}) {
        EXPECT_NE(r.out.find(text), std::string::npos) << text;
    }
}

TEST_F(CliTest, SettingPrecedence) {
    // flag > config file > environment > default, observed through the report's pipeline fingerprint
    const auto samples_in = [&](const std::string& report) {
        const auto cfg = report_from_json(slurp(path(report))).config.at("pipeline");
        const auto start = cfg.find("samples=") + 8;
        return cfg.substr(start, cfg.find(';', start) - start);
    };
    const std::vector<std::string> base{"evaluate", "--input", path("series.csv"), "--methods", "persistence",
                                        "--no-timing"};
    auto with = [&](std::vector<std::string> extra, const std::string& report) {
        auto args = base;
        args.insert(args.end(), extra.begin(), extra.end());
        args.insert(args.end(), {"--report", path(report)});
        const auto r = invoke(args);
        EXPECT_EQ(r.code, 0) << r.err;
    };

    with({}, "default.json");
    EXPECT_EQ(samples_in("default.json"), "5");

    ::setenv("MULTICAST_SAMPLES", "7", 1);
    with({}, "env.json");
    EXPECT_EQ(samples_in("env.json"), "7");

    std::ofstream(dir_ / "cfg.toml") << "samples = 9\n";
    with({"--config", path("cfg.toml")}, "file.json");
    EXPECT_EQ(samples_in("file.json"), "9");

    with({"--config", path("cfg.toml"), "--samples", "11"}, "flag.json");
    EXPECT_EQ(samples_in("flag.json"), "11");
    ::unsetenv("MULTICAST_SAMPLES");

    std::ofstream(dir_ / "section.toml") << "samples = 2\n[evaluate]\nsamples = 3\n";
    with({"--config", path("section.toml")}, "section.json");
    EXPECT_EQ(samples_in("section.json"), "3");
}

}  // namespace
}  // namespace multicast
