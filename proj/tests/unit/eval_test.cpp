#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <gtest/gtest.h>

#include "multicast/benchmark.hpp"
#include "multicast/dataset.hpp"
#include "multicast/error.hpp"
#include "multicast/metrics.hpp"
#include "multicast/plot.hpp"
#include "multicast/report.hpp"

namespace multicast {
namespace {

namespace fs = std::filesystem;

ErrorCode code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected an Error";
    return ErrorCode::InvalidConfig;
}

class TempDir {
public:
    TempDir() {
        static int counter = 0;
        path_ = fs::temp_directory_path() /
                ("multicast_eval_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    [[nodiscard]] const fs::path& path() const { return path_; }

private:
    fs::path path_;
};

MultiSeries sine_series(std::size_t n, std::size_t d) {
    RealMatrix m(n, d);
    std::vector<std::string> names;
    for (std::size_t c = 0; c < d; ++c) {
        names.push_back("s" + std::to_string(c));
        for (std::size_t t = 0; t < n; ++t) m(t, c) = 5.0 + std::sin(0.3 * t + c) * (1.0 + c);
    }
    return {std::move(m), std::move(names)};
}

TEST(Csv, ParsesBomAndCrlf) {
    const auto s = parse_csv("\xEF\xBB\xBF" "a,b\r\n1,2.5\r\n-3e2,4\r\n");
    EXPECT_EQ(s.dim_names(), (std::vector<std::string>{"a", "b"}));
    EXPECT_EQ(s.values(), RealMatrix(2, 2, {1.0, 2.5, -300.0, 4.0}));
}

TEST(Csv, Errors) {
    EXPECT_EQ(code_of([] { (void)parse_csv(""); }), ErrorCode::ParseError);
    EXPECT_EQ(code_of([] { (void)parse_csv("a,b\n1,2\n3\n"); }), ErrorCode::RaggedRows);
    EXPECT_EQ(code_of([] { (void)parse_csv("a,b\n1,zz\n"); }), ErrorCode::ParseError);
    EXPECT_EQ(code_of([] { (void)parse_csv("a,b\n"); }), ErrorCode::EmptySeries);
    EXPECT_EQ(code_of([] { (void)parse_csv("a,a\n1,2\n"); }), ErrorCode::DuplicateDimName);
    EXPECT_EQ(code_of([] { (void)parse_csv("a\nnan\n"); }), ErrorCode::NonFinite);
    EXPECT_EQ(code_of([] { (void)load_csv("/nonexistent/file.csv"); }), ErrorCode::Io);
}

TEST(Csv, DatasetNameIsFileStem) {
    TempDir dir;
    const auto path = dir.path() / "weather.csv";
    write_csv(sine_series(5, 2), path);
    EXPECT_EQ(load_csv(path).name, "weather");
}

TEST(Split, BoundsAndDefault) {
    const auto s = sine_series(10, 1);
    const auto [h, f] = split(s, 3);
    EXPECT_EQ(h.length(), 7u);
    EXPECT_EQ(f.length(), 3u);
    EXPECT_DOUBLE_EQ(f.at(0, 0), s.at(7, 0));
    EXPECT_EQ(code_of([&] { (void)split(s, 0); }), ErrorCode::BadSplit);
    EXPECT_EQ(code_of([&] { (void)split(s, 10); }), ErrorCode::BadSplit);
    EXPECT_EQ(default_test_len(296), 60u);
    EXPECT_EQ(default_test_len(10), 2u);
    EXPECT_EQ(default_test_len(2), 1u);
}

TEST(FormatDouble, ShortestRoundTrip) {
    EXPECT_EQ(format_double(0.1), "0.1");
    EXPECT_EQ(format_double(1.0), "1");
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    for (int i = 0; i < 1000; ++i) {
        const double v = u(rng);
        EXPECT_EQ(std::stod(format_double(v)), v);
    }
}

TEST(Rmse, UnitTruth) {
    const std::vector<double> a{1, 2, 3};
    const std::vector<double> b{2, 2, 3};
    EXPECT_NEAR(rmse(a, b), 0.57735, 1e-5);
    EXPECT_NEAR(rmse(std::vector<double>{0, 0}, std::vector<double>{5, 0}), 3.5355, 1e-4);
    EXPECT_DOUBLE_EQ(rmse(a, a), 0.0);
    EXPECT_DOUBLE_EQ(rmse(a, b), rmse(b, a));
    EXPECT_EQ(code_of([&] { (void)rmse(a, std::vector<double>{1, 2}); }), ErrorCode::LengthMismatch);
    EXPECT_EQ(code_of([] { (void)rmse(std::vector<double>{}, std::vector<double>{}); }), ErrorCode::EmptyInput);
}

TEST(Rmse, Properties) {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> noise;
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> y(1 + rng() % 30), p(y.size());
        for (std::size_t i = 0; i < y.size(); ++i) {
            y[i] = noise(rng);
            p[i] = noise(rng);
        }
        const double r = rmse(y, p);
        EXPECT_GE(r, 0.0);
        const double k = 1.0 + std::abs(noise(rng));
        std::vector<double> ys = y, ps = p;
        for (auto& v : ys) v *= k;
        for (auto& v : ps) v *= k;
        EXPECT_NEAR(rmse(ys, ps), k * r, 1e-12 * (1.0 + k * r));
        double max_abs = 0.0;
        for (std::size_t i = 0; i < y.size(); ++i) max_abs = std::max(max_abs, std::abs(y[i] - p[i]));
        EXPECT_LE(r, max_abs + 1e-15);
    }
}

TEST(Benchmark, ParseMethod) {
    EXPECT_EQ(parse_method("multicast-di").scheme, MuxScheme::DI);
    EXPECT_EQ(parse_method("llmtime").kind, MethodKind::LlmTime);
    const auto ext = parse_method("external:/tmp/lstm.csv");
    EXPECT_EQ(ext.kind, MethodKind::External);
    EXPECT_EQ(ext.name, "external:lstm");
    EXPECT_EQ(code_of([] { (void)parse_method("arima"); }), ErrorCode::InvalidConfig);
    EXPECT_EQ(code_of([] { (void)parse_method("multicast-zz"); }), ErrorCode::InvalidConfig);
}

TEST(Benchmark, RunsAllMethodsAndRecordsFailures) {
    TempDir dir;
    const Dataset ds{"sines", sine_series(60, 2), ""};
    const auto bad_external = dir.path() / "bad.csv";
    write_csv(sine_series(3, 2), bad_external);  // too few rows

    std::vector<MethodSpec> methods;
    for (const char* name : {"persistence", "ar", "llmtime", "multicast-di", "multicast-vi", "multicast-vc"}) {
        methods.push_back(parse_method(name));
    }
    methods.push_back(parse_method("external:" + bad_external.string()));
    BenchmarkConfig config;
    config.pipeline.sampling.seed = 1;
    const auto report = run_benchmark(ds, methods, config);

    EXPECT_EQ(report.dataset, "sines");
    EXPECT_EQ(report.config.at("test_len"), "12");
    EXPECT_EQ(report.config.at("history_len"), "48");
    ASSERT_EQ(report.methods.size(), 7u);
    for (std::size_t m = 0; m < 6; ++m) {
        EXPECT_FALSE(report.methods[m].error) << report.methods[m].name;
        ASSERT_EQ(report.methods[m].per_dim_rmse.size(), 2u);
        for (const auto& [dim, value] : report.methods[m].per_dim_rmse) EXPECT_TRUE(value.has_value());
        EXPECT_EQ(report.methods[m].predictions.rows(), 12u);
    }
    EXPECT_TRUE(report.methods[6].error);
    ASSERT_EQ(report.methods[6].per_dim_rmse.size(), 2u);
    for (const auto& [dim, value] : report.methods[6].per_dim_rmse) EXPECT_FALSE(value.has_value());
    EXPECT_EQ(report.rmse_cells(), 14u);
}

TEST(Benchmark, OracleBackendScoresNearZero) {
    const Dataset ds{"sines", sine_series(80, 2), ""};
    BenchmarkConfig config;
    config.pipeline.backend.kind = BackendKind::Oracle;
    const auto report = run_benchmark(ds, {parse_method("multicast-vi"), parse_method("llmtime")}, config);
    for (const auto& m : report.methods) {
        ASSERT_FALSE(m.error) << *m.error;
        for (const auto& [dim, value] : m.per_dim_rmse) EXPECT_LT(*value, 0.05) << m.name << " " << dim;
    }
}

ForecastReport sample_report() {
    ForecastReport r;
    r.dataset = "d";
    r.config = {{"k", "v"}};
    r.dim_names = {"x", "y"};
    MethodResult a{"a", {{"x", 1.0}, {"y", 3.0}}, 0.5, std::nullopt, RealMatrix(1, 2, {1.5, 2.25}), -1};
    MethodResult b{"b", {{"x", 2.0}, {"y", 1.0}}, 0.25, std::nullopt, RealMatrix(1, 2, {0.1, 0.2}), 5};
    MethodResult c{"c", {{"x", 3.0}, {"y", 2.0}}, 0.0, std::nullopt, RealMatrix(1, 2, {7.0, 8.0}), -1};
    MethodResult f{"f", {{"x", std::nullopt}, {"y", std::nullopt}}, 0.0, "AllSamplesInvalid: none", RealMatrix(), 0};
    r.methods = {a, b, c, f};
    return r;
}

TEST(Report, JsonRoundTrip) {
    const auto r = sample_report();
    const auto text = to_json(r);
    EXPECT_EQ(text.back(), '\n');
    EXPECT_EQ(report_from_json(text), r);
    EXPECT_EQ(to_json(report_from_json(text)), text);
    EXPECT_EQ(code_of([] { (void)report_from_json("{"); }), ErrorCode::ParseError);
    EXPECT_EQ(r.rmse_cells(), 8u);  // failed cells count too
}

TEST(Report, TableMarksBestAndSecond) {
    const auto table = to_text_table(sample_report());
    EXPECT_NE(table.find("**1.0000**"), std::string::npos);  // a on x
    EXPECT_NE(table.find("_2.0000_"), std::string::npos);    // b on x, c on y
    EXPECT_NE(table.find("failed"), std::string::npos);
    std::istringstream lines(table);
    std::string line;
    std::size_t width = 0;
    int rows = 0;
    std::getline(lines, line);  // dataset title
    while (std::getline(lines, line) && !line.starts_with("RMSE")) {
        if (width == 0) width = line.size();
        EXPECT_EQ(line.size(), width) << line;
        ++rows;
    }
    EXPECT_EQ(rows, 2 + 4);
}

TEST(Plot, WritesWellFormedSvgAndSidecar) {
    TempDir dir;
    const auto svg = dir.path() / "p.svg";
    const std::vector<double> history{1, 2, 3, 2, 1};
    const std::vector<double> actual{2, 3};
    const std::vector<double> predicted{2.5, 2.75};
    emit_plot(actual, predicted, history, svg, "a & b <test>");
    ASSERT_TRUE(fs::exists(svg));
    boost::property_tree::ptree tree;
    std::ifstream in(svg);
    ASSERT_NO_THROW(boost::property_tree::read_xml(in, tree));
    EXPECT_EQ(tree.get_child("svg").count("polyline"), 3u);

    const auto reloaded = load_plot_csv(plot_sidecar_path(svg));
    EXPECT_EQ(reloaded.history, history);
    EXPECT_EQ(reloaded.actual, actual);
    EXPECT_EQ(reloaded.predicted, predicted);
}

TEST(Plot, ErrorsWriteNothing) {
    TempDir dir;
    const auto svg = dir.path() / "e.svg";
    const std::vector<double> none;
    const std::vector<double> one{1.0};
    const std::vector<double> two{1.0, 2.0};
    EXPECT_EQ(code_of([&] { emit_plot(none, none, one, svg); }), ErrorCode::EmptyInput);
    EXPECT_EQ(code_of([&] { emit_plot(one, two, one, svg); }), ErrorCode::LengthMismatch);
    EXPECT_FALSE(fs::exists(svg));
    EXPECT_FALSE(fs::exists(plot_sidecar_path(svg)));
}

}  // namespace
}  // namespace multicast
