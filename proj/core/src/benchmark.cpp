#include "multicast/benchmark.hpp"

#include <chrono>
#include <memory>

#include "multicast/error.hpp"
#include "multicast/metrics.hpp"
#include "multicast/pipeline.hpp"

namespace multicast {

std::string_view valid_method_names() noexcept {
    return "persistence, ar, llmtime, multicast-di, multicast-vi, multicast-vc, external:<csv>";
}

MethodSpec parse_method(std::string_view text) {
    MethodSpec spec;
    spec.name = std::string(text);
    if (text == "persistence") {
        spec.kind = MethodKind::Persistence;
    } else if (text == "ar") {
        spec.kind = MethodKind::Ar;
    } else if (text == "llmtime") {
        spec.kind = MethodKind::LlmTime;
    } else if (text.starts_with("multicast-")) {
        spec.kind = MethodKind::MultiCast;
        try {
            spec.scheme = parse_mux_scheme(text.substr(10));
        } catch (const Error&) {
            throw Error(ErrorCode::InvalidConfig, "unknown method '" + spec.name +
                                                      "'; valid methods: " +
                                                      std::string(valid_method_names()));
        }
    } else if (text.starts_with("external:") && text.size() > 9) {
        spec.kind = MethodKind::External;
        spec.external_path = std::string(text.substr(9));
        spec.name = "external:" + std::filesystem::path(spec.external_path).stem().string();
    } else {
        throw Error(ErrorCode::InvalidConfig, "unknown method '" + spec.name +
                                                  "'; valid methods: " +
                                                  std::string(valid_method_names()));
    }
    return spec;
}

namespace {

struct MethodOutput {
    RealMatrix predictions;
    int valid_samples = -1;
};

MethodOutput run_method(const MethodSpec& spec, const MultiSeries& history,
                        const MultiSeries& future, const BenchmarkConfig& config,
                        const Backend* shared_backend) {
    const std::size_t horizon = future.length();
    switch (spec.kind) {
        case MethodKind::Persistence: return {persistence_forecast(history, horizon)};
        case MethodKind::Ar: return {ar_forecast(history, horizon, config.ar_order)};
        case MethodKind::External: {
            const auto external = load_csv(spec.external_path).series;
            if (external.dims() != history.dims() || external.length() < horizon) {
                throw Error(ErrorCode::ShapeMismatch,
                            "external forecast must have " + std::to_string(history.dims()) +
                                " columns and at least " + std::to_string(horizon) + " rows");
            }
            return {external.values().slice_rows(0, horizon)};
        }
        case MethodKind::MultiCast: {
            PipelineConfig pc = config.pipeline;
            pc.mux_scheme = spec.scheme;
            const ForecastRequest request{history, horizon, pc};
            std::unique_ptr<Backend> oracle;
            if (pc.backend.kind == BackendKind::Oracle) {
                oracle = make_backend(pc.backend, oracle_continuation(history, future, pc));
            }
            const auto result = forecast(request, oracle ? *oracle : *shared_backend);
            return {result.forecast, result.valid_sample_count};
        }
        case MethodKind::LlmTime: {
            PipelineConfig pc = config.pipeline;
            pc.mux_scheme = MuxScheme::VI;  // all schemes coincide at d = 1
            const ForecastRequest request{history, horizon, pc};
            std::vector<std::unique_ptr<Backend>> oracles;
            if (pc.backend.kind == BackendKind::Oracle) {
                for (std::size_t c = 0; c < history.dims(); ++c) {
                    oracles.push_back(make_backend(
                        pc.backend, oracle_continuation(history.select_columns({c}),
                                                        future.select_columns({c}), pc)));
                }
            }
            const auto result = forecast_per_dimension(
                request, [&](std::size_t c) -> const Backend& {
                    return oracles.empty() ? *shared_backend : *oracles[c];
                });
            return {result.forecast, result.valid_sample_count};
        }
    }
    throw Error(ErrorCode::InvalidConfig, "unknown method kind");
}

bool needs_backend(const MethodSpec& spec) {
    return spec.kind == MethodKind::MultiCast || spec.kind == MethodKind::LlmTime;
}

}  // namespace

ForecastReport run_benchmark(const Dataset& dataset, const std::vector<MethodSpec>& methods,
                             const BenchmarkConfig& config) {
    if (methods.empty()) throw Error(ErrorCode::InvalidConfig, "at least one method is required");
    const auto& series = dataset.series;
    const std::size_t test_len =
        config.test_len == 0 ? default_test_len(series.length()) : config.test_len;
    const auto [history, future] = split(series, test_len);

    ForecastReport report;
    report.dataset = dataset.name;
    report.dim_names = series.dim_names();
    report.config["pipeline"] = fingerprint(config.pipeline);
    report.config["test_len"] = std::to_string(test_len);
    report.config["history_len"] = std::to_string(history.length());
    report.config["ar_order"] = std::to_string(config.ar_order);

    std::unique_ptr<Backend> shared;
    const bool any_llm = std::any_of(methods.begin(), methods.end(), needs_backend);
    std::optional<std::string> backend_error;
    if (any_llm && config.pipeline.backend.kind != BackendKind::Oracle) {
        try {
            shared = make_backend(config.pipeline.backend);
        } catch (const std::exception& e) {
            backend_error = e.what();
        }
    }

    for (const auto& spec : methods) {
        MethodResult entry;
        entry.name = spec.name;
        const auto started = std::chrono::steady_clock::now();
        try {
            if (needs_backend(spec) && backend_error) {
                throw Error(ErrorCode::BackendUnreachable, *backend_error);
            }
            const auto output = run_method(spec, history, future, config, shared.get());
            entry.predictions = output.predictions;
            entry.valid_samples = output.valid_samples;
            for (std::size_t c = 0; c < series.dims(); ++c) {
                const auto actual = future.column(c);
                const auto predicted = output.predictions.column(c);
                entry.per_dim_rmse.emplace_back(series.dim_names()[c], rmse(actual, predicted));
            }
        } catch (const std::exception& e) {
            entry.error = e.what();
            entry.predictions = RealMatrix();
            entry.per_dim_rmse.clear();
            for (const auto& name : series.dim_names()) entry.per_dim_rmse.emplace_back(name, std::nullopt);
        }
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started;
        entry.seconds = config.record_timing ? elapsed.count() : 0.0;
        report.methods.push_back(std::move(entry));
    }
    return report;
}

}  // namespace multicast
