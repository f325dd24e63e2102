#include "cli.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <toml.hpp>

#include "multicast/multicast.hpp"

namespace multicast::cli {

namespace {

namespace fs = std::filesystem;

constexpr const char* kPrecedence =
    "Settings resolve as: command-line flags > --config TOML file > MULTICAST_* environment "
    "variables > defaults. TOML keys match the long flag names (dashes or underscores), either "
    "at the top level or inside a [forecast]/[evaluate]/[inspect] table. Environment names are "
    "MULTICAST_ plus the flag name upper-cased with dashes as underscores, e.g. MULTICAST_SAMPLES.";

constexpr const char* kDefaultSeed = "42";
constexpr const char* kDefaultMethods = "persistence,ar,llmtime,multicast-di,multicast-vi,multicast-vc";

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string env_name(std::string_view key) {
    std::string out = "MULTICAST_";
    for (char c : key) out.push_back(c == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    return out;
}

/// One subcommand's options, merged across flags, config file, and environment.
class Settings {
public:
    Settings(CLI::App& app, std::string command) : app_(app), command_(std::move(command)) {
        app_.add_option("--config", config_path_, "TOML file with default settings")
            ->check(CLI::ExistingFile);
    }

    void option(const std::string& key, const std::string& description,
                std::optional<std::string> default_value = std::nullopt) {
        auto& entry = entries_[key];
        entry.default_value = default_value;
        entry.option = app_.add_option("--" + key, entry.raw, description);
        if (default_value) entry.option->default_str(*default_value);
    }

    void flag(const std::string& key, const std::string& description) {
        auto& entry = entries_[key];
        entry.is_flag = true;
        entry.default_value = "false";
        entry.option = app_.add_flag("--" + key, entry.flag, description);
    }

    /// Call once after parsing.
    void resolve() {
        std::string path = config_path_;
        if (path.empty()) {
            if (const char* env = std::getenv("MULTICAST_CONFIG"); env && *env) path = env;
        }
        if (path.empty()) return;
        try {
            file_ = toml::parse_file(path);
        } catch (const toml::parse_error& e) {
            throw UsageError("config file '" + path + "': " + std::string(e.description()));
        }
    }

    [[nodiscard]] std::optional<std::string> get(const std::string& key) const {
        const auto& entry = entries_.at(key);
        if (entry.option->count() > 0) return entry.is_flag ? std::string("true") : entry.raw;
        if (auto v = from_file(key)) return v;
        if (const char* env = std::getenv(env_name(key).c_str()); env && *env) return std::string(env);
        return entry.default_value;
    }

    [[nodiscard]] std::string required(const std::string& key) const {
        auto v = get(key);
        if (!v || v->empty()) throw UsageError("--" + key + " is required");
        return *v;
    }

    [[nodiscard]] bool has(const std::string& key) const { return get(key).has_value(); }

    [[nodiscard]] long long integer(const std::string& key) const {
        const auto text = required(key);
        long long v = 0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec != std::errc{} || ptr != text.data() + text.size()) {
            throw UsageError("--" + key + " expects an integer, got '" + text + "'");
        }
        return v;
    }

    [[nodiscard]] double real(const std::string& key) const {
        const auto text = required(key);
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec != std::errc{} || ptr != text.data() + text.size()) {
            throw UsageError("--" + key + " expects a number, got '" + text + "'");
        }
        return v;
    }

    [[nodiscard]] bool boolean(const std::string& key) const {
        auto text = get(key).value_or("false");
        std::transform(text.begin(), text.end(), text.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        if (text == "1" || text == "true" || text == "yes" || text == "on") return true;
        if (text == "0" || text == "false" || text == "no" || text == "off") return false;
        throw UsageError("--" + key + " expects true or false, got '" + text + "'");
    }

private:
    struct Entry {
        std::string raw;
        bool flag = false;
        bool is_flag = false;
        std::optional<std::string> default_value;
        CLI::Option* option = nullptr;
    };

    [[nodiscard]] std::optional<std::string> from_file(const std::string& key) const {
        if (!file_) return std::nullopt;
        std::string underscored = key;
        std::replace(underscored.begin(), underscored.end(), '-', '_');
        const auto lookup = [&](const toml::table& table) -> std::optional<std::string> {
            for (const auto& name : {key, underscored}) {
                const toml::node* node = table.get(name);
                if (!node) continue;
                if (auto s = node->value<std::string>()) return *s;
                if (auto i = node->value_exact<std::int64_t>()) return std::to_string(*i);
                if (auto d = node->value_exact<double>()) return format_double(*d);
                if (auto b = node->value_exact<bool>()) return std::string(*b ? "true" : "false");
                if (const auto* arr = node->as_array()) {
                    std::string joined;
                    for (const auto& item : *arr) {
                        if (auto s = item.value<std::string>()) joined += (joined.empty() ? "" : ",") + *s;
                    }
                    return joined;
                }
                throw UsageError("config key '" + name + "' has an unsupported type");
            }
            return std::nullopt;
        };
        if (const auto* section = (*file_)[command_].as_table()) {
            if (auto v = lookup(*section)) return v;
        }
        return lookup(*file_);
    }

    CLI::App& app_;
    std::string command_;
    std::string config_path_;
    std::optional<toml::table> file_;
    std::map<std::string, Entry> entries_;
};

void add_encoding_options(Settings& s) {
    s.option("mux", "Multiplexing scheme: di, vi or vc", "vi");
    s.option("digits", "Digits per scaled value (1-10)", "3");
    s.option("headroom", "Scaling headroom above the history range (>= 1)", "1.25");
    s.flag("sax", "Quantize with SAX before multiplexing");
    s.option("segment-len", "SAX segment length w", "6");
    s.option("alphabet-size", "SAX alphabet size a (digit alphabet: a <= 10)", "5");
    s.option("alphabet", "SAX alphabet: alpha or digit", "alpha");
}

void add_backend_options(Settings& s) {
    s.option("backend", "Generation backend: http, mock or oracle", "mock");
    s.option("endpoint", "Completion endpoint URL (http backend)");
    s.option("model", "Model id sent to the endpoint");
    s.option("auth-env", "Environment variable holding a bearer token", "MULTICAST_API_TOKEN");
    s.option("timeout-ms", "Per-request timeout in milliseconds", "60000");
    s.option("max-parallel", "Concurrent requests per forecast (http backend)", "4");
    s.option("samples", "Continuations sampled per forecast", "5");
    s.option("temperature", "Sampling temperature", "0.7");
    s.option("top-p", "Nucleus sampling mass", "0.9");
    s.option("max-retry", "Resamples when a continuation leaves the vocabulary", "3");
    s.option("seed", "Sampling seed, or 'random'", kDefaultSeed);
}

std::optional<SaxConfig> sax_from(const Settings& s) {
    if (!s.boolean("sax")) return std::nullopt;
    SaxConfig sax;
    sax.segment_length = static_cast<int>(s.integer("segment-len"));
    sax.alphabet_size = static_cast<int>(s.integer("alphabet-size"));
    sax.alphabet_kind = parse_alphabet_kind(s.required("alphabet"));
    validate(sax);
    return sax;
}

PipelineConfig pipeline_from(const Settings& s) {
    PipelineConfig config;
    config.mux_scheme = parse_mux_scheme(s.required("mux"));
    config.digit_budget = static_cast<int>(s.integer("digits"));
    config.headroom = s.real("headroom");
    config.sax = sax_from(s);
    config.num_samples = static_cast<int>(s.integer("samples"));
    config.sampling.temperature = s.real("temperature");
    config.sampling.nucleus_mass = s.real("top-p");
    config.sampling.max_retry = static_cast<int>(s.integer("max-retry"));
    if (s.required("seed") == "random") {
        std::random_device rd;
        config.sampling.seed = (static_cast<std::uint64_t>(rd()) << 32) | rd();
    } else {
        const auto seed = s.integer("seed");
        if (seed < 0) throw UsageError("--seed must be non-negative");
        config.sampling.seed = static_cast<std::uint64_t>(seed);
    }
    config.backend.kind = parse_backend_kind(s.required("backend"));
    config.backend.endpoint = s.get("endpoint");
    config.backend.model_id = s.get("model");
    config.backend.auth_token_env = s.get("auth-env");
    config.backend.timeout = std::chrono::milliseconds(s.integer("timeout-ms"));
    config.backend.max_parallel = static_cast<int>(s.integer("max-parallel"));
    if (config.backend.kind == BackendKind::Http && !config.backend.endpoint) {
        throw UsageError("--backend http requires --endpoint");
    }
    validate(config);
    return config;
}

std::string summarize(double v) {
    std::ostringstream os;
    os << std::setprecision(6) << v;
    return os.str();
}

int cmd_forecast(const Settings& s, std::ostream& out) {
    const auto horizon = s.integer("horizon");
    if (horizon < 1) throw UsageError("--horizon must be >= 1");
    const auto output = s.required("output");
    const auto config = pipeline_from(s);
    const auto dataset = load_csv(s.required("input"));

    std::unique_ptr<Backend> backend;
    if (config.backend.kind == BackendKind::Oracle) {
        const auto future_path = s.get("oracle-future");
        if (!future_path) throw UsageError("--backend oracle requires --oracle-future <csv>");
        const auto future = load_csv(*future_path).series;
        if (future.dims() != dataset.series.dims() ||
            future.length() < static_cast<std::size_t>(horizon)) {
            throw Error(ErrorCode::ShapeMismatch,
                        "--oracle-future must have the input's columns and >= horizon rows");
        }
        backend = make_backend(config.backend,
                               oracle_continuation(dataset.series,
                                                   future.slice_rows(0, static_cast<std::size_t>(horizon)),
                                                   config));
    } else {
        backend = make_backend(config.backend);
    }

    const ForecastRequest request{dataset.series, static_cast<std::size_t>(horizon), config};
    const auto result = forecast(request, *backend);
    write_csv(MultiSeries(result.forecast, dataset.series.dim_names()), output);

    out << "forecast " << result.forecast.rows() << " x " << result.forecast.cols() << " from "
        << result.valid_sample_count << "/" << config.num_samples << " valid samples -> " << output
        << "\n";
    for (std::size_t c = 0; c < result.forecast.cols(); ++c) {
        const auto col = result.forecast.column(c);
        double mean = 0.0;
        for (double v : col) mean += v;
        mean /= static_cast<double>(col.size());
        out << "  " << dataset.series.dim_names()[c] << ": first=" << summarize(col.front())
            << " last=" << summarize(col.back()) << " mean=" << summarize(mean) << "\n";
    }
    return kOk;
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::string file_safe(std::string name) {
    for (char& c : name) {
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_' && c != '.') c = '_';
    }
    return name.empty() ? "dim" : name;
}

int cmd_evaluate(const Settings& s, std::ostream& out) {
    std::vector<MethodSpec> methods;
    for (const auto& name : split_list(s.required("methods"))) {
        try {
            methods.push_back(parse_method(name));
        } catch (const Error& e) {
            throw UsageError(e.what());
        }
    }
    if (methods.empty()) throw UsageError("--methods lists no method; valid methods: " +
                                          std::string(valid_method_names()));

    BenchmarkConfig config;
    config.pipeline = pipeline_from(s);
    config.ar_order = static_cast<int>(s.integer("ar-order"));
    if (config.ar_order < 1) throw UsageError("--ar-order must be >= 1");
    config.record_timing = !s.boolean("no-timing");
    if (s.has("test-len")) {
        const auto k = s.integer("test-len");
        if (k < 1) throw UsageError("--test-len must be >= 1");
        config.test_len = static_cast<std::size_t>(k);
    }

    const auto dataset = load_csv(s.required("input"));
    const auto report = run_benchmark(dataset, methods, config);

    const fs::path report_path = s.required("report");
    const fs::path table_path =
        s.has("table") ? fs::path(*s.get("table")) : fs::path(report_path).replace_extension(".txt");
    const auto write_text = [](const fs::path& path, const std::string& text) {
        std::ofstream f(path, std::ios::binary | std::ios::trunc);
        if (!f) throw Error(ErrorCode::Io, "cannot write '" + path.string() + "'");
        f << text;
        if (!f) throw Error(ErrorCode::Io, "failed writing '" + path.string() + "'");
    };
    const auto table = to_text_table(report);
    write_text(report_path, to_json(report));
    write_text(table_path, table);
    out << table;

    if (const auto plots = s.get("plots")) {
        const auto it = std::find_if(report.methods.begin(), report.methods.end(),
                                     [](const MethodResult& m) { return !m.error; });
        if (it == report.methods.end()) {
            out << "no successful method; plots skipped\n";
        } else {
            std::error_code ec;
            fs::create_directories(*plots, ec);
            if (ec) throw Error(ErrorCode::Io, "cannot create '" + *plots + "': " + ec.message());
            const std::size_t test_len = std::stoul(report.config.at("test_len"));
            const auto [history, future] = split(dataset.series, test_len);
            for (std::size_t c = 0; c < dataset.series.dims(); ++c) {
                const auto& name = dataset.series.dim_names()[c];
                const auto svg = fs::path(*plots) / (file_safe(name) + ".svg");
                const auto actual = future.column(c);
                const auto predicted = it->predictions.column(c);
                const auto past = history.column(c);
                emit_plot(actual, predicted, past, svg, it->name + " - " + name);
            }
            out << "plots (" << it->name << ") -> " << *plots << "\n";
        }
    }
    return kOk;
}

int cmd_inspect(const Settings& s, std::ostream& out) {
    const auto dataset = load_csv(s.required("input"));
    std::size_t rows = dataset.series.length();
    if (s.has("limit")) {
        const auto limit = s.integer("limit");
        if (limit < 1) throw UsageError("--limit must be >= 1");
        rows = std::min(rows, static_cast<std::size_t>(limit));
    }
    const auto series = dataset.series.slice_rows(0, rows);
    const auto scheme = parse_mux_scheme(s.required("mux"));
    const auto sax = sax_from(s);

    if (sax) {
        const auto stats = compute_stats(series);
        const auto words = sax_encode(series, *sax, stats);
        out << "sax words (w=" << sax->segment_length << ", a=" << sax->alphabet_size << ", "
            << to_string(sax->alphabet_kind) << "):\n";
        std::vector<std::vector<std::int64_t>> columns;
        for (std::size_t c = 0; c < words.size(); ++c) {
            out << "  " << series.dim_names()[c] << " (mean=" << summarize(stats[c].mean)
                << " std=" << summarize(stats[c].std) << "): "
                << render_symbols(words[c], sax->alphabet_kind) << "\n";
            columns.emplace_back(words[c].symbols.begin(), words[c].symbols.end());
        }
        const MuxLayout layout{scheme, series.dims(), 1};
        out << "multiplexed (" << to_string(scheme) << ", sax):\n"
            << mux(IntMatrix::from_columns(columns), layout,
                   TokenVocabulary::sax(sax->alphabet_size, sax->alphabet_kind))
            << "\n";
        return kOk;
    }

    const int digits = static_cast<int>(s.integer("digits"));
    if (digits < 1 || digits > 10) throw UsageError("--digits must lie in [1, 10]");
    std::vector<ScaleParams> params;
    if (s.has("factor")) {
        ScaleParams fixed{s.has("offset") ? s.real("offset") : 0.0, s.real("factor"), digits};
        if (!(fixed.factor > 0.0)) throw UsageError("--factor must be > 0");
        params.assign(series.dims(), fixed);
    } else {
        const double headroom = s.real("headroom");
        for (std::size_t c = 0; c < series.dims(); ++c) {
            const auto column = series.column(c);
            params.push_back(fit_scale(column, digits, headroom));
        }
    }
    const auto ints = apply_scale(series.values(), params);
    out << "scaled integers (b=" << digits << "):\n";
    for (std::size_t c = 0; c < series.dims(); ++c) {
        out << "  " << series.dim_names()[c] << " (offset=" << summarize(params[c].offset)
            << " factor=" << summarize(params[c].factor) << "):";
        for (std::size_t r = 0; r < ints.rows(); ++r) out << " " << ints(r, c);
        out << "\n";
    }
    const MuxLayout layout{scheme, series.dims(), digits};
    out << "multiplexed (" << to_string(scheme) << "):\n" << mux(ints, layout) << "\n";
    return kOk;
}

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidConfig:
        case ErrorCode::AlphabetTooSmall:
        case ErrorCode::DigitalAlphabetOverflow: return kUsage;
        case ErrorCode::Io: return kIo;
        case ErrorCode::BackendUnreachable:
        case ErrorCode::Timeout:
        case ErrorCode::ConstraintUnsupported:
        case ErrorCode::HttpStatus:
        case ErrorCode::MalformedResponse:
        case ErrorCode::AllSamplesInvalid: return kBackend;
        default: return kData;
    }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Multivariate time-series forecasting through multiplexed digit or SAX token "
                 "streams sampled from a text-generation backend.",
                 "multicast"};
    app.require_subcommand(1);
    app.footer(kPrecedence);
    app.set_version_flag("--version", "multicast 0.1.0");

    auto* forecast_cmd = app.add_subcommand("forecast", "Forecast the rows that follow a CSV series");
    Settings forecast_settings(*forecast_cmd, "forecast");
    forecast_settings.option("input", "Input CSV (header of dimension names, numeric rows)");
    forecast_settings.option("horizon", "Number of future timestamps to predict");
    forecast_settings.option("output", "Forecast CSV to write");
    forecast_settings.option("oracle-future", "CSV of true future rows (oracle backend)");
    add_encoding_options(forecast_settings);
    add_backend_options(forecast_settings);
    forecast_cmd->footer(kPrecedence);

    auto* evaluate_cmd = app.add_subcommand("evaluate", "Score methods on a held-out tail of a CSV series");
    Settings evaluate_settings(*evaluate_cmd, "evaluate");
    evaluate_settings.option("input", "Input CSV");
    evaluate_settings.option("test-len", "Held-out rows (default ceil(0.2 n))");
    evaluate_settings.option("methods", "Comma-separated methods: " + std::string(valid_method_names()),
                             kDefaultMethods);
    evaluate_settings.option("report", "Report JSON path", "report.json");
    evaluate_settings.option("table", "Text table path (default: report path with .txt)");
    evaluate_settings.option("plots", "Directory for one SVG (+ CSV) per dimension");
    evaluate_settings.option("ar-order", "Order p of the AR baseline", "5");
    evaluate_settings.flag("no-timing", "Record 0 seconds instead of wall-clock time");
    add_encoding_options(evaluate_settings);
    add_backend_options(evaluate_settings);
    evaluate_cmd->footer(kPrecedence);

    auto* inspect_cmd = app.add_subcommand("inspect", "Print scaled values, SAX words and the multiplexed stream");
    Settings inspect_settings(*inspect_cmd, "inspect");
    inspect_settings.option("input", "Input CSV");
    inspect_settings.option("limit", "Only encode the first N rows");
    inspect_settings.option("offset", "Fixed scaling offset (with --factor)");
    inspect_settings.option("factor", "Fixed scaling factor instead of fitting per dimension");
    add_encoding_options(inspect_settings);
    inspect_cmd->footer(kPrecedence);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }

    try {
        if (forecast_cmd->parsed()) {
            forecast_settings.resolve();
            return cmd_forecast(forecast_settings, out);
        }
        if (evaluate_cmd->parsed()) {
            evaluate_settings.resolve();
            return cmd_evaluate(evaluate_settings, out);
        }
        inspect_settings.resolve();
        return cmd_inspect(inspect_settings, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kData;
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv{"multicast"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace multicast::cli
