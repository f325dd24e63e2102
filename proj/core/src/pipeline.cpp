#include "multicast/pipeline.hpp"

#include <algorithm>

#include "multicast/error.hpp"

namespace multicast {

PromptPlan plan_prompt(const MultiSeries& history, std::size_t horizon,
                       const PipelineConfig& config) {
    validate(config);
    if (horizon < 1) throw Error(ErrorCode::InvalidConfig, "forecast horizon must be >= 1");

    PromptPlan plan;
    plan.horizon = horizon;
    plan.sax = config.sax;
    plan.layout.scheme = config.mux_scheme;
    plan.layout.dims = history.dims();

    if (config.sax) {
        const SaxConfig& sax = *config.sax;
        plan.stats = compute_stats(history);
        const auto words = sax_encode(history, sax, plan.stats);
        std::vector<std::vector<std::int64_t>> columns;
        for (const auto& word : words) columns.emplace_back(word.symbols.begin(), word.symbols.end());
        plan.encoded_history = IntMatrix::from_columns(columns);
        plan.layout.width = 1;
        plan.vocab = TokenVocabulary::sax(sax.alphabet_size, sax.alphabet_kind);
        const auto w = static_cast<std::size_t>(sax.segment_length);
        plan.target_rows = (horizon + w - 1) / w;
    } else {
        auto scaled = scale_series(history, config.digit_budget, config.headroom);
        plan.encoded_history = std::move(scaled.ints);
        plan.scale = std::move(scaled.params);
        plan.layout.width = config.digit_budget;
        plan.vocab = TokenVocabulary::digits();
        plan.target_rows = horizon;
    }

    plan.prompt = mux(plan.encoded_history, plan.layout, plan.vocab);
    plan.prompt.push_back(plan.vocab.separator());

    const std::size_t exact = plan.layout.encoded_length(plan.target_rows);
    plan.constraint.allowed_chars = plan.vocab.allowed_chars();
    plan.constraint.max_chars = exact + (exact + 9) / 10;  // +10%, rounded up
    plan.constraint.stop_after_timestamps = plan.target_rows;
    return plan;
}

std::string encode_continuation(const PromptPlan& plan, const MultiSeries& future) {
    if (future.dims() != plan.layout.dims) {
        throw Error(ErrorCode::ShapeMismatch, "future dimensionality differs from history");
    }
    if (plan.sax) {
        const auto words = sax_encode(future, *plan.sax, plan.stats);
        std::vector<std::vector<std::int64_t>> columns;
        for (const auto& word : words) columns.emplace_back(word.symbols.begin(), word.symbols.end());
        return mux(IntMatrix::from_columns(columns), plan.layout, plan.vocab);
    }
    return mux(apply_scale(future.values(), plan.scale), plan.layout, plan.vocab);
}

std::string oracle_continuation(const MultiSeries& history, const MultiSeries& future,
                                const PipelineConfig& config) {
    return encode_continuation(plan_prompt(history, future.length(), config), future);
}

RealMatrix decode_continuation(const PromptPlan& plan, std::string_view continuation) {
    const auto parsed = demux(continuation, plan.layout, plan.vocab);
    const std::size_t rows = std::min(parsed.complete_timestamps, plan.target_rows);
    const IntMatrix ints = parsed.values.slice_rows(0, rows);

    if (!plan.sax) return invert_scale(ints, plan.scale);

    const auto w = static_cast<std::size_t>(plan.sax->segment_length);
    const std::size_t out_rows = std::min(rows * w, plan.horizon);
    std::vector<std::vector<double>> columns;
    for (std::size_t c = 0; c < ints.cols(); ++c) {
        SaxWord word;
        for (std::size_t r = 0; r < rows; ++r) word.symbols.push_back(static_cast<int>(ints(r, c)));
        word.stats = plan.stats[c];
        word.config = *plan.sax;
        word.original_length = out_rows;
        columns.push_back(sax_decode(word));
    }
    return RealMatrix::from_columns(columns);
}

double median(std::vector<double> values) {
    if (values.empty()) throw Error(ErrorCode::EmptyInput, "median of an empty set");
    const std::size_t mid = values.size() / 2;
    std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
    const double upper = values[mid];
    if (values.size() % 2 == 1) return upper;
    const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
    return (lower + upper) / 2.0;
}

RealMatrix aggregate_samples(const std::vector<RealMatrix>& samples, std::size_t horizon,
                             std::span<const double> last_history) {
    const std::size_t d = last_history.size();
    RealMatrix out(horizon, d);
    std::vector<double> cell;
    for (std::size_t r = 0; r < horizon; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            cell.clear();
            for (const auto& s : samples) {
                if (r < s.rows()) cell.push_back(s(r, c));
            }
            if (!cell.empty()) {
                out(r, c) = median(cell);
            } else {
                out(r, c) = r == 0 ? last_history[c] : out(r - 1, c);
            }
        }
    }
    return out;
}

ForecastResult forecast(const ForecastRequest& request, const Backend& backend) {
    validate(request);
    const auto started = std::chrono::steady_clock::now();

    const PromptPlan plan = plan_prompt(request.history, request.horizon, request.config);
    const auto continuations = backend.sample_continuations(
        plan.prompt, request.config.num_samples, plan.constraint, request.config.sampling);

    ForecastResult result;
    for (const auto& text : continuations) {
        try {
            result.per_sample.push_back(decode_continuation(plan, text));
        } catch (const Error& e) {
            if (e.code() != ErrorCode::NoCompleteTimestamp) throw;
        }
    }
    result.valid_sample_count = static_cast<int>(result.per_sample.size());
    if (result.per_sample.empty()) {
        throw Error(ErrorCode::AllSamplesInvalid,
                    "none of " + std::to_string(continuations.size()) +
                        " samples contained a complete timestamp");
    }

    const auto last = request.history.values().row(request.history.length() - 1);
    result.forecast = aggregate_samples(result.per_sample, request.horizon, last);
    result.config_fingerprint = fingerprint(request.config);
    result.elapsed = std::chrono::steady_clock::now() - started;
    return result;
}

ForecastResult forecast_per_dimension(const ForecastRequest& request,
                                      const BackendProvider& backend_for) {
    validate(request);
    const auto started = std::chrono::steady_clock::now();
    const std::size_t d = request.history.dims();

    std::vector<std::vector<double>> columns;
    std::vector<std::vector<std::vector<double>>> sample_columns;  // [sample][dim][row]
    ForecastResult result;
    result.valid_sample_count = request.config.num_samples;
    for (std::size_t c = 0; c < d; ++c) {
        ForecastRequest sub{request.history.select_columns({c}), request.horizon, request.config};
        const ForecastResult part = forecast(sub, backend_for(c));
        columns.push_back(part.forecast.column(0));
        result.valid_sample_count = std::min(result.valid_sample_count, part.valid_sample_count);
        if (sample_columns.size() < part.per_sample.size()) sample_columns.resize(part.per_sample.size());
        for (std::size_t s = 0; s < part.per_sample.size(); ++s) {
            sample_columns[s].resize(d);
            sample_columns[s][c] = part.per_sample[s].column(0);
        }
    }
    result.forecast = RealMatrix::from_columns(columns);

    // Per-sample diagnostics are only well-formed up to the shortest column.
    for (const auto& sample : sample_columns) {
        std::size_t rows = request.horizon;
        for (const auto& col : sample) rows = std::min(rows, col.size());
        RealMatrix m(rows, d);
        for (std::size_t c = 0; c < d; ++c) {
            for (std::size_t r = 0; r < rows; ++r) m(r, c) = sample[c][r];
        }
        result.per_sample.push_back(std::move(m));
    }
    result.config_fingerprint = fingerprint(request.config) + ";per_dimension";
    result.elapsed = std::chrono::steady_clock::now() - started;
    return result;
}

}  // namespace multicast
