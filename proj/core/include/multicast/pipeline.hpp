#pragma once

#include <chrono>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "multicast/backend.hpp"
#include "multicast/config.hpp"
#include "multicast/multiplex.hpp"
#include "multicast/sax.hpp"
#include "multicast/scaling.hpp"

namespace multicast {

struct ForecastResult {
    RealMatrix forecast;                // horizon x d, median-aggregated
    std::vector<RealMatrix> per_sample; // valid samples only, <= horizon rows each
    int valid_sample_count = 0;
    std::chrono::duration<double> elapsed{0.0};
    std::string config_fingerprint;
};

/// Everything needed to talk to a backend about one history window and to map
/// its answers back to reals.
struct PromptPlan {
    std::string prompt;  // multiplexed history plus a trailing separator
    MuxLayout layout;
    TokenVocabulary vocab = TokenVocabulary::digits();
    GenerationConstraint constraint;
    std::size_t horizon = 0;
    std::size_t target_rows = 0;  // timestamps (digit mode) or segments (SAX mode)
    IntMatrix encoded_history;    // scaled ints or SAX symbol indices
    std::vector<ScaleParams> scale;  // digit mode
    std::vector<NormStats> stats;    // SAX mode
    std::optional<SaxConfig> sax;
};

/// Stages 1-4: scale or SAX-quantize, multiplex, derive the generation constraint.
PromptPlan plan_prompt(const MultiSeries& history, std::size_t horizon, const PipelineConfig& config);

/// Encodes a known future exactly as the backend would be expected to continue
/// `plan.prompt`. This is what the Oracle backend hides.
std::string encode_continuation(const PromptPlan& plan, const MultiSeries& future);

/// Convenience: plan_prompt + encode_continuation.
std::string oracle_continuation(const MultiSeries& history, const MultiSeries& future,
                                const PipelineConfig& config);

/// Demultiplexes and maps one continuation back to reals (<= horizon rows).
/// Throws NoCompleteTimestamp when nothing parses.
RealMatrix decode_continuation(const PromptPlan& plan, std::string_view continuation);

/// Arithmetic median; even counts average the central pair. Throws EmptyInput.
double median(std::vector<double> values);

/// Cellwise median over samples covering each (row, dim); uncovered cells
/// forward-fill the previous row (or `last_history` for the first row).
RealMatrix aggregate_samples(const std::vector<RealMatrix>& samples, std::size_t horizon,
                             std::span<const double> last_history);

/// End-to-end multivariate forecast through `backend`.
/// Throws AllSamplesInvalid when no sample yields a complete timestamp.
ForecastResult forecast(const ForecastRequest& request, const Backend& backend);

/// Runs the pipeline separately on every dimension (d = 1 each) and stitches the
/// columns: the univariate digit-stream baseline. `backend_for` picks the backend
/// used for dimension j.
using BackendProvider = std::function<const Backend&(std::size_t dim)>;
ForecastResult forecast_per_dimension(const ForecastRequest& request,
                                      const BackendProvider& backend_for);

}  // namespace multicast
