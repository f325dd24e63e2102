#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "multicast/baselines.hpp"
#include "multicast/config.hpp"
#include "multicast/dataset.hpp"
#include "multicast/report.hpp"

namespace multicast {

enum class MethodKind { Persistence, Ar, MultiCast, LlmTime, External };

struct MethodSpec {
    std::string name;
    MethodKind kind = MethodKind::Persistence;
    MuxScheme scheme = MuxScheme::VI;  // MultiCast only
    std::string external_path;         // External only: CSV with the forecast rows
};

/// persistence | ar | llmtime | multicast-di | multicast-vi | multicast-vc | external:<csv>
/// Throws InvalidConfig listing the valid names.
MethodSpec parse_method(std::string_view text);

/// Names accepted by parse_method, for help and error text.
std::string_view valid_method_names() noexcept;

struct BenchmarkConfig {
    std::size_t test_len = 0;  // 0 -> default_test_len(n)
    PipelineConfig pipeline;
    int ar_order = kDefaultArOrder;
    bool record_timing = true;  // false writes 0 seconds, for byte-stable reports
};

/// Splits the dataset, runs every method on the history, and scores it against the
/// held-out rows. A failing method is recorded with its error; the run continues.
/// Oracle backends are built per method from the held-out rows.
ForecastReport run_benchmark(const Dataset& dataset, const std::vector<MethodSpec>& methods,
                             const BenchmarkConfig& config);

}  // namespace multicast
