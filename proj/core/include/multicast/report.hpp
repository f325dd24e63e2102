#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "multicast/matrix.hpp"

namespace multicast {

struct MethodResult {
    std::string name;
    // dimension name -> RMSE, in dimension order; nullopt when the method failed
    std::vector<std::pair<std::string, std::optional<double>>> per_dim_rmse;
    double seconds = 0.0;
    std::optional<std::string> error;
    RealMatrix predictions;  // horizon x d; empty on failure
    int valid_samples = -1;  // LLM-backed methods only

    friend bool operator==(const MethodResult&, const MethodResult&) = default;
};

struct ForecastReport {
    std::string dataset;
    std::map<std::string, std::string> config;
    std::vector<std::string> dim_names;
    std::vector<MethodResult> methods;

    [[nodiscard]] std::size_t rmse_cells() const;

    friend bool operator==(const ForecastReport&, const ForecastReport&) = default;
};

/// {dataset, config, dims, methods: [{name, per_dim_rmse: {dim: value}, seconds,
/// error?, valid_samples?, predictions}]}, pretty-printed with a trailing newline.
std::string to_json(const ForecastReport& report);

/// Inverse of to_json. Throws ParseError.
ForecastReport report_from_json(std::string_view text);

/// Aligned plain-text table: one row per method, one column per dimension plus
/// seconds. Best RMSE per dimension is wrapped in **...**, second best in _..._.
std::string to_text_table(const ForecastReport& report);

}  // namespace multicast
