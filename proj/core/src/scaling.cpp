#include "multicast/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "multicast/error.hpp"

namespace multicast {

namespace {

std::int64_t pow10(int b) {
    std::int64_t p = 1;
    for (int i = 0; i < b; ++i) p *= 10;
    return p;
}

void check_budget(int digit_budget) {
    if (digit_budget < 1 || digit_budget > 10) {
        throw Error(ErrorCode::InvalidConfig,
                    "digit budget must lie in [1, 10], got " + std::to_string(digit_budget));
    }
}

}  // namespace

std::int64_t ScaleParams::max_int() const { return pow10(digit_budget) - 1; }

ScaleParams fit_scale(std::span<const double> column, int digit_budget, double headroom) {
    check_budget(digit_budget);
    if (!(headroom >= 1.0) || !std::isfinite(headroom)) {
        throw Error(ErrorCode::InvalidConfig, "headroom must be a finite value >= 1");
    }
    if (column.empty()) throw Error(ErrorCode::EmptyColumn, "cannot fit scale on an empty column");
    for (std::size_t i = 0; i < column.size(); ++i) {
        if (!std::isfinite(column[i])) {
            throw Error(ErrorCode::NonFinite, "non-finite value at index " + std::to_string(i));
        }
    }
    const auto [lo, hi] = std::minmax_element(column.begin(), column.end());
    ScaleParams params;
    params.offset = *lo;
    params.digit_budget = digit_budget;
    const double range = *hi - *lo;
    params.factor = range > 0.0
                        ? static_cast<double>(pow10(digit_budget) - 1) / (headroom * range)
                        : 1.0;
    if (!std::isfinite(params.factor) || params.factor <= 0.0) params.factor = 1.0;
    return params;
}

std::vector<std::int64_t> apply_scale(std::span<const double> column, const ScaleParams& params) {
    const auto top = static_cast<double>(params.max_int());
    std::vector<std::int64_t> out;
    out.reserve(column.size());
    for (double v : column) {
        // std::round is half-away-from-zero regardless of the FP rounding mode.
        const double r = std::round((v - params.offset) * params.factor);
        out.push_back(static_cast<std::int64_t>(std::clamp(r, 0.0, top)));
    }
    return out;
}

std::vector<double> invert_scale(std::span<const std::int64_t> ints, const ScaleParams& params) {
    const std::int64_t top = params.max_int();
    std::vector<double> out;
    out.reserve(ints.size());
    for (std::size_t i = 0; i < ints.size(); ++i) {
        if (ints[i] < 0 || ints[i] > top) {
            throw Error(ErrorCode::OutOfRangeInt, "value " + std::to_string(ints[i]) +
                                                      " at index " + std::to_string(i) +
                                                      " exceeds " + std::to_string(top));
        }
        out.push_back(static_cast<double>(ints[i]) / params.factor + params.offset);
    }
    return out;
}

ScaledSeries scale_series(const MultiSeries& series, int digit_budget, double headroom) {
    ScaledSeries out;
    out.params.reserve(series.dims());
    for (std::size_t c = 0; c < series.dims(); ++c) {
        const auto column = series.column(c);
        out.params.push_back(fit_scale(column, digit_budget, headroom));
    }
    out.ints = apply_scale(series.values(), out.params);
    return out;
}

IntMatrix apply_scale(const RealMatrix& values, const std::vector<ScaleParams>& params) {
    if (params.size() != values.cols()) {
        throw Error(ErrorCode::ShapeMismatch, "one ScaleParams per column required");
    }
    IntMatrix out(values.rows(), values.cols());
    for (std::size_t c = 0; c < values.cols(); ++c) {
        const auto column = values.column(c);
        const auto ints = apply_scale(column, params[c]);
        for (std::size_t r = 0; r < values.rows(); ++r) out(r, c) = ints[r];
    }
    return out;
}

RealMatrix invert_scale(const IntMatrix& ints, const std::vector<ScaleParams>& params) {
    if (params.size() != ints.cols()) {
        throw Error(ErrorCode::ShapeMismatch, "one ScaleParams per column required");
    }
    RealMatrix out(ints.rows(), ints.cols());
    for (std::size_t c = 0; c < ints.cols(); ++c) {
        const auto column = ints.column(c);
        const auto reals = invert_scale(column, params[c]);
        for (std::size_t r = 0; r < ints.rows(); ++r) out(r, c) = reals[r];
    }
    return out;
}

}  // namespace multicast
