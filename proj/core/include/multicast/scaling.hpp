#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "multicast/matrix.hpp"
#include "multicast/series.hpp"

namespace multicast {

/// Affine map from reals to b-digit non-negative integers:
///   int = clamp(round((v - offset) * factor), 0, 10^b - 1)
struct ScaleParams {
    double offset = 0.0;
    double factor = 1.0;
    int digit_budget = 1;

    /// 10^b - 1
    [[nodiscard]] std::int64_t max_int() const;
};

inline constexpr double kDefaultHeadroom = 1.25;

/// offset = min(column); factor = (10^b - 1) / (headroom * (max - min)), or 1 for a
/// constant column. headroom >= 1 leaves room above the history range.
/// Throws EmptyColumn, NonFinite, InvalidConfig.
ScaleParams fit_scale(std::span<const double> column, int digit_budget,
                      double headroom = kDefaultHeadroom);

/// Rounds half away from zero and clamps into [0, 10^b - 1].
std::vector<std::int64_t> apply_scale(std::span<const double> column, const ScaleParams& params);

/// int / factor + offset. Throws OutOfRangeInt for ints outside [0, 10^b - 1].
std::vector<double> invert_scale(std::span<const std::int64_t> ints, const ScaleParams& params);

/// Per-dimension digit-domain form of a MultiSeries.
struct ScaledSeries {
    IntMatrix ints;
    std::vector<ScaleParams> params;
};

ScaledSeries scale_series(const MultiSeries& series, int digit_budget,
                          double headroom = kDefaultHeadroom);

/// Applies already-fitted per-dimension params (e.g. to a future window).
IntMatrix apply_scale(const RealMatrix& values, const std::vector<ScaleParams>& params);

RealMatrix invert_scale(const IntMatrix& ints, const std::vector<ScaleParams>& params);

}  // namespace multicast
