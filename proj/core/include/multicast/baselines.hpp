#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "multicast/matrix.hpp"
#include "multicast/series.hpp"

namespace multicast {

/// y_t = intercept + sum_i coefficients[i] * y_{t-1-i}
struct ArModel {
    int order = 1;
    std::vector<double> coefficients;
    double intercept = 0.0;
};

inline constexpr int kDefaultArOrder = 5;

/// m copies of the last history value. Throws EmptyHistory.
std::vector<double> persistence_forecast(std::span<const double> history, std::size_t horizon);

/// Conditional least squares over every t >= p, solved through the normal
/// equations with a 1e-8 ridge on the diagonal.
/// Throws TooShort (history shorter than 2p + 1), SingularDesign, InvalidConfig (p < 1).
ArModel ar_fit(std::span<const double> history, int order);

/// Recursive multi-step prediction feeding predictions back as lags. Throws TooShort.
std::vector<double> ar_forecast(const ArModel& model, std::span<const double> history,
                                std::size_t horizon);

/// Column-wise application to a multivariate history.
RealMatrix persistence_forecast(const MultiSeries& history, std::size_t horizon);
RealMatrix ar_forecast(const MultiSeries& history, std::size_t horizon, int order = kDefaultArOrder);

}  // namespace multicast
