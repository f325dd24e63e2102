#pragma once

#include <span>

namespace multicast {

/// sqrt(sum (y_i - yhat_i)^2 / n). Throws LengthMismatch, EmptyInput.
double rmse(std::span<const double> actual, std::span<const double> predicted);

}  // namespace multicast
