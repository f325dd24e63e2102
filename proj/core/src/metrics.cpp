#include "multicast/metrics.hpp"

#include <cmath>
#include <string>

#include "multicast/error.hpp"

namespace multicast {

double rmse(std::span<const double> actual, std::span<const double> predicted) {
    if (actual.size() != predicted.size()) {
        throw Error(ErrorCode::LengthMismatch, "actual has " + std::to_string(actual.size()) +
                                                   " values, predicted has " +
                                                   std::to_string(predicted.size()));
    }
    if (actual.empty()) throw Error(ErrorCode::EmptyInput, "rmse of empty vectors");
    double sum = 0.0;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        const double e = actual[i] - predicted[i];
        sum += e * e;
    }
    return std::sqrt(sum / static_cast<double>(actual.size()));
}

}  // namespace multicast
