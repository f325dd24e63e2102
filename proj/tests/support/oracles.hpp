#pragma once

// Independent reference computations used only by tests. None of these share
// code paths with the library implementation they check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "multicast/matrix.hpp"

namespace multicast::testing {

/// Phi(x) through the complementary error function.
inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

/// Phi^-1(p) by bisection on normal_cdf.
inline double inverse_normal_cdf(double p) {
    double lo = -40.0;
    double hi = 40.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (normal_cdf(mid) < p ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

/// E[Z | lo < Z < hi] for Z ~ N(0,1) by composite Simpson quadrature; infinite
/// bounds are truncated at +-12.
inline double truncated_normal_mean_quadrature(double lo, double hi) {
    lo = std::max(lo, -12.0);
    hi = std::min(hi, 12.0);
    const int n = 20000;  // even
    const double h = (hi - lo) / n;
    const auto pdf = [](double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); };
    double mass = 0.0;
    double moment = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double x = lo + i * h;
        const double w = (i == 0 || i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        mass += w * pdf(x);
        moment += w * x * pdf(x);
    }
    return moment / mass;
}

/// Median by full sort.
inline double sorted_median(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

/// Hand-rolled AR recursion: y_t = c + sum_i a_i y_{t-i}.
inline std::vector<double> ar_recursion(const std::vector<double>& coefficients, double intercept,
                                        std::vector<double> history, std::size_t steps) {
    std::vector<double> out;
    for (std::size_t s = 0; s < steps; ++s) {
        double y = intercept;
        for (std::size_t i = 0; i < coefficients.size(); ++i) {
            y += coefficients[i] * history[history.size() - 1 - i];
        }
        history.push_back(y);
        out.push_back(y);
    }
    return out;
}

/// Uniform random integer matrix with entries in [0, 10^b - 1].
inline IntMatrix random_int_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, int b) {
    std::int64_t top = 1;
    for (int i = 0; i < b; ++i) top *= 10;
    std::uniform_int_distribution<std::int64_t> dist(0, top - 1);
    IntMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = dist(rng);
    }
    return m;
}

/// Per-timestamp decimal digits of a b-digit value, most significant first.
inline std::vector<int> decimal_digits(std::int64_t v, int b) {
    std::vector<int> out(static_cast<std::size_t>(b));
    for (int p = b - 1; p >= 0; --p) {
        out[static_cast<std::size_t>(p)] = static_cast<int>(v % 10);
        v /= 10;
    }
    return out;
}

}  // namespace multicast::testing
