#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "multicast/config.hpp"
#include "multicast/series.hpp"

namespace multicast {

/// z-normalization statistics of one dimension, taken from history only.
struct NormStats {
    double mean = 0.0;
    double std = 0.0;  // population standard deviation
};

NormStats compute_stats(std::span<const double> column);
std::vector<NormStats> compute_stats(const MultiSeries& series);

/// One dimension quantized to symbol indices in [0, a).
struct SaxWord {
    std::vector<int> symbols;  // ceil(original_length / w) entries
    NormStats stats;
    SaxConfig config;
    std::size_t original_length = 0;
};

/// Standard normal quantiles Phi^-1(i/a), i = 1..a-1, strictly increasing and
/// exactly antisymmetric. Throws AlphabetTooSmall for a < 2.
std::vector<double> breakpoints(int alphabet_size);

/// Mean of N(0,1) truncated to each of the a equiprobable intervals.
std::vector<double> symbol_means(int alphabet_size);

/// Piecewise aggregate approximation: means of consecutive w-point segments; a
/// short tail segment averages only the points it has.
std::vector<double> paa(std::span<const double> column, int segment_length);

/// Index of the interval containing `value`: the number of breakpoints <= value.
int symbolize(double value, std::span<const double> cuts);

SaxWord sax_encode(std::span<const double> column, const SaxConfig& config, const NormStats& stats);

/// One SaxWord per dimension. `stats` must hold one entry per dimension.
std::vector<SaxWord> sax_encode(const MultiSeries& series, const SaxConfig& config,
                                const std::vector<NormStats>& stats);

/// Reconstructs original_length reals: truncated-interval mean per symbol,
/// de-normalized, each segment repeated w times.
std::vector<double> sax_decode(const SaxWord& word);

/// "a,b,c" or "0,1,2". Throws DigitalAlphabetOverflow for a > 10 with Digital.
std::string render_symbols(const SaxWord& word, AlphabetKind kind);

}  // namespace multicast
