#include "multicast/sax.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/distributions/normal.hpp>

#include "multicast/error.hpp"

namespace multicast {

namespace {

double normal_pdf(double x) {
    if (!std::isfinite(x)) return 0.0;
    return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

void check_alphabet(int alphabet_size) {
    if (alphabet_size < 2) {
        throw Error(ErrorCode::AlphabetTooSmall,
                    "alphabet size must be >= 2, got " + std::to_string(alphabet_size));
    }
}

}  // namespace

NormStats compute_stats(std::span<const double> column) {
    if (column.empty()) throw Error(ErrorCode::EmptyColumn, "cannot normalize an empty column");
    NormStats s;
    const auto [lo, hi] = std::minmax_element(column.begin(), column.end());
    if (*lo == *hi) return {*lo, 0.0};  // summation rounding would leave a spurious std
    for (double v : column) s.mean += v;
    s.mean /= static_cast<double>(column.size());
    double ss = 0.0;
    for (double v : column) ss += (v - s.mean) * (v - s.mean);
    s.std = std::sqrt(ss / static_cast<double>(column.size()));
    return s;
}

std::vector<NormStats> compute_stats(const MultiSeries& series) {
    std::vector<NormStats> out;
    out.reserve(series.dims());
    for (std::size_t c = 0; c < series.dims(); ++c) {
        const auto column = series.column(c);
        out.push_back(compute_stats(column));
    }
    return out;
}

std::vector<double> breakpoints(int alphabet_size) {
    check_alphabet(alphabet_size);
    const boost::math::normal_distribution<double> standard;
    const int a = alphabet_size;
    std::vector<double> cuts(static_cast<std::size_t>(a - 1));
    // Lower half from the quantile, upper half mirrored, so beta_i == -beta_{a-i}.
    for (int i = 1; 2 * i < a; ++i) {
        const double q = boost::math::quantile(standard, static_cast<double>(i) / a);
        cuts[static_cast<std::size_t>(i - 1)] = q;
        cuts[static_cast<std::size_t>(a - i - 1)] = -q;
    }
    if (a % 2 == 0) cuts[static_cast<std::size_t>(a / 2 - 1)] = 0.0;
    return cuts;
}

std::vector<double> symbol_means(int alphabet_size) {
    const auto cuts = breakpoints(alphabet_size);
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> means(static_cast<std::size_t>(alphabet_size));
    for (std::size_t i = 0; i < means.size(); ++i) {
        const double lo = i == 0 ? -inf : cuts[i - 1];
        const double hi = i + 1 == means.size() ? inf : cuts[i];
        // each interval carries probability mass exactly 1/a
        means[i] = (normal_pdf(lo) - normal_pdf(hi)) * alphabet_size;
    }
    return means;
}

std::vector<double> paa(std::span<const double> column, int segment_length) {
    if (segment_length < 1) throw Error(ErrorCode::InvalidConfig, "segment length must be >= 1");
    const auto w = static_cast<std::size_t>(segment_length);
    std::vector<double> out;
    out.reserve((column.size() + w - 1) / w);
    for (std::size_t begin = 0; begin < column.size(); begin += w) {
        const std::size_t end = std::min(begin + w, column.size());
        double sum = 0.0;
        for (std::size_t i = begin; i < end; ++i) sum += column[i];
        out.push_back(sum / static_cast<double>(end - begin));
    }
    return out;
}

int symbolize(double value, std::span<const double> cuts) {
    return static_cast<int>(std::upper_bound(cuts.begin(), cuts.end(), value) - cuts.begin());
}

SaxWord sax_encode(std::span<const double> column, const SaxConfig& config, const NormStats& stats) {
    validate(config);
    std::vector<double> z(column.size());
    for (std::size_t i = 0; i < column.size(); ++i) {
        z[i] = stats.std > 0.0 ? (column[i] - stats.mean) / stats.std : 0.0;
    }
    const auto cuts = breakpoints(config.alphabet_size);
    SaxWord word;
    word.stats = stats;
    word.config = config;
    word.original_length = column.size();
    for (double c : paa(z, config.segment_length)) word.symbols.push_back(symbolize(c, cuts));
    return word;
}

std::vector<SaxWord> sax_encode(const MultiSeries& series, const SaxConfig& config,
                                const std::vector<NormStats>& stats) {
    if (stats.size() != series.dims()) {
        throw Error(ErrorCode::ShapeMismatch, "one NormStats per dimension required");
    }
    std::vector<SaxWord> words;
    words.reserve(series.dims());
    for (std::size_t c = 0; c < series.dims(); ++c) {
        const auto column = series.column(c);
        words.push_back(sax_encode(column, config, stats[c]));
    }
    return words;
}

std::vector<double> sax_decode(const SaxWord& word) {
    const auto means = symbol_means(word.config.alphabet_size);
    const auto w = static_cast<std::size_t>(word.config.segment_length);
    std::vector<double> out;
    out.reserve(word.original_length);
    for (int symbol : word.symbols) {
        if (symbol < 0 || symbol >= word.config.alphabet_size) {
            throw Error(ErrorCode::OutOfRangeInt, "SAX symbol " + std::to_string(symbol) +
                                                      " outside alphabet of size " +
                                                      std::to_string(word.config.alphabet_size));
        }
        const double value = word.stats.std > 0.0
                                 ? means[static_cast<std::size_t>(symbol)] * word.stats.std +
                                       word.stats.mean
                                 : word.stats.mean;
        for (std::size_t k = 0; k < w && out.size() < word.original_length; ++k) {
            out.push_back(value);
        }
    }
    return out;
}

std::string render_symbols(const SaxWord& word, AlphabetKind kind) {
    validate(SaxConfig{word.config.segment_length, word.config.alphabet_size, kind});
    const char first = kind == AlphabetKind::Alphabetical ? 'a' : '0';
    std::string out;
    for (std::size_t i = 0; i < word.symbols.size(); ++i) {
        if (i > 0) out.push_back(',');
        out.push_back(static_cast<char>(first + word.symbols[i]));
    }
    return out;
}

}  // namespace multicast
