#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "multicast/config.hpp"
#include "multicast/matrix.hpp"

namespace multicast {

/// Ordered symbol set plus the timestamp/value separator.
///
/// A value is rendered as exactly `b` symbols in base `symbols.size()`, most
/// significant first. With the decimal vocabulary that is zero-padded b-digit
/// decimal; a SAX alphabet of size a with b = 1 maps index i to symbols[i].
class TokenVocabulary {
public:
    TokenVocabulary(std::string symbols, char separator);

    static TokenVocabulary digits();
    static TokenVocabulary sax(int alphabet_size, AlphabetKind kind);

    [[nodiscard]] const std::string& symbols() const noexcept { return symbols_; }
    [[nodiscard]] char separator() const noexcept { return separator_; }
    [[nodiscard]] std::size_t base() const noexcept { return symbols_.size(); }

    /// Index of `c` in symbols, or -1.
    [[nodiscard]] int index_of(char c) const noexcept;
    [[nodiscard]] bool is_symbol(char c) const noexcept { return index_of(c) >= 0; }
    [[nodiscard]] bool allows(char c) const noexcept { return c == separator_ || is_symbol(c); }

    /// symbols + separator.
    [[nodiscard]] std::string allowed_chars() const;

private:
    std::string symbols_;
    char separator_;
    int lookup_[256];
};

struct MuxLayout {
    MuxScheme scheme = MuxScheme::VI;
    std::size_t dims = 1;
    int width = 1;  // b: symbols per value

    /// Characters of one timestamp group, excluding the trailing separator.
    [[nodiscard]] std::size_t chars_per_timestamp() const noexcept;
    /// Exact length of an encoding of `timestamps` rows.
    [[nodiscard]] std::size_t encoded_length(std::size_t timestamps) const noexcept;
};

/// Digit-position-major, dimension-minor within each timestamp.
std::string mux_di(const IntMatrix& scaled, const MuxLayout& layout,
                   const TokenVocabulary& vocab = TokenVocabulary::digits());
/// Whole b-digit values of each dimension concatenated per timestamp.
std::string mux_vi(const IntMatrix& scaled, const MuxLayout& layout,
                   const TokenVocabulary& vocab = TokenVocabulary::digits());
/// Every value separated, row-major.
std::string mux_vc(const IntMatrix& scaled, const MuxLayout& layout,
                   const TokenVocabulary& vocab = TokenVocabulary::digits());

/// Dispatches on layout.scheme.
std::string mux(const IntMatrix& scaled, const MuxLayout& layout,
                const TokenVocabulary& vocab = TokenVocabulary::digits());

struct DemuxResult {
    IntMatrix values;  // complete_timestamps x d
    std::size_t complete_timestamps = 0;
};

/// Parses greedily from the left, stopping at the first malformed chunk, and
/// keeps only complete timestamps. Throws NoCompleteTimestamp when nothing parses.
DemuxResult demux(std::string_view continuation, const MuxLayout& layout,
                  const TokenVocabulary& vocab = TokenVocabulary::digits());

}  // namespace multicast
