#include "multicast/multiplex.hpp"

#include <algorithm>
#include <limits>
#include <vector>

#include "multicast/error.hpp"

namespace multicast {

TokenVocabulary::TokenVocabulary(std::string symbols, char separator)
    : symbols_(std::move(symbols)), separator_(separator) {
    std::fill(std::begin(lookup_), std::end(lookup_), -1);
    if (symbols_.size() < 2) {
        throw Error(ErrorCode::InvalidConfig, "vocabulary needs at least two symbols");
    }
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
        const auto c = static_cast<unsigned char>(symbols_[i]);
        if (symbols_[i] == separator_) {
            throw Error(ErrorCode::InvalidConfig, "separator must not be a vocabulary symbol");
        }
        if (lookup_[c] >= 0) throw Error(ErrorCode::InvalidConfig, "duplicate vocabulary symbol");
        lookup_[c] = static_cast<int>(i);
    }
}

TokenVocabulary TokenVocabulary::digits() { return {"0123456789", ','}; }

TokenVocabulary TokenVocabulary::sax(int alphabet_size, AlphabetKind kind) {
    validate(SaxConfig{1, alphabet_size, kind});
    std::string symbols;
    const char first = kind == AlphabetKind::Alphabetical ? 'a' : '0';
    for (int i = 0; i < alphabet_size; ++i) symbols.push_back(static_cast<char>(first + i));
    return {std::move(symbols), ','};
}

int TokenVocabulary::index_of(char c) const noexcept {
    return lookup_[static_cast<unsigned char>(c)];
}

std::string TokenVocabulary::allowed_chars() const { return symbols_ + separator_; }

std::size_t MuxLayout::chars_per_timestamp() const noexcept {
    const std::size_t values = dims * static_cast<std::size_t>(width);
    return scheme == MuxScheme::VC ? values + (dims - 1) : values;
}

std::size_t MuxLayout::encoded_length(std::size_t timestamps) const noexcept {
    if (timestamps == 0) return 0;
    return timestamps * chars_per_timestamp() + (timestamps - 1);
}

namespace {

void check_layout(const IntMatrix& scaled, const MuxLayout& layout) {
    if (layout.dims < 1 || layout.width < 1) {
        throw Error(ErrorCode::InvalidConfig, "layout requires d >= 1 and b >= 1");
    }
    if (scaled.cols() != layout.dims) {
        throw Error(ErrorCode::ShapeMismatch, "matrix has " + std::to_string(scaled.cols()) +
                                                  " columns, layout expects " +
                                                  std::to_string(layout.dims));
    }
}

/// Renders every value of `scaled` into b symbols; out[(r*d + c)*b + p].
std::vector<char> render_values(const IntMatrix& scaled, const MuxLayout& layout,
                                const TokenVocabulary& vocab) {
    check_layout(scaled, layout);
    const auto base = static_cast<std::int64_t>(vocab.base());
    const auto b = static_cast<std::size_t>(layout.width);
    // base^b, saturated
    std::int64_t limit = 1;
    for (std::size_t p = 0; p < b && limit <= std::numeric_limits<std::int64_t>::max() / base; ++p) {
        limit *= base;
    }
    std::vector<char> out(scaled.rows() * scaled.cols() * b);
    for (std::size_t r = 0; r < scaled.rows(); ++r) {
        for (std::size_t c = 0; c < scaled.cols(); ++c) {
            std::int64_t v = scaled(r, c);
            if (v < 0 || v >= limit) {
                throw Error(ErrorCode::DigitOverflow, "value " + std::to_string(v) + " at (" +
                                                          std::to_string(r) + ", " +
                                                          std::to_string(c) + ") does not fit in " +
                                                          std::to_string(b) + " symbols");
            }
            char* slot = out.data() + (r * scaled.cols() + c) * b;
            for (std::size_t p = b; p-- > 0;) {
                slot[p] = vocab.symbols()[static_cast<std::size_t>(v % base)];
                v /= base;
            }
        }
    }
    return out;
}

}  // namespace

std::string mux_di(const IntMatrix& scaled, const MuxLayout& layout, const TokenVocabulary& vocab) {
    const auto rendered = render_values(scaled, layout, vocab);
    const std::size_t d = layout.dims;
    const auto b = static_cast<std::size_t>(layout.width);
    std::string out;
    out.reserve(layout.encoded_length(scaled.rows()));
    for (std::size_t r = 0; r < scaled.rows(); ++r) {
        if (r > 0) out.push_back(vocab.separator());
        for (std::size_t p = 0; p < b; ++p) {
            for (std::size_t k = 0; k < d; ++k) out.push_back(rendered[(r * d + k) * b + p]);
        }
    }
    return out;
}

std::string mux_vi(const IntMatrix& scaled, const MuxLayout& layout, const TokenVocabulary& vocab) {
    const auto rendered = render_values(scaled, layout, vocab);
    const std::size_t group = layout.dims * static_cast<std::size_t>(layout.width);
    std::string out;
    out.reserve(layout.encoded_length(scaled.rows()));
    for (std::size_t r = 0; r < scaled.rows(); ++r) {
        if (r > 0) out.push_back(vocab.separator());
        out.append(rendered.data() + r * group, group);
    }
    return out;
}

std::string mux_vc(const IntMatrix& scaled, const MuxLayout& layout, const TokenVocabulary& vocab) {
    const auto rendered = render_values(scaled, layout, vocab);
    const auto b = static_cast<std::size_t>(layout.width);
    const std::size_t count = scaled.rows() * scaled.cols();
    std::string out;
    out.reserve(layout.encoded_length(scaled.rows()));
    for (std::size_t i = 0; i < count; ++i) {
        if (i > 0) out.push_back(vocab.separator());
        out.append(rendered.data() + i * b, b);
    }
    return out;
}

std::string mux(const IntMatrix& scaled, const MuxLayout& layout, const TokenVocabulary& vocab) {
    switch (layout.scheme) {
        case MuxScheme::DI: return mux_di(scaled, layout, vocab);
        case MuxScheme::VI: return mux_vi(scaled, layout, vocab);
        case MuxScheme::VC: return mux_vc(scaled, layout, vocab);
    }
    throw Error(ErrorCode::InvalidConfig, "unknown multiplexing scheme");
}

namespace {

/// Decodes `width` symbols into a value; false if any char is not a symbol.
bool decode_value(std::string_view chars, const TokenVocabulary& vocab, std::int64_t& value) {
    const auto base = static_cast<std::int64_t>(vocab.base());
    value = 0;
    for (char c : chars) {
        const int idx = vocab.index_of(c);
        if (idx < 0) return false;
        value = value * base + idx;
    }
    return true;
}

}  // namespace

DemuxResult demux(std::string_view continuation, const MuxLayout& layout,
                  const TokenVocabulary& vocab) {
    if (layout.dims < 1 || layout.width < 1) {
        throw Error(ErrorCode::InvalidConfig, "layout requires d >= 1 and b >= 1");
    }
    const std::size_t d = layout.dims;
    const auto b = static_cast<std::size_t>(layout.width);
    const char sep = vocab.separator();

    DemuxResult result;
    result.values = IntMatrix(0, d);
    std::vector<std::int64_t> row(d);

    std::size_t pos = 0;
    std::size_t filled = 0;  // VC: values collected for the current row
    while (pos <= continuation.size()) {
        const std::size_t end = std::min(continuation.find(sep, pos), continuation.size());
        const std::string_view chunk = continuation.substr(pos, end - pos);

        bool ok = true;
        if (layout.scheme == MuxScheme::VC) {
            ok = chunk.size() == b && decode_value(chunk, vocab, row[filled]);
            if (ok && ++filled == d) {
                result.values.append_row(row);
                filled = 0;
            }
        } else {
            ok = chunk.size() == d * b;
            for (std::size_t k = 0; ok && k < d; ++k) {
                std::int64_t value = 0;
                const auto base = static_cast<std::int64_t>(vocab.base());
                for (std::size_t p = 0; ok && p < b; ++p) {
                    const std::size_t at = layout.scheme == MuxScheme::DI ? p * d + k : k * b + p;
                    const int idx = vocab.index_of(chunk[at]);
                    ok = idx >= 0;
                    value = value * base + idx;
                }
                row[k] = value;
            }
            if (ok) result.values.append_row(row);
        }
        if (!ok || end == continuation.size()) break;
        pos = end + 1;
    }

    result.complete_timestamps = result.values.rows();
    if (result.complete_timestamps == 0) {
        throw Error(ErrorCode::NoCompleteTimestamp, "continuation contains no complete timestamp");
    }
    return result;
}

}  // namespace multicast
