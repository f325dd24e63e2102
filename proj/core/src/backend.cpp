#include "multicast/backend.hpp"

#include <algorithm>
#include <random>

#include "multicast/error.hpp"
#include "multicast/http_backend.hpp"

namespace multicast {

std::string GenerationConstraint::enforce(std::string_view text) const {
    std::size_t n = 0;
    const std::size_t limit = std::min(text.size(), max_chars);
    while (n < limit && allows(text[n])) ++n;
    return std::string(text.substr(0, n));
}

namespace {

constexpr std::size_t kMaxSuffix = 64;

void check_request(const std::string& prompt, int n, const GenerationConstraint& constraint) {
    if (n < 1) throw Error(ErrorCode::InvalidConfig, "sample count must be >= 1");
    if (constraint.allowed_chars.empty()) {
        throw Error(ErrorCode::InvalidConfig, "generation constraint allows no characters");
    }
    for (char c : prompt) {
        if (!constraint.allows(c)) {
            throw Error(ErrorCode::InvalidConfig,
                        std::string("prompt contains disallowed character '") + c + "'");
        }
    }
}

/// Separator = the allowed character that is not alphanumeric, if any.
std::optional<char> separator_of(const GenerationConstraint& constraint) {
    for (char c : constraint.allowed_chars) {
        if (!std::isalnum(static_cast<unsigned char>(c))) return c;
    }
    return std::nullopt;
}

std::string repeat_last_chunk(std::string_view prompt, const GenerationConstraint& constraint) {
    const auto sep = separator_of(constraint);
    std::string_view body = prompt;
    if (sep && !body.empty() && body.back() == *sep) body.remove_suffix(1);
    std::string_view chunk = body;
    if (sep) {
        const auto cut = body.rfind(*sep);
        if (cut != std::string_view::npos) chunk = body.substr(cut + 1);
    }
    std::string unit(chunk);
    if (sep) unit.push_back(*sep);
    if (unit.empty()) return {};
    std::string out;
    out.reserve(constraint.max_chars);
    while (out.size() < constraint.max_chars) out.push_back(unit[out.size() % unit.size()]);
    return out;
}

}  // namespace

std::string mock_predict(std::string_view prompt, const GenerationConstraint& constraint,
                         const SamplingParams& params, std::uint64_t sample_index) {
    if (prompt.empty() || constraint.max_chars == 0) return {};
    const std::size_t len = prompt.size();
    const std::size_t longest = std::min(kMaxSuffix, len - 1);

    for (std::size_t l = longest; l >= 1; --l) {
        const std::string_view suffix = prompt.substr(len - l);
        // earlier occurrences start at p with p + l < len
        std::vector<std::size_t> starts;
        for (std::size_t p = prompt.find(suffix); p != std::string_view::npos && p + l < len;
             p = prompt.find(suffix, p + 1)) {
            starts.push_back(p);
        }
        if (starts.empty()) continue;

        std::size_t start = starts.back();
        if (starts.size() > 1) {
            std::seed_seq seq{static_cast<std::uint32_t>(params.seed.value_or(0)),
                              static_cast<std::uint32_t>(params.seed.value_or(0) >> 32),
                              static_cast<std::uint32_t>(sample_index),
                              static_cast<std::uint32_t>(sample_index >> 32)};
            std::mt19937_64 rng(seq);
            start = starts[rng() % starts.size()];
        }
        const std::size_t from = start + l;
        const std::size_t period = len - from;
        std::string out;
        out.reserve(constraint.max_chars);
        while (out.size() < constraint.max_chars) out.push_back(prompt[from + out.size() % period]);
        return constraint.enforce(out);
    }
    return constraint.enforce(repeat_last_chunk(prompt, constraint));
}

std::vector<std::string> MockBackend::sample_continuations(const std::string& prompt, int n,
                                                           const GenerationConstraint& constraint,
                                                           const SamplingParams& params) const {
    check_request(prompt, n, constraint);
    std::vector<std::string> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        out.push_back(mock_predict(prompt, constraint, params, static_cast<std::uint64_t>(i)));
    }
    return out;
}

std::vector<std::string> OracleBackend::sample_continuations(const std::string& prompt, int n,
                                                             const GenerationConstraint& constraint,
                                                             const SamplingParams&) const {
    check_request(prompt, n, constraint);
    return std::vector<std::string>(static_cast<std::size_t>(n), constraint.enforce(hidden_));
}

std::unique_ptr<Backend> make_backend(const BackendSelector& selector,
                                      std::optional<std::string> hidden_continuation) {
    validate(selector);
    switch (selector.kind) {
        case BackendKind::Mock: return std::make_unique<MockBackend>();
        case BackendKind::Oracle:
            if (!hidden_continuation) {
                throw Error(ErrorCode::InvalidConfig,
                            "oracle backend needs the hidden future continuation");
            }
            return std::make_unique<OracleBackend>(std::move(*hidden_continuation));
        case BackendKind::Http: return std::make_unique<HttpBackend>(selector);
    }
    throw Error(ErrorCode::InvalidConfig, "unknown backend kind");
}

}  // namespace multicast
