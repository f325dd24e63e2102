#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "multicast/config.hpp"

namespace multicast {

/// What a continuation may contain.
struct GenerationConstraint {
    std::string allowed_chars;
    std::size_t max_chars = 0;
    std::size_t stop_after_timestamps = 0;

    [[nodiscard]] bool allows(char c) const noexcept {
        return allowed_chars.find(c) != std::string::npos;
    }
    /// Longest prefix made of allowed characters, capped at max_chars.
    [[nodiscard]] std::string enforce(std::string_view text) const;
};

/// Text-continuation sampler. Implementations are safe to call concurrently.
class Backend {
public:
    virtual ~Backend() = default;

    /// Returns exactly `n` continuations in request order; each contains only
    /// allowed characters and at most max_chars of them (possibly none).
    [[nodiscard]] virtual std::vector<std::string> sample_continuations(
        const std::string& prompt, int n, const GenerationConstraint& constraint,
        const SamplingParams& params) const = 0;

    [[nodiscard]] virtual std::string_view name() const noexcept = 0;
};

/// Deterministic longest-suffix continuation.
///
/// Finds the longest suffix of `prompt` (at most 64 chars) that also occurs
/// earlier, and copies what followed that earlier occurrence, cyclically, up to
/// max_chars. When several earlier occurrences exist, one is picked by a
/// generator seeded with (seed, sample_index). Without any recurrence the last
/// separator-delimited chunk is repeated. temperature and top-p are ignored.
std::string mock_predict(std::string_view prompt, const GenerationConstraint& constraint,
                         const SamplingParams& params, std::uint64_t sample_index = 0);

class MockBackend final : public Backend {
public:
    [[nodiscard]] std::vector<std::string> sample_continuations(
        const std::string& prompt, int n, const GenerationConstraint& constraint,
        const SamplingParams& params) const override;
    [[nodiscard]] std::string_view name() const noexcept override { return "mock"; }
};

/// Returns a fixed hidden continuation (the true future, already encoded).
class OracleBackend final : public Backend {
public:
    explicit OracleBackend(std::string hidden_continuation)
        : hidden_(std::move(hidden_continuation)) {}

    [[nodiscard]] std::vector<std::string> sample_continuations(
        const std::string& prompt, int n, const GenerationConstraint& constraint,
        const SamplingParams& params) const override;
    [[nodiscard]] std::string_view name() const noexcept override { return "oracle"; }

private:
    std::string hidden_;
};

/// Builds the backend a selector describes. Oracle requires `hidden_continuation`.
std::unique_ptr<Backend> make_backend(const BackendSelector& selector,
                                      std::optional<std::string> hidden_continuation = {});

}  // namespace multicast
