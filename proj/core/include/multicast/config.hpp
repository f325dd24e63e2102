#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "multicast/series.hpp"

namespace multicast {

/// Dimensional multiplexing scheme: digit-interleaving, value-interleaving,
/// value-concatenation.
enum class MuxScheme { DI, VI, VC };

enum class AlphabetKind { Alphabetical, Digital };

enum class BackendKind { Http, Mock, Oracle };

std::string_view to_string(MuxScheme scheme) noexcept;
std::string_view to_string(AlphabetKind kind) noexcept;
std::string_view to_string(BackendKind kind) noexcept;

/// Case-insensitive; accepts "di"/"vi"/"vc". Throws InvalidConfig.
MuxScheme parse_mux_scheme(std::string_view text);
/// Accepts "alpha"/"alphabetical"/"digit"/"digital". Throws InvalidConfig.
AlphabetKind parse_alphabet_kind(std::string_view text);
/// Accepts "http"/"mock"/"oracle". Throws InvalidConfig.
BackendKind parse_backend_kind(std::string_view text);

struct SaxConfig {
    int segment_length = 6;  // points per PAA segment
    int alphabet_size = 5;
    AlphabetKind alphabet_kind = AlphabetKind::Alphabetical;
};

/// Throws AlphabetTooSmall (a < 2), DigitalAlphabetOverflow (Digital with a > 10),
/// or InvalidConfig (w < 1, or Alphabetical with a > 26).
void validate(const SaxConfig& config);

struct SamplingParams {
    double temperature = 0.7;
    double nucleus_mass = 0.9;  // top-p
    int max_retry = 3;
    std::optional<std::uint64_t> seed;
};

void validate(const SamplingParams& params);

struct BackendSelector {
    BackendKind kind = BackendKind::Mock;
    std::optional<std::string> endpoint;  // full URL, e.g. http://localhost:8080/v1/completions
    std::optional<std::string> model_id;
    std::chrono::milliseconds timeout{60'000};
    std::optional<std::string> auth_token_env;
    // Character -> model token id. When it covers the whole vocabulary the HTTP
    // backend constrains generation through logit_bias instead of rejection.
    std::map<char, int> token_ids;
    int max_parallel = 4;
};

void validate(const BackendSelector& selector);

struct PipelineConfig {
    MuxScheme mux_scheme = MuxScheme::VI;
    int digit_budget = 3;
    int num_samples = 5;
    double headroom = 1.25;
    std::optional<SaxConfig> sax;
    SamplingParams sampling;
    BackendSelector backend;
};

void validate(const PipelineConfig& config);

/// Stable, human-readable summary of every setting that influences a forecast.
std::string fingerprint(const PipelineConfig& config);

struct ForecastRequest {
    MultiSeries history;
    std::size_t horizon = 1;
    PipelineConfig config;
};

void validate(const ForecastRequest& request);

}  // namespace multicast
