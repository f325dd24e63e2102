#include "multicast/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "multicast/error.hpp"

namespace multicast {

namespace {

std::string lower(std::string_view text) {
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

}  // namespace

std::string_view to_string(MuxScheme scheme) noexcept {
    switch (scheme) {
        case MuxScheme::DI: return "di";
        case MuxScheme::VI: return "vi";
        case MuxScheme::VC: return "vc";
    }
    return "?";
}

std::string_view to_string(AlphabetKind kind) noexcept {
    return kind == AlphabetKind::Alphabetical ? "alpha" : "digit";
}

std::string_view to_string(BackendKind kind) noexcept {
    switch (kind) {
        case BackendKind::Http: return "http";
        case BackendKind::Mock: return "mock";
        case BackendKind::Oracle: return "oracle";
    }
    return "?";
}

MuxScheme parse_mux_scheme(std::string_view text) {
    const auto s = lower(text);
    if (s == "di") return MuxScheme::DI;
    if (s == "vi") return MuxScheme::VI;
    if (s == "vc") return MuxScheme::VC;
    throw Error(ErrorCode::InvalidConfig, "unknown multiplexing scheme '" + std::string(text) +
                                              "' (expected di, vi or vc)");
}

AlphabetKind parse_alphabet_kind(std::string_view text) {
    const auto s = lower(text);
    if (s == "alpha" || s == "alphabetical") return AlphabetKind::Alphabetical;
    if (s == "digit" || s == "digital") return AlphabetKind::Digital;
    throw Error(ErrorCode::InvalidConfig,
                "unknown alphabet '" + std::string(text) + "' (expected alpha or digit)");
}

BackendKind parse_backend_kind(std::string_view text) {
    const auto s = lower(text);
    if (s == "http") return BackendKind::Http;
    if (s == "mock") return BackendKind::Mock;
    if (s == "oracle") return BackendKind::Oracle;
    throw Error(ErrorCode::InvalidConfig,
                "unknown backend '" + std::string(text) + "' (expected http, mock or oracle)");
}

void validate(const SaxConfig& config) {
    if (config.segment_length < 1) {
        throw Error(ErrorCode::InvalidConfig, "SAX segment length must be >= 1");
    }
    if (config.alphabet_size < 2) {
        throw Error(ErrorCode::AlphabetTooSmall, "SAX alphabet size must be >= 2, got " +
                                                     std::to_string(config.alphabet_size));
    }
    if (config.alphabet_kind == AlphabetKind::Digital && config.alphabet_size > 10) {
        throw Error(ErrorCode::DigitalAlphabetOverflow,
                    "digital SAX alphabet requires alphabet size a <= 10, got " +
                        std::to_string(config.alphabet_size));
    }
    if (config.alphabet_kind == AlphabetKind::Alphabetical && config.alphabet_size > 26) {
        throw Error(ErrorCode::InvalidConfig, "alphabetical SAX alphabet supports at most 26 symbols");
    }
}

void validate(const SamplingParams& params) {
    if (!(params.temperature > 0.0) || !std::isfinite(params.temperature)) {
        throw Error(ErrorCode::InvalidConfig, "temperature must be > 0");
    }
    if (!(params.nucleus_mass > 0.0 && params.nucleus_mass <= 1.0)) {
        throw Error(ErrorCode::InvalidConfig, "nucleus mass (top-p) must lie in (0, 1]");
    }
    if (params.max_retry < 0) {
        throw Error(ErrorCode::InvalidConfig, "max_retry must be >= 0");
    }
}

void validate(const BackendSelector& selector) {
    if (selector.kind == BackendKind::Http && (!selector.endpoint || selector.endpoint->empty())) {
        throw Error(ErrorCode::InvalidConfig, "http backend requires an endpoint");
    }
    if (selector.timeout.count() <= 0) {
        throw Error(ErrorCode::InvalidConfig, "backend timeout must be positive");
    }
    if (selector.max_parallel < 1) {
        throw Error(ErrorCode::InvalidConfig, "max_parallel must be >= 1");
    }
}

void validate(const PipelineConfig& config) {
    if (config.digit_budget < 1 || config.digit_budget > 10) {
        throw Error(ErrorCode::InvalidConfig, "digit budget must lie in [1, 10], got " +
                                                  std::to_string(config.digit_budget));
    }
    if (config.num_samples < 1) {
        throw Error(ErrorCode::InvalidConfig, "number of samples must be >= 1");
    }
    if (!(config.headroom >= 1.0) || !std::isfinite(config.headroom)) {
        throw Error(ErrorCode::InvalidConfig, "headroom must be a finite value >= 1");
    }
    if (config.sax) validate(*config.sax);
    validate(config.sampling);
    validate(config.backend);
}

std::string fingerprint(const PipelineConfig& config) {
    std::ostringstream os;
    os.precision(17);
    os << "mux=" << to_string(config.mux_scheme) << ";digits=" << config.digit_budget
       << ";samples=" << config.num_samples << ";headroom=" << config.headroom;
    if (config.sax) {
        os << ";sax=w" << config.sax->segment_length << "/a" << config.sax->alphabet_size << "/"
           << to_string(config.sax->alphabet_kind);
    } else {
        os << ";sax=off";
    }
    os << ";temperature=" << config.sampling.temperature
       << ";top_p=" << config.sampling.nucleus_mass << ";max_retry=" << config.sampling.max_retry
       << ";seed=";
    if (config.sampling.seed) {
        os << *config.sampling.seed;
    } else {
        os << "none";
    }
    os << ";backend=" << to_string(config.backend.kind);
    if (config.backend.model_id) os << ";model=" << *config.backend.model_id;
    return os.str();
}

void validate(const ForecastRequest& request) {
    if (request.horizon < 1) {
        throw Error(ErrorCode::InvalidConfig, "forecast horizon must be >= 1");
    }
    validate(request.config);
}

}  // namespace multicast
