#include "multicast/http_backend.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "multicast/error.hpp"

namespace multicast {

using nlohmann::json;

Endpoint parse_endpoint(std::string_view url) {
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string_view::npos) {
        throw Error(ErrorCode::InvalidConfig, "endpoint '" + std::string(url) + "' lacks a scheme");
    }
    const auto scheme = url.substr(0, scheme_end);
    if (scheme != "http" && scheme != "https") {
        throw Error(ErrorCode::InvalidConfig,
                    "unsupported endpoint scheme '" + std::string(scheme) + "'");
    }
    const auto path_start = url.find('/', scheme_end + 3);
    Endpoint ep;
    ep.scheme_host_port = std::string(url.substr(0, path_start));
    ep.path = path_start == std::string_view::npos ? "/" : std::string(url.substr(path_start));
    if (ep.scheme_host_port.size() <= scheme_end + 3) {
        throw Error(ErrorCode::InvalidConfig, "endpoint '" + std::string(url) + "' lacks a host");
    }
    return ep;
}

std::string build_completion_request(const BackendSelector& selector, const std::string& prompt,
                                     const GenerationConstraint& constraint,
                                     const SamplingParams& params,
                                     std::optional<std::uint64_t> seed) {
    json body;
    body["model"] = selector.model_id.value_or("");
    body["prompt"] = prompt;
    body["max_tokens"] = constraint.max_chars;
    body["temperature"] = params.temperature;
    body["top_p"] = params.nucleus_mass;
    body["stop"] = json::array({"\n"});
    if (seed) body["seed"] = *seed;
    if (!selector.token_ids.empty()) {
        json bias = json::object();
        for (char c : constraint.allowed_chars) {
            const auto it = selector.token_ids.find(c);
            if (it != selector.token_ids.end()) bias[std::to_string(it->second)] = 100;
        }
        body["logit_bias"] = std::move(bias);
    }
    return body.dump();
}

std::string parse_completion_response(std::string_view body) {
    const json doc = json::parse(body, nullptr, false);
    if (doc.is_discarded()) throw Error(ErrorCode::MalformedResponse, "response is not JSON");

    const auto text_of = [](const json& node) -> std::optional<std::string> {
        if (!node.is_object()) return std::nullopt;
        if (auto it = node.find("choices"); it != node.end() && it->is_array() && !it->empty()) {
            const json& first = it->front();
            if (auto t = first.find("text"); t != first.end() && t->is_string()) {
                return t->get<std::string>();
            }
            if (auto m = first.find("message"); m != first.end() && m->is_object()) {
                if (auto c = m->find("content"); c != m->end() && c->is_string()) {
                    return c->get<std::string>();
                }
            }
        }
        for (const char* key : {"content", "text", "generated_text"}) {
            if (auto t = node.find(key); t != node.end() && t->is_string()) {
                return t->get<std::string>();
            }
        }
        return std::nullopt;
    };

    std::optional<std::string> text;
    if (doc.is_array() && !doc.empty()) {
        text = text_of(doc.front());
    } else {
        text = text_of(doc);
    }
    if (!text) throw Error(ErrorCode::MalformedResponse, "response carries no generated text");
    return *text;
}

namespace {

bool covers_vocabulary(const BackendSelector& selector, const GenerationConstraint& constraint) {
    return std::all_of(constraint.allowed_chars.begin(), constraint.allowed_chars.end(),
                       [&](char c) { return selector.token_ids.contains(c); });
}

std::string post_once(const BackendSelector& selector, const Endpoint& ep, const std::string& body) {
    httplib::Client client(ep.scheme_host_port);
    const auto timeout = std::chrono::duration_cast<std::chrono::microseconds>(selector.timeout);
    client.set_connection_timeout(timeout);
    client.set_read_timeout(timeout);
    client.set_write_timeout(timeout);

    httplib::Headers headers;
    if (selector.auth_token_env) {
        if (const char* token = std::getenv(selector.auth_token_env->c_str()); token && *token) {
            headers.emplace("Authorization", std::string("Bearer ") + token);
        }
    }

    const auto result = client.Post(ep.path, headers, body, "application/json");
    if (!result) {
        const auto err = result.error();
        const auto what = httplib::to_string(err);
        if (err == httplib::Error::ConnectionTimeout || err == httplib::Error::Read) {
            throw Error(ErrorCode::Timeout, ep.scheme_host_port + ": " + what);
        }
        throw Error(ErrorCode::BackendUnreachable, ep.scheme_host_port + ": " + what);
    }
    if (result->status != 200) {
        throw Error(ErrorCode::HttpStatus, "status " + std::to_string(result->status) + " from " +
                                               ep.scheme_host_port + ep.path);
    }
    return result->body;
}

}  // namespace

std::string http_complete(const BackendSelector& selector, const std::string& prompt,
                          const GenerationConstraint& constraint, const SamplingParams& params,
                          std::uint64_t sample_index) {
    if (!selector.endpoint) throw Error(ErrorCode::InvalidConfig, "http backend requires an endpoint");
    const Endpoint ep = parse_endpoint(*selector.endpoint);

    const bool biased = !selector.token_ids.empty();
    if (biased && !covers_vocabulary(selector, constraint)) {
        throw Error(ErrorCode::ConstraintUnsupported,
                    "token id map does not cover every allowed character");
    }

    std::string text;
    const int attempts = biased ? 1 : params.max_retry + 1;
    for (int attempt = 0; attempt < attempts; ++attempt) {
        std::optional<std::uint64_t> seed;
        if (params.seed) {
            seed = *params.seed + sample_index + static_cast<std::uint64_t>(attempt) * 1'000'003ULL;
        }
        const auto body = build_completion_request(selector, prompt, constraint, params, seed);
        text = parse_completion_response(post_once(selector, ep, body));
        const auto bad = std::find_if(text.begin(), text.end(),
                                      [&](char c) { return !constraint.allows(c); });
        if (bad == text.end()) break;
    }
    return constraint.enforce(text);
}

HttpBackend::HttpBackend(BackendSelector selector) : selector_(std::move(selector)) {
    validate(selector_);
    if (selector_.kind != BackendKind::Http) selector_.kind = BackendKind::Http;
    parse_endpoint(selector_.endpoint.value_or(""));
}

std::vector<std::string> HttpBackend::sample_continuations(const std::string& prompt, int n,
                                                           const GenerationConstraint& constraint,
                                                           const SamplingParams& params) const {
    if (n < 1) throw Error(ErrorCode::InvalidConfig, "sample count must be >= 1");
    for (char c : prompt) {
        if (!constraint.allows(c)) {
            throw Error(ErrorCode::InvalidConfig,
                        std::string("prompt contains disallowed character '") + c + "'");
        }
    }
    const auto count = static_cast<std::size_t>(n);
    std::vector<std::string> results(count);
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};

    const auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                results[i] = http_complete(selector_, prompt, constraint, params, i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const auto threads = std::min<std::size_t>(count, static_cast<std::size_t>(selector_.max_parallel));
    {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return results;
}

}  // namespace multicast
