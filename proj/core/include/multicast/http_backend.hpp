#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "multicast/backend.hpp"

namespace multicast {

/// Parsed http(s)://host[:port]/path.
struct Endpoint {
    std::string scheme_host_port;  // e.g. "http://localhost:8080"
    std::string path;              // e.g. "/v1/completions"
};

/// Throws InvalidConfig on anything that is not an http or https URL.
Endpoint parse_endpoint(std::string_view url);

/// JSON body {model, prompt, max_tokens, temperature, top_p, stop, seed?, logit_bias?}.
/// logit_bias is emitted only when `selector.token_ids` is non-empty.
std::string build_completion_request(const BackendSelector& selector, const std::string& prompt,
                                     const GenerationConstraint& constraint,
                                     const SamplingParams& params,
                                     std::optional<std::uint64_t> seed);

/// Extracts the generated text from the common completion response shapes:
/// choices[0].text, choices[0].message.content, content, text, generated_text
/// (object or first array element). Throws MalformedResponse.
std::string parse_completion_response(std::string_view body);

/// One completion. Vocabulary is enforced through logit_bias when token ids cover
/// every allowed character; otherwise by resampling up to max_retry times and then
/// truncating at the first disallowed character.
/// Throws BackendUnreachable, Timeout, HttpStatus, MalformedResponse, ConstraintUnsupported.
std::string http_complete(const BackendSelector& selector, const std::string& prompt,
                          const GenerationConstraint& constraint, const SamplingParams& params,
                          std::uint64_t sample_index = 0);

/// Issues up to selector.max_parallel requests at once; results keep request order.
class HttpBackend final : public Backend {
public:
    explicit HttpBackend(BackendSelector selector);

    [[nodiscard]] std::vector<std::string> sample_continuations(
        const std::string& prompt, int n, const GenerationConstraint& constraint,
        const SamplingParams& params) const override;
    [[nodiscard]] std::string_view name() const noexcept override { return "http"; }

private:
    BackendSelector selector_;
};

}  // namespace multicast
