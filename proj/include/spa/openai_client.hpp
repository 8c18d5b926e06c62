#pragma once

#include "spa/prompts.hpp"

#include <cstdint>
#include <string>

namespace spa {

struct RetryPolicy {
    int max_attempts = 5;
    int base_delay_ms = 500;
    int max_delay_ms = 10000;
};

struct GeneratorConfig {
    std::string endpoint_url;          // http(s)://host[:port][/path-prefix]
    std::string model;
    Variant variant = Variant::Instruct;
    double temperature = 1.0;          // not stated by any protocol; see README
    double top_p = 1.0;
    uint64_t max_output_tokens = 1024;
    std::string api_key_env = "SPA_API_KEY"; // empty -> no Authorization header
    int max_in_flight = 4;
    RetryPolicy retry;
    int request_timeout_ms = 30000;

    void validate() const;
};

struct CompletionResult {
    std::string text;
    std::string model;
    std::string finish_reason;
    int attempts = 1;
};

// Minimal client for OpenAI-compatible endpoints. Instruct prompts go to
// /v1/chat/completions as system+user messages; Base prompts go to
// /v1/completions as a single prompt string. 429/5xx/transport errors are
// retried with exponential backoff and decorrelated jitter; 401/403 raise an
// auth error; other 4xx raise a permanent error. jitter_seed makes the retry
// schedule reproducible per work item.
class OpenAIClient {
  public:
    explicit OpenAIClient(const GeneratorConfig &config);

    CompletionResult complete(const RenderedPrompt &prompt, uint64_t jitter_seed) const;

  private:
    GeneratorConfig config_;
    std::string api_key_;     // resolved once at construction
    std::string host_base_;   // scheme://host:port
    std::string path_prefix_; // optional path before /v1/...

    CompletionResult post_json(const std::string &path, const std::string &body,
                               uint64_t jitter_seed, bool chat) const;
};

} // namespace spa
