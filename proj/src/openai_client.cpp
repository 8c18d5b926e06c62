#include "spa/openai_client.hpp"

#include "spa/errors.hpp"
#include "spa/hash.hpp"
#include "spa/rng.hpp"
#include "spa/text.hpp"

#include <httplib.h>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <thread>

namespace spa {

using nlohmann::json;

void GeneratorConfig::validate() const {
    if (endpoint_url.empty()) fail(ErrorKind::config, "generator endpoint_url is empty");
    if (!starts_with(endpoint_url, "http://") && !starts_with(endpoint_url, "https://"))
        fail(ErrorKind::config, "endpoint_url must start with http:// or https://");
    if (model.empty()) fail(ErrorKind::config, "generator model is empty");
    if (temperature < 0) fail(ErrorKind::config, "temperature must be >= 0");
    if (top_p <= 0 || top_p > 1) fail(ErrorKind::config, "top_p must be in (0, 1]");
    if (max_output_tokens == 0) fail(ErrorKind::config, "max_output_tokens must be positive");
    if (max_in_flight < 1) fail(ErrorKind::config, "max_in_flight must be at least 1");
    if (retry.max_attempts < 1) fail(ErrorKind::config, "retry.max_attempts must be at least 1");
    if (retry.base_delay_ms < 0 || retry.base_delay_ms > retry.max_delay_ms)
        fail(ErrorKind::config, "retry delays must satisfy 0 <= base_delay <= max_delay");
    if (request_timeout_ms <= 0) fail(ErrorKind::config, "request_timeout_ms must be positive");
}

OpenAIClient::OpenAIClient(const GeneratorConfig &config) : config_(config) {
    config_.validate();

    if (!config_.api_key_env.empty()) {
        const char *key = std::getenv(config_.api_key_env.c_str());
        if (key == nullptr || *key == '\0')
            fail(ErrorKind::config, "API key environment variable '" +
                                        config_.api_key_env + "' is not set");
        api_key_ = key;
    }

    // Split scheme://host[:port] from an optional path prefix.
    size_t scheme_end = config_.endpoint_url.find("://") + 3;
    size_t path_start = config_.endpoint_url.find('/', scheme_end);
    if (path_start == std::string::npos) {
        host_base_ = config_.endpoint_url;
    } else {
        host_base_ = config_.endpoint_url.substr(0, path_start);
        path_prefix_ = config_.endpoint_url.substr(path_start);
        while (!path_prefix_.empty() && path_prefix_.back() == '/') path_prefix_.pop_back();
    }
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
    if (starts_with(host_base_, "https://"))
        fail(ErrorKind::config, "built without TLS support; use an http:// endpoint");
#endif
}

CompletionResult OpenAIClient::complete(const RenderedPrompt &prompt,
                                        uint64_t jitter_seed) const {
    json body;
    bool chat = config_.variant == Variant::Instruct;
    if (chat) {
        json messages = json::array();
        if (prompt.has_system && !prompt.system.empty())
            messages.push_back({{"role", "system"}, {"content", prompt.system}});
        messages.push_back({{"role", "user"}, {"content", prompt.user}});
        body = {{"model", config_.model},
                {"messages", messages},
                {"temperature", config_.temperature},
                {"top_p", config_.top_p},
                {"max_tokens", config_.max_output_tokens}};
    } else {
        body = {{"model", config_.model},
                {"prompt", prompt.user},
                {"temperature", config_.temperature},
                {"top_p", config_.top_p},
                {"max_tokens", config_.max_output_tokens}};
    }
    std::string path = path_prefix_ + (chat ? "/v1/chat/completions" : "/v1/completions");
    return post_json(path, body.dump(), jitter_seed, chat);
}

CompletionResult OpenAIClient::post_json(const std::string &path, const std::string &body,
                                         uint64_t jitter_seed, bool chat) const {
    Rng jitter(jitter_seed);
    int prev_delay = config_.retry.base_delay_ms;
    std::string last_issue;

    for (int attempt = 1; attempt <= config_.retry.max_attempts; ++attempt) {
        httplib::Client client(host_base_);
        client.set_connection_timeout(0, config_.request_timeout_ms * 1000LL);
        client.set_read_timeout(config_.request_timeout_ms / 1000,
                                (config_.request_timeout_ms % 1000) * 1000);
        client.set_write_timeout(config_.request_timeout_ms / 1000,
                                 (config_.request_timeout_ms % 1000) * 1000);
        httplib::Headers headers;
        if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);

        auto res = client.Post(path, headers, body, "application/json");

        bool retryable = false;
        if (!res) {
            last_issue = "transport error: " + httplib::to_string(res.error());
            retryable = true;
        } else if (res->status == 200) {
            try {
                json reply = json::parse(res->body);
                const auto &choice = reply.at("choices").at(0);
                CompletionResult out;
                out.text = chat ? choice.at("message").at("content").get<std::string>()
                                : choice.at("text").get<std::string>();
                out.model = reply.value("model", config_.model);
                out.finish_reason = choice.value("finish_reason", "");
                out.attempts = attempt;
                return out;
            } catch (const json::exception &e) {
                last_issue = std::string("malformed completion body: ") + e.what();
                retryable = true;
            }
        } else if (res->status == 401 || res->status == 403) {
            fail(ErrorKind::auth, "endpoint rejected credentials with HTTP " +
                                      std::to_string(res->status));
        } else if (res->status == 429 || res->status >= 500) {
            last_issue = "HTTP " + std::to_string(res->status);
            retryable = true;
        } else {
            fail(ErrorKind::internal,
                 "endpoint returned HTTP " + std::to_string(res->status) + ": " + res->body);
        }

        if (!retryable || attempt == config_.retry.max_attempts) break;

        // Decorrelated jitter: uniform in [base, prev * 3], capped.
        int64_t upper = std::max<int64_t>(static_cast<int64_t>(prev_delay) * 3,
                                          config_.retry.base_delay_ms);
        int64_t span = upper - config_.retry.base_delay_ms + 1;
        int delay = static_cast<int>(config_.retry.base_delay_ms +
                                     jitter.bounded(static_cast<uint64_t>(span)));
        delay = std::min(delay, config_.retry.max_delay_ms);
        std::this_thread::sleep_for(std::chrono::milliseconds(delay));
        prev_delay = delay;
    }
    fail(ErrorKind::internal, "request failed after " +
                                  std::to_string(config_.retry.max_attempts) +
                                  " attempts (" + last_issue + ")");
}

} // namespace spa
