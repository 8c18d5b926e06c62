#include "spa/mock_openai.hpp"

#include "spa/errors.hpp"
#include "spa/text.hpp"

#include <httplib.h>
#include <json.hpp>

#include <chrono>

namespace spa {

using nlohmann::json;

namespace {

// Unique marker per built-in template, searched in the lowercased prompt.
const std::pair<const char *, const char *> kStrategyMarkers[] = {
    {"mind map", "Mind"},
    {"list of key concepts", "Key"},
    {"list of implications", "Imp"},
    {"question-answer pairs", "QA-ct"},
    {"case study", "Case"},
    {"discussion between two readers", "Disc"},
    {"teacher", "Teach"},
};

std::string detect_strategy(const std::string &lower_prompt) {
    for (const auto &[marker, name] : kStrategyMarkers)
        if (lower_prompt.find(marker) != std::string::npos) return name;
    return "unknown";
}

std::string detect_docid(const std::string &prompt) {
    size_t pos = prompt.find("docid=");
    if (pos == std::string::npos) return "unknown";
    size_t start = pos + 6;
    size_t end = start;
    while (end < prompt.size() && !std::isspace(static_cast<unsigned char>(prompt[end])))
        ++end;
    return prompt.substr(start, end - start);
}

std::string extract_between(const std::string &text, const std::string &label) {
    size_t pos = text.find(label);
    if (pos == std::string::npos) return "";
    size_t start = pos + label.size();
    size_t end = text.find('\n', start);
    return trim(text.substr(start, end == std::string::npos ? std::string::npos
                                                            : end - start));
}

} // namespace

std::string MockOpenAI::make_text(const std::string &prompt_text) {
    std::string text;
    switch (options_.mode) {
    case MockOptions::Mode::echo_tagged:
        text = "ECHO:" + detect_strategy(lowercase(prompt_text)) + ":" +
               detect_docid(prompt_text);
        break;
    case MockOptions::Mode::echo_prompt:
        text = prompt_text;
        break;
    case MockOptions::Mode::fixed:
        text = options_.fixed_text;
        break;
    case MockOptions::Mode::judge_script: {
        size_t i = judge_cursor_.fetch_add(1);
        text = options_.judge_script[i % options_.judge_script.size()];
        break;
    }
    case MockOptions::Mode::judge_contains_gold: {
        std::string gold = extract_between(prompt_text, "Gold answer:");
        std::string candidate = extract_between(prompt_text, "Candidate answer:");
        text = (!gold.empty() && candidate.find(gold) != std::string::npos) ? "CORRECT"
                                                                            : "WRONG";
        break;
    }
    }
    if (options_.pad_to_bytes > 0) {
        if (text.size() > options_.pad_to_bytes) text.resize(options_.pad_to_bytes);
        while (text.size() < options_.pad_to_bytes) text += 'x';
    }
    return text;
}

MockOpenAI::MockOpenAI(MockOptions options)
    : options_(std::move(options)), server_(std::make_unique<httplib::Server>()) {
    // A wide worker pool so the server never caps the client's concurrency.
    server_->new_task_queue = [] { return new httplib::ThreadPool(64); };

    auto handle = [this](const httplib::Request &req, httplib::Response &res, bool chat) {
        int cur = in_flight_.fetch_add(1) + 1;
        int seen = max_concurrent_.load();
        while (cur > seen && !max_concurrent_.compare_exchange_weak(seen, cur)) {
        }
        requests_.fetch_add(1);

        if (options_.latency_ms > 0)
            std::this_thread::sleep_for(std::chrono::milliseconds(options_.latency_ms));

        auto respond = [&]() {
            if (!options_.require_bearer.empty() &&
                req.get_header_value("Authorization") !=
                    "Bearer " + options_.require_bearer) {
                res.status = 401;
                res.set_content(R"({"error":{"message":"invalid api key"}})",
                                "application/json");
                return;
            }
            size_t cursor = script_cursor_.fetch_add(1);
            if (cursor < options_.status_script.size()) {
                int status = options_.status_script[cursor];
                if (status != 200) {
                    res.status = status;
                    res.set_content(R"({"error":{"message":"scripted status"}})",
                                    "application/json");
                    return;
                }
            }

            std::string prompt_text;
            try {
                json body = json::parse(req.body);
                if (chat) {
                    for (const auto &message : body.at("messages")) {
                        if (!prompt_text.empty()) prompt_text += '\n';
                        prompt_text += message.value("content", "");
                    }
                } else {
                    prompt_text = body.value("prompt", "");
                }
            } catch (const json::exception &) {
                res.status = 400;
                res.set_content(R"({"error":{"message":"bad request body"}})",
                                "application/json");
                return;
            }

            std::string text = make_text(prompt_text);
            json reply;
            if (chat) {
                reply = {{"model", "mock-model"},
                         {"choices",
                          json::array({{{"message",
                                         {{"role", "assistant"}, {"content", text}}},
                                        {"finish_reason", "stop"}}})}};
            } else {
                reply = {{"model", "mock-model"},
                         {"choices",
                          json::array({{{"text", text}, {"finish_reason", "stop"}}})}};
            }
            res.set_content(reply.dump(), "application/json");
        };
        respond();
        in_flight_.fetch_sub(1);
    };

    server_->Post("/v1/chat/completions",
                  [handle](const httplib::Request &req, httplib::Response &res) {
                      handle(req, res, true);
                  });
    server_->Post("/v1/completions",
                  [handle](const httplib::Request &req, httplib::Response &res) {
                      handle(req, res, false);
                  });
    server_->Get("/stats", [this](const httplib::Request &, httplib::Response &res) {
        json stats = {{"requests", requests_.load()},
                      {"max_concurrent", max_concurrent_.load()}};
        res.set_content(stats.dump(), "application/json");
    });

    port_ = server_->bind_to_any_port("127.0.0.1");
    if (port_ <= 0) fail(ErrorKind::internal, "mock server could not bind a port");
    serve_thread_ = std::thread([this] { server_->listen_after_bind(); });
    server_->wait_until_ready();
}

MockOpenAI::~MockOpenAI() {
    server_->stop();
    if (serve_thread_.joinable()) serve_thread_.join();
}

std::string MockOpenAI::url() const {
    return "http://127.0.0.1:" + std::to_string(port_);
}

} // namespace spa
