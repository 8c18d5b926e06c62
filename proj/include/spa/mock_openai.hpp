#pragma once

#include <atomic>
#include <memory>
#include <string>
#include <thread>
#include <vector>

namespace httplib {
class Server;
}

namespace spa {

// Offline stand-in for an OpenAI-compatible endpoint. Fully deterministic:
// every response is a pure function of the request plus the per-server
// request counter, which is all the pipeline tests need.
struct MockOptions {
    enum class Mode {
        echo_tagged, // "ECHO:<strategy short name>:<docid=... token from the prompt>"
        echo_prompt, // returns the prompt text itself
        fixed,       // returns fixed_text
        judge_script,        // cycles through judge_script entries
        judge_contains_gold, // CORRECT iff candidate contains the gold answer
    };

    Mode mode = Mode::echo_tagged;
    std::string fixed_text = "mock completion";
    size_t pad_to_bytes = 0;           // pad/truncate response text to exactly N bytes
    std::vector<int> status_script;    // HTTP statuses served first, one per request
    std::string require_bearer;        // non-empty -> 401 unless the bearer matches
    int latency_ms = 0;                // hold each request open (concurrency probes)
    std::vector<std::string> judge_script = {"CORRECT"};
};

class MockOpenAI {
  public:
    explicit MockOpenAI(MockOptions options = {});
    ~MockOpenAI();

    MockOpenAI(const MockOpenAI &) = delete;
    MockOpenAI &operator=(const MockOpenAI &) = delete;

    std::string url() const;
    int port() const { return port_; }

    int request_count() const { return requests_.load(); }
    int max_concurrent() const { return max_concurrent_.load(); }

  private:
    MockOptions options_;
    std::unique_ptr<httplib::Server> server_;
    std::thread serve_thread_;
    int port_ = 0;

    std::atomic<int> requests_{0};
    std::atomic<int> in_flight_{0};
    std::atomic<int> max_concurrent_{0};
    std::atomic<size_t> script_cursor_{0};
    std::atomic<size_t> judge_cursor_{0};

    std::string make_text(const std::string &prompt_text);
};

} // namespace spa
