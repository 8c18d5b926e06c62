#include "spa/mock_openai.hpp"

#include <CLI11.hpp>

#include <csignal>
#include <iostream>
#include <thread>

// Standalone deterministic mock endpoint for offline demos:
//   spa-mock-server --port 8089 --mode echo-tagged
// then point a run config's endpoint_url at http://127.0.0.1:8089.

namespace {
volatile std::sig_atomic_t g_stop = 0;
void handle_signal(int) { g_stop = 1; }
} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Deterministic mock OpenAI-compatible server"};

    std::string mode = "echo-tagged";
    std::string fixed_text = "mock completion";
    std::string judge_script = "CORRECT";
    std::string status_seq;
    std::string require_bearer;
    int latency_ms = 0;
    size_t pad_to_bytes = 0;
    app.add_option("--mode", mode,
                   "echo-tagged|echo-prompt|fixed|judge-script|judge-contains-gold");
    app.add_option("--fixed-text", fixed_text, "response for fixed mode");
    app.add_option("--judge-script", judge_script, "comma-separated verdicts, cycled");
    app.add_option("--status-seq", status_seq,
                   "comma-separated HTTP statuses served first (e.g. 429,429)");
    app.add_option("--require-bearer", require_bearer, "reject other bearer tokens with 401");
    app.add_option("--latency-ms", latency_ms, "hold each request open this long");
    app.add_option("--pad-to-bytes", pad_to_bytes, "pad responses to an exact byte length");
    CLI11_PARSE(app, argc, argv);

    spa::MockOptions options;
    if (mode == "echo-tagged") {
        options.mode = spa::MockOptions::Mode::echo_tagged;
    } else if (mode == "echo-prompt") {
        options.mode = spa::MockOptions::Mode::echo_prompt;
    } else if (mode == "fixed") {
        options.mode = spa::MockOptions::Mode::fixed;
    } else if (mode == "judge-script") {
        options.mode = spa::MockOptions::Mode::judge_script;
    } else if (mode == "judge-contains-gold") {
        options.mode = spa::MockOptions::Mode::judge_contains_gold;
    } else {
        std::cerr << "unknown mode: " << mode << "\n";
        return 2;
    }
    options.fixed_text = fixed_text;
    options.pad_to_bytes = pad_to_bytes;
    options.latency_ms = latency_ms;
    options.require_bearer = require_bearer;

    options.judge_script.clear();
    size_t start = 0;
    while (start <= judge_script.size()) {
        size_t comma = judge_script.find(',', start);
        options.judge_script.push_back(judge_script.substr(
            start, comma == std::string::npos ? std::string::npos : comma - start));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (!status_seq.empty()) {
        start = 0;
        while (start <= status_seq.size()) {
            size_t comma = status_seq.find(',', start);
            options.status_script.push_back(std::stoi(status_seq.substr(
                start, comma == std::string::npos ? std::string::npos : comma - start)));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
    }

    spa::MockOpenAI server(options);
    std::cout << "listening on " << server.url() << " (mode " << mode << ")\n"
              << "stats at " << server.url() << "/stats" << std::endl;

    std::signal(SIGINT, handle_signal);
    std::signal(SIGTERM, handle_signal);
    while (!g_stop) std::this_thread::sleep_for(std::chrono::milliseconds(100));
    std::cout << "served " << server.request_count() << " requests, max concurrent "
              << server.max_concurrent() << "\n";
    return 0;
}
