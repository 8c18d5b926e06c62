#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "spa/errors.hpp"
#include "spa/generation.hpp"
#include "spa/mock_openai.hpp"

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>

using namespace spa;
namespace fs = std::filesystem;

namespace {

Corpus tagged_corpus(size_t n) {
    Corpus corpus;
    corpus.name = "mock";
    for (size_t i = 0; i < n; ++i) {
        Document doc;
        doc.id = "d" + std::to_string(i);
        doc.title = "Doc " + std::to_string(i);
        // The docid= marker lets the echo mock identify the document.
        doc.text = "docid=d" + std::to_string(i) + " content words for document " +
                   std::to_string(i);
        doc.word_count = 7;
        corpus.documents.push_back(doc);
    }
    return corpus;
}

GeneratorConfig mock_config(const std::string &url, Variant variant = Variant::Instruct) {
    GeneratorConfig config;
    config.endpoint_url = url;
    config.model = "mock-model";
    config.variant = variant;
    config.api_key_env = "";
    config.max_in_flight = 4;
    config.retry = {3, 1, 10};
    config.request_timeout_ms = 5000;
    return config;
}

std::string temp_dir() {
    char tmpl[] = "/tmp/spa-gen-XXXXXX";
    REQUIRE(mkdtemp(tmpl) != nullptr);
    return tmpl;
}

} // namespace

TEST_CASE("execute runs a full plan against the echo mock") {
    MockOpenAI mock;
    Corpus corpus = tagged_corpus(2);
    PromptSet prompts = builtin_prompt_set(Variant::Instruct);
    GenerationPlan plan = plan_by_samples(corpus, prompts, 7);
    std::string out_dir = temp_dir();

    Manifest manifest = execute(plan, corpus, prompts, mock_config(mock.url()), out_dir);
    CHECK(manifest.total == 14);
    CHECK(manifest.done_count() == 14);
    CHECK(manifest.failed_count() == 0);
    CHECK(manifest.pending_count() == 0);

    auto samples = read_samples_jsonl(out_dir + "/samples.jsonl");
    REQUIRE(samples.size() == 14);
    std::set<std::string> ids;
    for (const auto &s : samples) {
        ids.insert(s.sample_id);
        CHECK(s.text == "ECHO:" + std::string(short_name(s.strategy)) + ":" + s.doc_id);
        CHECK(s.model == "mock-model");
        CHECK(s.finish_reason == "stop");
        CHECK(s.token_count == (s.text.size() + 3) / 4);
        CHECK(s.attempts == 1);
    }
    CHECK(ids.size() == 14);

    SUBCASE("manifest reloads to the same state") {
        Manifest loaded = load_manifest(out_dir + "/manifest.jsonl");
        CHECK(loaded.total == 14);
        CHECK(loaded.done_count() == 14);
        CHECK(loaded.plan_fingerprint == plan.fingerprint());
    }

    SUBCASE("execute refuses to clobber an existing run") {
        CHECK_THROWS_AS(execute(plan, corpus, prompts, mock_config(mock.url()), out_dir),
                        Error);
    }
}

TEST_CASE("base variant goes through the completions endpoint") {
    MockOpenAI mock;
    Corpus corpus = tagged_corpus(1);
    PromptSet prompts = builtin_prompt_set(Variant::Base);
    GenerationPlan plan = plan_by_samples(corpus, prompts, 7);
    std::string out_dir = temp_dir();
    Manifest manifest =
        execute(plan, corpus, prompts, mock_config(mock.url(), Variant::Base), out_dir);
    CHECK(manifest.done_count() == 7);
    auto samples = read_samples_jsonl(out_dir + "/samples.jsonl");
    for (const auto &s : samples)
        CHECK(s.text == "ECHO:" + std::string(short_name(s.strategy)) + ":d0");
}

TEST_CASE("429 twice then success records three attempts") {
    MockOptions options;
    options.status_script = {429, 429};
    MockOpenAI mock(options);
    Corpus corpus = tagged_corpus(1);
    PromptSet prompts = subset(builtin_prompt_set(Variant::Instruct),
                               {Strategy::MindMap, Strategy::Implications,
                                Strategy::QACritical, Strategy::CaseStudies,
                                Strategy::Discussions, Strategy::TeacherStyle});
    GenerationPlan plan = plan_by_samples(corpus, prompts, 1);
    std::string out_dir = temp_dir();

    Manifest manifest = execute(plan, corpus, prompts, mock_config(mock.url()), out_dir);
    CHECK(manifest.done_count() == 1);
    auto samples = read_samples_jsonl(out_dir + "/samples.jsonl");
    REQUIRE(samples.size() == 1);
    CHECK(samples[0].attempts == 3);
    CHECK(mock.request_count() == 3);
}

TEST_CASE("retries exhausted marks the assignment failed and the run continues") {
    MockOptions options;
    options.status_script = {500, 500, 500}; // first assignment burns all attempts
    MockOpenAI mock(options);
    Corpus corpus = tagged_corpus(1);
    PromptSet prompts = builtin_prompt_set(Variant::Instruct);
    GenerationPlan plan = plan_by_samples(corpus, prompts, 7);
    std::string out_dir = temp_dir();

    GeneratorConfig config = mock_config(mock.url());
    config.max_in_flight = 1;
    Manifest manifest = execute(plan, corpus, prompts, config, out_dir);
    CHECK(manifest.failed_count() == 1);
    CHECK(manifest.done_count() == 6);
    CHECK(manifest.done_count() + manifest.failed_count() + manifest.pending_count() ==
          manifest.total);
}

TEST_CASE("persistent auth failure aborts the run") {
    MockOptions options;
    options.require_bearer = "right-key";
    MockOpenAI mock(options);
    Corpus corpus = tagged_corpus(2);
    PromptSet prompts = builtin_prompt_set(Variant::Instruct);
    GenerationPlan plan = plan_by_samples(corpus, prompts, 7);
    std::string out_dir = temp_dir();

    setenv("SPA_TEST_WRONG_KEY", "wrong-key", 1);
    GeneratorConfig config = mock_config(mock.url());
    config.api_key_env = "SPA_TEST_WRONG_KEY";
    try {
        execute(plan, corpus, prompts, config, out_dir);
        FAIL("expected an auth error");
    } catch (const Error &e) {
        CHECK(e.kind() == ErrorKind::auth);
        CHECK(e.exit_code() == 4);
    }
    Manifest manifest = load_manifest(out_dir + "/manifest.jsonl");
    CHECK(manifest.done_count() == 0);
}

TEST_CASE("missing API key environment variable is a config error") {
    Corpus corpus = tagged_corpus(1);
    PromptSet prompts = builtin_prompt_set(Variant::Instruct);
    GenerationPlan plan = plan_by_samples(corpus, prompts, 1);
    GeneratorConfig config = mock_config("http://127.0.0.1:1");
    config.api_key_env = "SPA_TEST_UNSET_KEY_VARIABLE";
    unsetenv("SPA_TEST_UNSET_KEY_VARIABLE");
    CHECK_THROWS_AS(execute(plan, corpus, prompts, config, temp_dir()), Error);
}

TEST_CASE("interrupted run resumes to the complete done-set without duplicates") {
    MockOpenAI mock;
    Corpus corpus = tagged_corpus(2);
    PromptSet prompts = builtin_prompt_set(Variant::Instruct);
    GenerationPlan plan = plan_by_samples(corpus, prompts, 7);
    std::string out_dir = temp_dir();

    GeneratorConfig config = mock_config(mock.url());
    config.max_in_flight = 2;
    std::atomic<int> started{0};
    StopHook stop_after_five = [&]() { return started.fetch_add(1) >= 5; };

    Manifest partial = execute(plan, corpus, prompts, config, out_dir,
                               TokenCounter::approximate(), stop_after_five);
    CHECK(partial.done_count() < 14);
    CHECK(partial.done_count() + partial.pending_count() == 14);

    Manifest final_manifest = resume(out_dir + "/manifest.jsonl", corpus, prompts, config,
                                     out_dir);
    CHECK(final_manifest.done_count() == 14);

    auto samples = read_samples_jsonl(out_dir + "/samples.jsonl");
    std::set<std::string> ids;
    for (const auto &s : samples) ids.insert(s.sample_id);
    CHECK(samples.size() == 14);
    CHECK(ids.size() == 14);
}

TEST_CASE("resume with everything done issues no requests") {
    MockOpenAI mock;
    Corpus corpus = tagged_corpus(1);
    PromptSet prompts = builtin_prompt_set(Variant::Instruct);
    GenerationPlan plan = plan_by_samples(corpus, prompts, 7);
    std::string out_dir = temp_dir();
    GeneratorConfig config = mock_config(mock.url());

    execute(plan, corpus, prompts, config, out_dir);
    int requests_after_run = mock.request_count();

    Manifest manifest = resume(out_dir + "/manifest.jsonl", corpus, prompts, config, out_dir);
    CHECK(manifest.done_count() == 7);
    CHECK(mock.request_count() == requests_after_run);
}

TEST_CASE("resume tolerates a torn final sample line") {
    MockOpenAI mock;
    Corpus corpus = tagged_corpus(1);
    PromptSet prompts = builtin_prompt_set(Variant::Instruct);
    GenerationPlan plan = plan_by_samples(corpus, prompts, 7);
    std::string out_dir = temp_dir();
    GeneratorConfig config = mock_config(mock.url());
    config.max_in_flight = 1;

    std::atomic<int> started{0};
    execute(plan, corpus, prompts, config, out_dir, TokenCounter::approximate(),
            [&]() { return started.fetch_add(1) >= 3; });

    {
        std::ofstream f(out_dir + "/samples.jsonl", std::ios::binary | std::ios::app);
        f << R"({"sample_id":"torn-by-a-crash","doc)"; // no closing brace, no newline
    }
    Manifest manifest = resume(out_dir + "/manifest.jsonl", corpus, prompts, config, out_dir);
    CHECK(manifest.done_count() == 7);
    auto samples = read_samples_jsonl(out_dir + "/samples.jsonl");
    std::set<std::string> ids;
    for (const auto &s : samples) ids.insert(s.sample_id);
    CHECK(ids.size() == 7);
}

TEST_CASE("a manifest torn before its header flushed is treated as no run") {
    MockOpenAI mock;
    Corpus corpus = tagged_corpus(1);
    PromptSet prompts = builtin_prompt_set(Variant::Instruct);
    GenerationPlan plan = plan_by_samples(corpus, prompts, 7);
    std::string out_dir = temp_dir();
    fs::create_directories(out_dir);
    {
        std::ofstream f(out_dir + "/manifest.jsonl", std::ios::binary);
        f << R"({"type":"mani)"; // crash mid-header, no newline
    }
    Manifest manifest = execute(plan, corpus, prompts, mock_config(mock.url()), out_dir);
    CHECK(manifest.done_count() == 7);
}

TEST_CASE("resume refuses a corpus whose text was edited") {
    MockOpenAI mock;
    Corpus corpus = tagged_corpus(2);
    PromptSet prompts = builtin_prompt_set(Variant::Instruct);
    GenerationPlan plan = plan_by_samples(corpus, prompts, 2);
    std::string out_dir = temp_dir();
    GeneratorConfig config = mock_config(mock.url());
    execute(plan, corpus, prompts, config, out_dir);

    Corpus edited = corpus;
    edited.documents[0].text += " tampered";
    try {
        resume(out_dir + "/manifest.jsonl", edited, prompts, config, out_dir);
        FAIL("expected an integrity error");
    } catch (const Error &e) {
        CHECK(e.kind() == ErrorKind::integrity);
        CHECK(e.exit_code() == 6);
    }
}

TEST_CASE("plan referencing unknown documents is rejected up front") {
    MockOpenAI mock;
    Corpus corpus = tagged_corpus(2);
    PromptSet prompts = builtin_prompt_set(Variant::Instruct);
    GenerationPlan plan = plan_by_samples(corpus, prompts, 1);
    Corpus other = tagged_corpus(1);
    CHECK_THROWS_AS(execute(plan, other, prompts, mock_config(mock.url()), temp_dir()),
                    Error);
}

TEST_CASE("completed token-budget run lands within one sample per strategy of D") {
    MockOptions options;
    options.pad_to_bytes = 400; // 100 approximate tokens, matching est below
    MockOpenAI mock(options);
    Corpus corpus = tagged_corpus(3);
    PromptSet prompts = builtin_prompt_set(Variant::Instruct);
    const uint64_t d = 10'000;
    const uint64_t est = 100;
    GenerationPlan plan = plan_by_tokens(corpus, prompts, d, est);
    std::string out_dir = temp_dir();

    Manifest manifest = execute(plan, corpus, prompts, mock_config(mock.url()), out_dir);
    REQUIRE(manifest.failed_count() == 0);

    auto samples = read_samples_jsonl(out_dir + "/samples.jsonl");
    TokenCounter counter = TokenCounter::approximate();
    uint64_t total = 0;
    for (const auto &s : samples) total += counter.count(s.text);
    CHECK(total == estimate_total_tokens(plan)); // fixed-length outputs: exact
    CHECK(total >= d - 7 * est);
    CHECK(total <= d + 7 * est);
}

TEST_CASE("bounded concurrency is respected under load") {
    MockOptions options;
    options.latency_ms = 3;
    MockOpenAI mock(options);
    Corpus corpus = tagged_corpus(4);
    PromptSet prompts = builtin_prompt_set(Variant::Instruct);
    GenerationPlan plan = plan_by_samples(corpus, prompts, 14); // 56 assignments
    std::string out_dir = temp_dir();

    GeneratorConfig config = mock_config(mock.url());
    config.max_in_flight = 3;
    Manifest manifest = execute(plan, corpus, prompts, config, out_dir);
    CHECK(manifest.done_count() == 56);
    CHECK(mock.max_concurrent() <= 3);
    CHECK(mock.max_concurrent() >= 2); // parallelism actually happened
}
