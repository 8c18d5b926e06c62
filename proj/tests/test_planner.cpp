#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "spa/errors.hpp"
#include "spa/planner.hpp"

#include <map>
#include <set>

using namespace spa;

namespace {

Corpus synthetic_corpus(size_t n) {
    Corpus corpus;
    corpus.name = "synthetic";
    for (size_t i = 0; i < n; ++i) {
        Document doc;
        doc.id = "doc" + std::to_string(i);
        doc.title = "Doc " + std::to_string(i);
        doc.text = "body of document " + std::to_string(i);
        doc.word_count = 4;
        corpus.documents.push_back(doc);
    }
    return corpus;
}

} // namespace

TEST_CASE("one sample per strategy when the budget is exactly M * est") {
    Corpus corpus = synthetic_corpus(1);
    PromptSet prompts = builtin_prompt_set(Variant::Instruct);
    GenerationPlan plan = plan_by_tokens(corpus, prompts, 700, 100);
    CHECK(plan.assignments.size() == 7);
    std::set<Strategy> seen;
    for (const auto &a : plan.assignments) seen.insert(a.strategy);
    CHECK(seen.size() == 7);
    for (const auto &[_, quota] : plan.quotas) CHECK(quota == 100);
}

TEST_CASE("large-budget quotas stay within one sample of D/M") {
    Corpus corpus = synthetic_corpus(200);
    PromptSet prompts = builtin_prompt_set(Variant::Instruct);
    const uint64_t d = 120'000'000;
    const uint64_t est = 188;
    GenerationPlan plan = plan_by_tokens(corpus, prompts, d, est);

    const double ideal = static_cast<double>(d) / 7.0; // 17,142,857.14...
    REQUIRE(plan.quotas.size() == 7);
    uint64_t quota_sum = 0;
    for (const auto &[_, quota] : plan.quotas) {
        CHECK(std::abs(static_cast<double>(quota) - ideal) <= static_cast<double>(est));
        quota_sum += quota;
    }
    // Even split up to one-sample granularity, and a total near D.
    for (const auto &[_, a] : plan.quotas)
        for (const auto &[__, b] : plan.quotas)
            CHECK((a > b ? a - b : b - a) <= est);
    CHECK(quota_sum >= d - 7 * est);
    CHECK(quota_sum <= d + 7 * est);
}

TEST_CASE("plan smaller than one sample per strategy is rejected") {
    Corpus corpus = synthetic_corpus(3);
    PromptSet prompts = builtin_prompt_set(Variant::Instruct);
    CHECK_THROWS_AS(plan_by_tokens(corpus, prompts, 6, 100), Error);
}

TEST_CASE("token planning spreads samples evenly over documents") {
    Corpus corpus = synthetic_corpus(10);
    PromptSet prompts = builtin_prompt_set(Variant::Instruct);
    GenerationPlan plan = plan_by_tokens(corpus, prompts, 70'000, 100);

    std::map<std::pair<std::string, Strategy>, uint64_t> per_doc_strategy;
    for (const auto &a : plan.assignments) ++per_doc_strategy[{a.doc_id, a.strategy}];
    for (Strategy s : kCanonicalStrategies) {
        uint64_t lo = UINT64_MAX, hi = 0;
        for (const auto &doc : corpus.documents) {
            uint64_t c = per_doc_strategy[{doc.id, s}];
            lo = std::min(lo, c);
            hi = std::max(hi, c);
        }
        CHECK(hi - lo <= 1);
    }
}

TEST_CASE("sample planning: 200 docs x 3200 samples = 640000 assignments") {
    Corpus corpus = synthetic_corpus(200);
    PromptSet prompts = builtin_prompt_set(Variant::Instruct);
    GenerationPlan plan = plan_by_samples(corpus, prompts, 3200);
    CHECK(plan.assignments.size() == 640'000);
    CHECK(!plan.target_tokens.has_value());
}

TEST_CASE("sample planning round-robin structure") {
    Corpus corpus = synthetic_corpus(3);
    PromptSet prompts = builtin_prompt_set(Variant::Instruct);

    SUBCASE("spp = M covers each (doc, strategy) exactly once") {
        GenerationPlan plan = plan_by_samples(corpus, prompts, 7);
        std::set<std::pair<std::string, Strategy>> pairs;
        for (const auto &a : plan.assignments) pairs.insert({a.doc_id, a.strategy});
        CHECK(pairs.size() == 21);
    }

    SUBCASE("spp = 5 gives each doc the first five strategies in canonical order") {
        GenerationPlan plan = plan_by_samples(corpus, prompts, 5);
        for (const auto &doc : corpus.documents) {
            std::vector<Strategy> strategies;
            for (const auto &a : plan.assignments)
                if (a.doc_id == doc.id) strategies.push_back(a.strategy);
            REQUIRE(strategies.size() == 5);
            for (size_t k = 0; k < 5; ++k) CHECK(strategies[k] == kCanonicalStrategies[k]);
        }
    }

    SUBCASE("strategy of sample k is strategies[k mod M]") {
        GenerationPlan plan = plan_by_samples(corpus, prompts, 16);
        for (const auto &a : plan.assignments)
            CHECK(a.strategy == kCanonicalStrategies[a.sample_index % 7]);
    }
}

TEST_CASE("triples are unique and ordering is doc-major") {
    Corpus corpus = synthetic_corpus(4);
    PromptSet prompts = builtin_prompt_set(Variant::Instruct);
    GenerationPlan plan = plan_by_samples(corpus, prompts, 9);

    std::set<std::tuple<std::string, Strategy, uint64_t>> triples;
    for (const auto &a : plan.assignments)
        CHECK(triples.insert({a.doc_id, a.strategy, a.sample_index}).second);

    size_t idx = 0;
    for (const auto &doc : corpus.documents)
        for (uint64_t k = 0; k < 9; ++k, ++idx)
            CHECK(plan.assignments[idx].doc_id == doc.id);
}

TEST_CASE("scaling monotonicity: larger spp plans contain smaller ones") {
    Corpus corpus = synthetic_corpus(5);
    PromptSet prompts = builtin_prompt_set(Variant::Instruct);
    GenerationPlan small = plan_by_samples(corpus, prompts, 5);
    GenerationPlan large = plan_by_samples(corpus, prompts, 27);

    std::set<std::tuple<std::string, Strategy, uint64_t>> large_triples;
    for (const auto &a : large.assignments)
        large_triples.insert({a.doc_id, a.strategy, a.sample_index});
    for (const auto &a : small.assignments)
        CHECK(large_triples.count({a.doc_id, a.strategy, a.sample_index}) == 1);
}

TEST_CASE("estimate_total_tokens") {
    Corpus corpus = synthetic_corpus(200);
    PromptSet prompts = builtin_prompt_set(Variant::Instruct);

    SUBCASE("arithmetic: 640000 assignments at 187 tokens") {
        GenerationPlan plan = plan_by_samples(corpus, prompts, 3200);
        plan.est_tokens_per_sample = 187;
        CHECK(estimate_total_tokens(plan) == 119'680'000);
    }

    SUBCASE("empty plan estimates zero") {
        GenerationPlan plan;
        CHECK(estimate_total_tokens(plan) == 0);
    }

    SUBCASE("token-mode estimate stays within M * est of D") {
        const uint64_t d = 1'000'000;
        GenerationPlan plan = plan_by_tokens(corpus, prompts, d, 188);
        uint64_t estimate = estimate_total_tokens(plan);
        CHECK(estimate >= d - 7 * 188);
        CHECK(estimate <= d + 7 * 188);
    }
}

TEST_CASE("planning is deterministic and survives a save/load round trip") {
    Corpus corpus = synthetic_corpus(6);
    PromptSet prompts = builtin_prompt_set(Variant::Base);
    GenerationPlan a = plan_by_tokens(corpus, prompts, 10'000, 100);
    GenerationPlan b = plan_by_tokens(corpus, prompts, 10'000, 100);
    CHECK(a.fingerprint() == b.fingerprint());

    char tmpl[] = "/tmp/spa-plan-XXXXXX";
    REQUIRE(mkdtemp(tmpl) != nullptr);
    std::string path = std::string(tmpl) + "/plan.jsonl";
    save_plan(a, path);
    GenerationPlan loaded = load_plan(path);
    CHECK(loaded.fingerprint() == a.fingerprint());
    CHECK(loaded.assignments.size() == a.assignments.size());
    CHECK(loaded.est_tokens_per_sample == a.est_tokens_per_sample);
    REQUIRE(loaded.target_tokens.has_value());
    CHECK(*loaded.target_tokens == 10'000);
}

TEST_CASE("subset planning uses the reduced strategy set") {
    Corpus corpus = synthetic_corpus(2);
    PromptSet prompts = subset(builtin_prompt_set(Variant::Instruct),
                               {Strategy::KeyConcepts});
    GenerationPlan plan = plan_by_samples(corpus, prompts, 6);
    for (const auto &a : plan.assignments) CHECK(a.strategy != Strategy::KeyConcepts);
    CHECK(plan.quotas.size() == 6);
}
