#pragma once

#include "spa/corpus.hpp"
#include "spa/prompts.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace spa {

// Average tokens per generated sample assumed when no measurement exists;
// re-true against a pilot run for tighter budgets.
inline constexpr uint64_t kDefaultEstTokensPerSample = 188;

struct Assignment {
    std::string doc_id;
    Strategy strategy = Strategy::KeyConcepts;
    uint64_t sample_index = 0; // per-document counter, unique per (doc_id, sample_index)

    bool operator==(const Assignment &other) const = default;
};

struct GenerationPlan {
    std::optional<uint64_t> target_tokens;
    uint64_t est_tokens_per_sample = kDefaultEstTokensPerSample;
    // Canonical strategy order; token quota per strategy.
    std::vector<std::pair<Strategy, uint64_t>> quotas;
    std::vector<Assignment> assignments;
    std::string corpus_fingerprint;

    // Content hash over everything above; the resume integrity check.
    std::string fingerprint() const;
};

// Splits a target token budget D evenly across the set's strategies (within
// one sample), then spreads each strategy's samples across documents (within
// one per document). Deterministic: the remainder goes to the earliest
// strategies/documents in canonical order. Assignments are emitted doc-major,
// strategies round-robin within each document.
GenerationPlan plan_by_tokens(const Corpus &corpus, const PromptSet &prompts,
                              uint64_t target_tokens, uint64_t est_tokens_per_sample);

// Scaling by count instead of budget: every document receives exactly
// samples_per_passage assignments; sample k of a document uses strategy
// k mod M. target_tokens stays unset; est feeds estimate_total_tokens.
GenerationPlan plan_by_samples(const Corpus &corpus, const PromptSet &prompts,
                               uint64_t samples_per_passage,
                               uint64_t est_tokens_per_sample = kDefaultEstTokensPerSample);

uint64_t estimate_total_tokens(const GenerationPlan &plan);

// JSONL: one header record, then one line per assignment.
void save_plan(const GenerationPlan &plan, const std::string &path);
GenerationPlan load_plan(const std::string &path);

} // namespace spa
