#pragma once

#include "spa/corpus.hpp"
#include "spa/openai_client.hpp"
#include "spa/planner.hpp"
#include "spa/prompts.hpp"
#include "spa/samples.hpp"
#include "spa/tokenizer.hpp"

#include <functional>
#include <map>
#include <json.hpp>
#include <string>

namespace spa {

enum class AssignmentStatus { pending, done, failed };

struct AssignmentState {
    AssignmentStatus status = AssignmentStatus::pending;
    std::string fail_reason;
};

// Crash-safe record of a run: an append-only JSONL log under the output
// directory (header record, then one done/failed event per completion).
// Conservation holds at every flush: done + failed + pending == total.
struct Manifest {
    std::string plan_fingerprint;
    std::string corpus_fingerprint;
    uint64_t total = 0;
    nlohmann::json config_snapshot;
    std::map<std::string, AssignmentState> statuses; // key: doc\x1fstrategy\x1findex

    uint64_t done_count() const;
    uint64_t failed_count() const;
    uint64_t pending_count() const;
};

std::string assignment_key(const Assignment &a);

// Test hook: polled between work items by every worker; returning true makes
// the engine stop issuing requests and return with work still pending.
using StopHook = std::function<bool()>;

// Runs the whole plan against the endpoint. Writes plan.jsonl, samples.jsonl
// and manifest.jsonl under output_dir. At most config.max_in_flight requests
// are outstanding at any instant. A persistent 401/403 aborts the run; any
// other exhausted failure marks that assignment failed and the run continues.
// Refuses an output_dir that already holds a manifest (use resume).
Manifest execute(const GenerationPlan &plan, const Corpus &corpus,
                 const PromptSet &prompts, const GeneratorConfig &config,
                 const std::string &output_dir,
                 const TokenCounter &counter = TokenCounter::approximate(),
                 const StopHook &stop = {});

// Continues an interrupted or partly failed run. Verifies the manifest's plan
// and corpus fingerprints, reconciles the samples file (a torn final line is
// dropped; fully written samples count as done even if the matching manifest
// event was lost), and re-requests only pending/failed assignments. Completed
// samples are never regenerated.
Manifest resume(const std::string &manifest_path, const Corpus &corpus,
                const PromptSet &prompts, const GeneratorConfig &config,
                const std::string &output_dir,
                const TokenCounter &counter = TokenCounter::approximate(),
                const StopHook &stop = {});

Manifest load_manifest(const std::string &path);

} // namespace spa
