#pragma once

#include "spa/diversity.hpp"
#include "spa/openai_client.hpp"
#include "spa/prompts.hpp"

#include <optional>
#include <string>
#include <vector>

namespace spa {

// Parsed --config file. JSON with fixed sections; unknown keys anywhere are
// rejected before anything touches the network. API keys never appear here -
// only the names of environment variables that hold them.
struct RunConfig {
    // corpus
    std::string corpus_format; // squad | jsonl | txt-dir
    std::string corpus_path;

    // prompts
    std::optional<Variant> variant;
    std::vector<Strategy> remove; // ablation subset, Table-style short names
    std::string prompt_dir;       // optional custom template directory

    // planner
    std::string planner_mode; // tokens | samples
    uint64_t target_tokens = 0;
    uint64_t est_tokens_per_sample = 0; // 0 -> default
    uint64_t samples_per_passage = 0;

    // endpoints
    std::optional<GeneratorConfig> generator;
    std::optional<GeneratorConfig> judge;

    DiversityConfig diversity;

    // export
    uint64_t shuffle_seed = 0;
    bool dedup = false;
    std::string token_counter_mode = "approximate"; // approximate | vocabulary
    std::string merges_path;

    std::string output_dir;

    static RunConfig load(const std::string &path);
};

} // namespace spa
