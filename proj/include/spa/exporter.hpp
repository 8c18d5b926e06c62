#pragma once

#include "spa/samples.hpp"
#include "spa/tokenizer.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace spa {

struct ExportStats {
    uint64_t lines = 0;
    uint64_t total_tokens = 0;
};

struct TokenStats {
    uint64_t total = 0;
    std::map<std::string, uint64_t> per_strategy; // keyed by short name
};

struct DedupResult {
    std::vector<SyntheticSample> samples;
    uint64_t removed = 0;
};

// Writes one {text, doc_id, strategy, sample_index} JSON object per line in
// the order of a seeded Fisher-Yates permutation of the input. Sample text is
// written byte-for-byte as received.
ExportStats export_jsonl(const std::vector<SyntheticSample> &samples,
                         uint64_t shuffle_seed, const std::string &out_path,
                         const TokenCounter &counter);

// Drops samples whose text is byte-identical to an earlier sample; the
// earliest occurrence survives.
DedupResult dedup_exact(const std::vector<SyntheticSample> &samples);

TokenStats token_stats(const std::vector<SyntheticSample> &samples,
                       const TokenCounter &counter);

} // namespace spa
