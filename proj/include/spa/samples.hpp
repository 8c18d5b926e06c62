#pragma once

#include "spa/prompts.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace spa {

// One generated rewriting with full provenance.
struct SyntheticSample {
    std::string sample_id; // content hash of (doc_id, strategy, sample_index)
    std::string doc_id;
    Strategy strategy = Strategy::KeyConcepts;
    uint64_t sample_index = 0;
    Variant variant = Variant::Instruct;
    std::string text;
    uint64_t token_count = 0;
    std::string model;         // echoed from the response
    std::string finish_reason;
    std::string created_at;    // ISO-8601 UTC
    int attempts = 0;

    std::string to_jsonl() const;
};

std::string sample_id_for(const std::string &doc_id, Strategy strategy,
                          uint64_t sample_index);

SyntheticSample parse_sample_line(const std::string &line);

// Reads a samples JSONL file. With tolerate_torn_tail, a final line that does
// not parse (an interrupted write) is dropped instead of raising; any
// malformed line elsewhere still raises.
std::vector<SyntheticSample> read_samples_jsonl(const std::string &path,
                                                bool tolerate_torn_tail = false);

std::string utc_timestamp();

} // namespace spa
