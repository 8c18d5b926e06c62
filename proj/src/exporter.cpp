#include "spa/exporter.hpp"

#include "spa/errors.hpp"
#include "spa/rng.hpp"

#include <json.hpp>

#include <fstream>
#include <numeric>
#include <unordered_set>

namespace spa {

using nlohmann::json;

ExportStats export_jsonl(const std::vector<SyntheticSample> &samples,
                         uint64_t shuffle_seed, const std::string &out_path,
                         const TokenCounter &counter) {
    if (samples.empty())
        fail(ErrorKind::precondition, "nothing to export: sample stream is empty");

    std::vector<size_t> order(samples.size());
    std::iota(order.begin(), order.end(), size_t{0});
    Rng rng(shuffle_seed);
    rng.shuffle(order);

    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::internal, "cannot write export file: " + out_path);

    ExportStats stats;
    for (size_t idx : order) {
        const auto &s = samples[idx];
        json line = {{"text", s.text},
                     {"doc_id", s.doc_id},
                     {"strategy", short_name(s.strategy)},
                     {"sample_index", s.sample_index}};
        out << line.dump() << '\n';
        ++stats.lines;
        stats.total_tokens += counter.count(s.text);
    }
    out.flush();
    if (!out) fail(ErrorKind::internal, "write failure on export file: " + out_path);
    return stats;
}

DedupResult dedup_exact(const std::vector<SyntheticSample> &samples) {
    DedupResult result;
    std::unordered_set<std::string> seen;
    for (const auto &s : samples) {
        if (seen.insert(s.text).second)
            result.samples.push_back(s);
        else
            ++result.removed;
    }
    return result;
}

TokenStats token_stats(const std::vector<SyntheticSample> &samples,
                       const TokenCounter &counter) {
    TokenStats stats;
    for (const auto &s : samples) {
        uint64_t n = counter.count(s.text);
        stats.total += n;
        stats.per_strategy[std::string(short_name(s.strategy))] += n;
    }
    return stats;
}

} // namespace spa
