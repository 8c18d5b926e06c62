#include "spa/samples.hpp"

#include "spa/errors.hpp"
#include "spa/hash.hpp"

#include <json.hpp>

#include <ctime>
#include <fstream>

namespace spa {

using nlohmann::json;

std::string sample_id_for(const std::string &doc_id, Strategy strategy,
                          uint64_t sample_index) {
    Fnv1a64 h;
    h.field(doc_id).field(short_name(strategy)).field(std::to_string(sample_index));
    return to_hex(h.value());
}

std::string SyntheticSample::to_jsonl() const {
    json obj = {
        {"sample_id", sample_id},
        {"doc_id", doc_id},
        {"strategy", short_name(strategy)},
        {"sample_index", sample_index},
        {"variant", variant_name(variant)},
        {"text", text},
        {"token_count", token_count},
        {"model", model},
        {"finish_reason", finish_reason},
        {"created_at", created_at},
        {"attempts", attempts},
    };
    return obj.dump();
}

SyntheticSample parse_sample_line(const std::string &line) {
    json obj = json::parse(line); // caller handles parse_error
    SyntheticSample s;
    s.sample_id = obj.value("sample_id", "");
    s.doc_id = obj.at("doc_id").get<std::string>();
    auto strategy = strategy_from_name(obj.at("strategy").get<std::string>());
    if (!strategy) throw json::other_error::create(501, "unknown strategy", &obj);
    s.strategy = *strategy;
    s.sample_index = obj.value("sample_index", uint64_t{0});
    auto variant = variant_from_name(obj.value("variant", "instruct"));
    s.variant = variant.value_or(Variant::Instruct);
    s.text = obj.value("text", "");
    s.token_count = obj.value("token_count", uint64_t{0});
    s.model = obj.value("model", "");
    s.finish_reason = obj.value("finish_reason", "");
    s.created_at = obj.value("created_at", "");
    s.attempts = obj.value("attempts", 0);
    if (s.sample_id.empty())
        s.sample_id = sample_id_for(s.doc_id, s.strategy, s.sample_index);
    return s;
}

std::vector<SyntheticSample> read_samples_jsonl(const std::string &path,
                                                bool tolerate_torn_tail) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::precondition, "cannot open samples file: " + path);

    std::vector<SyntheticSample> samples;
    std::string line;
    size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.empty()) continue;
        try {
            samples.push_back(parse_sample_line(line));
        } catch (const json::exception &e) {
            bool at_eof = in.peek() == std::ifstream::traits_type::eof();
            if (tolerate_torn_tail && at_eof) break;
            fail(ErrorKind::precondition,
                 path + " line " + std::to_string(line_number) + ": " + e.what());
        }
    }
    return samples;
}

std::string utc_timestamp() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace spa
