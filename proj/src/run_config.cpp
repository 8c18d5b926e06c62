#include "spa/run_config.hpp"

#include "spa/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <set>

namespace spa {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json &obj, const std::set<std::string> &known,
                         const std::string &where) {
    for (const auto &[key, _] : obj.items())
        if (!known.count(key))
            fail(ErrorKind::config, "unknown config key '" + key + "' in " + where);
}

GeneratorConfig parse_endpoint(const json &obj, const std::string &where) {
    reject_unknown_keys(obj,
                        {"endpoint_url", "model", "variant", "temperature", "top_p",
                         "max_output_tokens", "api_key_env", "max_in_flight", "retry",
                         "request_timeout_ms"},
                        where);
    GeneratorConfig config;
    config.endpoint_url = obj.value("endpoint_url", "");
    config.model = obj.value("model", "");
    if (obj.contains("variant")) {
        auto v = variant_from_name(obj["variant"].get<std::string>());
        if (!v) fail(ErrorKind::config, where + ".variant must be instruct or base");
        config.variant = *v;
    } else {
        fail(ErrorKind::config, where + ".variant is required (instruct or base)");
    }
    config.temperature = obj.value("temperature", 1.0);
    config.top_p = obj.value("top_p", 1.0);
    config.max_output_tokens = obj.value("max_output_tokens", uint64_t{1024});
    config.api_key_env = obj.value("api_key_env", "SPA_API_KEY");
    config.max_in_flight = obj.value("max_in_flight", 4);
    if (obj.contains("retry")) {
        const auto &retry = obj["retry"];
        reject_unknown_keys(retry, {"max_attempts", "base_delay_ms", "max_delay_ms"},
                            where + ".retry");
        config.retry.max_attempts = retry.value("max_attempts", 5);
        config.retry.base_delay_ms = retry.value("base_delay_ms", 500);
        config.retry.max_delay_ms = retry.value("max_delay_ms", 10000);
    }
    config.request_timeout_ms = obj.value("request_timeout_ms", 30000);
    config.validate();
    return config;
}

} // namespace

RunConfig RunConfig::load(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::config, "cannot open config file: " + path);
    json root;
    try {
        root = json::parse(in);
    } catch (const json::parse_error &e) {
        fail(ErrorKind::config, path + ": " + e.what());
    }

    reject_unknown_keys(root,
                        {"corpus", "prompts", "planner", "generator", "judge",
                         "diversity", "export", "output_dir"},
                        "config root");

    RunConfig config;

    if (root.contains("corpus")) {
        const auto &corpus = root["corpus"];
        reject_unknown_keys(corpus, {"format", "path"}, "corpus");
        config.corpus_format = corpus.value("format", "");
        config.corpus_path = corpus.value("path", "");
    }

    if (root.contains("prompts")) {
        const auto &prompts = root["prompts"];
        reject_unknown_keys(prompts, {"variant", "remove", "dir"}, "prompts");
        if (prompts.contains("variant")) {
            auto v = variant_from_name(prompts["variant"].get<std::string>());
            if (!v) fail(ErrorKind::config, "prompts.variant must be instruct or base");
            config.variant = *v;
        }
        if (prompts.contains("remove"))
            for (const auto &name : prompts["remove"]) {
                auto s = strategy_from_name(name.get<std::string>());
                if (!s)
                    fail(ErrorKind::config,
                         "prompts.remove: unknown strategy '" + name.get<std::string>() +
                             "' (expected Key|Mind|Imp|QA-ct|Case|Disc|Teach)");
                config.remove.push_back(*s);
            }
        config.prompt_dir = prompts.value("dir", "");
    }

    if (root.contains("planner")) {
        const auto &planner = root["planner"];
        reject_unknown_keys(
            planner, {"mode", "target_tokens", "est_tokens_per_sample", "samples_per_passage"},
            "planner");
        config.planner_mode = planner.value("mode", "");
        config.target_tokens = planner.value("target_tokens", uint64_t{0});
        config.est_tokens_per_sample = planner.value("est_tokens_per_sample", uint64_t{0});
        config.samples_per_passage = planner.value("samples_per_passage", uint64_t{0});
        if (!config.planner_mode.empty() && config.planner_mode != "tokens" &&
            config.planner_mode != "samples")
            fail(ErrorKind::config, "planner.mode must be tokens or samples");
    }

    if (root.contains("generator"))
        config.generator = parse_endpoint(root["generator"], "generator");
    if (root.contains("judge")) config.judge = parse_endpoint(root["judge"], "judge");

    if (root.contains("diversity")) {
        const auto &diversity = root["diversity"];
        reject_unknown_keys(diversity,
                            {"ngram_n", "min_words", "truncate_words",
                             "samples_per_article", "articles", "seed"},
                            "diversity");
        config.diversity.ngram_n = diversity.value("ngram_n", config.diversity.ngram_n);
        config.diversity.min_words = diversity.value("min_words", config.diversity.min_words);
        config.diversity.truncate_words =
            diversity.value("truncate_words", config.diversity.truncate_words);
        config.diversity.samples_per_article =
            diversity.value("samples_per_article", config.diversity.samples_per_article);
        config.diversity.articles = diversity.value("articles", config.diversity.articles);
        config.diversity.seed = diversity.value("seed", config.diversity.seed);
        config.diversity.validate();
    }

    if (root.contains("export")) {
        const auto &exp = root["export"];
        reject_unknown_keys(exp, {"shuffle_seed", "dedup", "token_counter"}, "export");
        config.shuffle_seed = exp.value("shuffle_seed", uint64_t{0});
        config.dedup = exp.value("dedup", false);
        if (exp.contains("token_counter")) {
            const auto &counter = exp["token_counter"];
            reject_unknown_keys(counter, {"mode", "merges_path"}, "export.token_counter");
            config.token_counter_mode = counter.value("mode", "approximate");
            config.merges_path = counter.value("merges_path", "");
            if (config.token_counter_mode != "approximate" &&
                config.token_counter_mode != "vocabulary")
                fail(ErrorKind::config,
                     "export.token_counter.mode must be approximate or vocabulary");
            if (config.token_counter_mode == "vocabulary" && config.merges_path.empty())
                fail(ErrorKind::config, "vocabulary token counter needs merges_path");
        }
    }

    config.output_dir = root.value("output_dir", "");
    return config;
}

} // namespace spa
