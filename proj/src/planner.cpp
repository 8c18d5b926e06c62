#include "spa/planner.hpp"

#include "spa/errors.hpp"
#include "spa/hash.hpp"

#include <json.hpp>

#include <fstream>

namespace spa {

using nlohmann::json;

std::string GenerationPlan::fingerprint() const {
    Fnv1a64 h;
    h.field(corpus_fingerprint);
    h.field(target_tokens ? std::to_string(*target_tokens) : "none");
    h.field(std::to_string(est_tokens_per_sample));
    for (const auto &[strategy, quota] : quotas)
        h.field(short_name(strategy)).field(std::to_string(quota));
    for (const auto &a : assignments)
        h.field(a.doc_id).field(short_name(a.strategy)).field(std::to_string(a.sample_index));
    return to_hex(h.value());
}

namespace {

void check_corpus_and_prompts(const Corpus &corpus, const PromptSet &prompts) {
    if (corpus.documents.empty())
        fail(ErrorKind::precondition, "cannot plan over an empty corpus");
    if (prompts.templates.empty())
        fail(ErrorKind::precondition, "cannot plan with an empty prompt set");
}

// Emits doc-major, then round-robin over strategies; per_doc_counts[j][i] is
// how many samples document j owes to strategy i. sample_index is the
// per-document emission counter.
void emit_assignments(GenerationPlan &plan, const Corpus &corpus, const PromptSet &prompts,
                      const std::vector<std::vector<uint64_t>> &per_doc_counts) {
    for (size_t j = 0; j < corpus.documents.size(); ++j) {
        uint64_t sample_index = 0;
        uint64_t max_rounds = 0;
        for (uint64_t c : per_doc_counts[j]) max_rounds = std::max(max_rounds, c);
        for (uint64_t round = 0; round < max_rounds; ++round) {
            for (size_t i = 0; i < prompts.templates.size(); ++i) {
                if (round < per_doc_counts[j][i]) {
                    plan.assignments.push_back({corpus.documents[j].id,
                                                prompts.templates[i].strategy,
                                                sample_index++});
                }
            }
        }
    }
}

} // namespace

GenerationPlan plan_by_tokens(const Corpus &corpus, const PromptSet &prompts,
                              uint64_t target_tokens, uint64_t est_tokens_per_sample) {
    check_corpus_and_prompts(corpus, prompts);
    if (target_tokens == 0 || est_tokens_per_sample == 0)
        fail(ErrorKind::precondition, "target tokens and est tokens per sample must be positive");

    const uint64_t m = prompts.templates.size();
    const uint64_t n_docs = corpus.documents.size();
    if (target_tokens < m * est_tokens_per_sample)
        fail(ErrorKind::precondition,
             "plan too small: target of " + std::to_string(target_tokens) +
                 " tokens cannot give each of " + std::to_string(m) +
                 " strategies one sample of " + std::to_string(est_tokens_per_sample) +
                 " tokens");

    // Total samples = D/est rounded to nearest (ties up), then distributed
    // one at a time to strategies in canonical order.
    const uint64_t total_samples = (2 * target_tokens + est_tokens_per_sample) /
                                   (2 * est_tokens_per_sample);

    GenerationPlan plan;
    plan.target_tokens = target_tokens;
    plan.est_tokens_per_sample = est_tokens_per_sample;
    plan.corpus_fingerprint = corpus.fingerprint();

    std::vector<uint64_t> per_strategy(m);
    for (size_t i = 0; i < m; ++i)
        per_strategy[i] = total_samples / m + (i < total_samples % m ? 1 : 0);
    for (size_t i = 0; i < m; ++i)
        plan.quotas.emplace_back(prompts.templates[i].strategy,
                                 per_strategy[i] * est_tokens_per_sample);

    // Spread each strategy's samples over documents, earliest documents first.
    std::vector<std::vector<uint64_t>> per_doc_counts(
        n_docs, std::vector<uint64_t>(m, 0));
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < n_docs; ++j)
            per_doc_counts[j][i] =
                per_strategy[i] / n_docs + (j < per_strategy[i] % n_docs ? 1 : 0);

    emit_assignments(plan, corpus, prompts, per_doc_counts);
    return plan;
}

GenerationPlan plan_by_samples(const Corpus &corpus, const PromptSet &prompts,
                               uint64_t samples_per_passage,
                               uint64_t est_tokens_per_sample) {
    check_corpus_and_prompts(corpus, prompts);
    if (samples_per_passage == 0)
        fail(ErrorKind::precondition, "samples per passage must be at least 1");
    if (est_tokens_per_sample == 0)
        fail(ErrorKind::precondition, "est tokens per sample must be positive");

    GenerationPlan plan;
    plan.est_tokens_per_sample = est_tokens_per_sample;
    plan.corpus_fingerprint = corpus.fingerprint();

    const uint64_t m = prompts.templates.size();
    std::vector<uint64_t> per_strategy(m, 0);
    for (const auto &doc : corpus.documents) {
        for (uint64_t k = 0; k < samples_per_passage; ++k) {
            size_t i = static_cast<size_t>(k % m);
            plan.assignments.push_back({doc.id, prompts.templates[i].strategy, k});
            ++per_strategy[i];
        }
    }
    for (size_t i = 0; i < m; ++i)
        plan.quotas.emplace_back(prompts.templates[i].strategy,
                                 per_strategy[i] * plan.est_tokens_per_sample);
    return plan;
}

uint64_t estimate_total_tokens(const GenerationPlan &plan) {
    return plan.assignments.size() * plan.est_tokens_per_sample;
}

void save_plan(const GenerationPlan &plan, const std::string &path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::internal, "cannot write plan file: " + path);

    json quotas = json::object();
    for (const auto &[strategy, quota] : plan.quotas)
        quotas[std::string(short_name(strategy))] = quota;
    json header = {
        {"type", "plan"},
        {"version", 1},
        {"est_tokens_per_sample", plan.est_tokens_per_sample},
        {"quotas", quotas},
        {"corpus_fingerprint", plan.corpus_fingerprint},
        {"plan_fingerprint", plan.fingerprint()},
        {"assignments", plan.assignments.size()},
    };
    if (plan.target_tokens) header["target_tokens"] = *plan.target_tokens;
    out << header.dump() << '\n';

    for (const auto &a : plan.assignments) {
        json line = {{"doc_id", a.doc_id},
                     {"strategy", short_name(a.strategy)},
                     {"sample_index", a.sample_index}};
        out << line.dump() << '\n';
    }
    if (!out) fail(ErrorKind::internal, "write failure on plan file: " + path);
}

GenerationPlan load_plan(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::precondition, "cannot open plan file: " + path);

    std::string line;
    if (!std::getline(in, line))
        fail(ErrorKind::precondition, path + ": empty plan file");
    json header;
    try {
        header = json::parse(line);
    } catch (const json::parse_error &e) {
        fail(ErrorKind::precondition, path + ": bad plan header: " + e.what());
    }
    if (header.value("type", "") != "plan")
        fail(ErrorKind::precondition, path + ": not a plan file");

    GenerationPlan plan;
    if (header.contains("target_tokens"))
        plan.target_tokens = header["target_tokens"].get<uint64_t>();
    plan.est_tokens_per_sample = header.value("est_tokens_per_sample", kDefaultEstTokensPerSample);
    plan.corpus_fingerprint = header.value("corpus_fingerprint", "");
    if (header.contains("quotas"))
        for (Strategy s : kCanonicalStrategies) {
            auto key = std::string(short_name(s));
            if (header["quotas"].contains(key))
                plan.quotas.emplace_back(s, header["quotas"][key].get<uint64_t>());
        }

    size_t line_number = 1;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.empty()) continue;
        json obj;
        try {
            obj = json::parse(line);
        } catch (const json::parse_error &e) {
            fail(ErrorKind::precondition,
                 path + " line " + std::to_string(line_number) + ": " + e.what());
        }
        auto strategy = strategy_from_name(obj.value("strategy", ""));
        if (!strategy)
            fail(ErrorKind::precondition,
                 path + " line " + std::to_string(line_number) + ": unknown strategy");
        plan.assignments.push_back({obj.value("doc_id", ""), *strategy,
                                    obj.value("sample_index", uint64_t{0})});
    }

    std::string expect = header.value("plan_fingerprint", "");
    if (!expect.empty() && expect != plan.fingerprint())
        fail(ErrorKind::integrity, path + ": plan fingerprint mismatch (file edited?)");
    return plan;
}

} // namespace spa
