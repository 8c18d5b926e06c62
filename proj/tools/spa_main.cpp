#include "spa/corpus.hpp"
#include "spa/diversity.hpp"
#include "spa/errors.hpp"
#include "spa/eval.hpp"
#include "spa/exporter.hpp"
#include "spa/generation.hpp"
#include "spa/planner.hpp"
#include "spa/prompts.hpp"
#include "spa/run_config.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace spa;

namespace {

bool g_verbose = false;

void chat(const std::string &line) {
    if (g_verbose) std::cerr << "[spa] " << line << "\n";
}

Corpus load_corpus_from(const RunConfig &config) {
    if (config.corpus_format.empty() || config.corpus_path.empty())
        fail(ErrorKind::config, "corpus format and path are required (config or flags)");
    Corpus corpus = load_corpus(config.corpus_format, config.corpus_path);
    chat("corpus " + config.corpus_path + ": " + std::to_string(corpus.size()) +
         " documents, fingerprint " + corpus.fingerprint());
    return corpus;
}

PromptSet prompts_from(const RunConfig &config) {
    if (!config.variant)
        fail(ErrorKind::config, "prompt variant is required (instruct or base)");
    PromptSet set = config.prompt_dir.empty()
                        ? builtin_prompt_set(*config.variant)
                        : load_prompt_dir(config.prompt_dir, *config.variant);
    if (!config.remove.empty()) set = subset(set, config.remove);
    return set;
}

TokenCounter counter_from(const RunConfig &config) {
    if (config.token_counter_mode == "vocabulary")
        return TokenCounter::from_merges_file(config.merges_path);
    return TokenCounter::approximate();
}

GenerationPlan make_plan(const RunConfig &config, const Corpus &corpus,
                         const PromptSet &prompts) {
    if (config.planner_mode == "tokens") {
        if (config.target_tokens == 0)
            fail(ErrorKind::config, "planner.target_tokens is required in tokens mode");
        uint64_t est = config.est_tokens_per_sample ? config.est_tokens_per_sample
                                                    : kDefaultEstTokensPerSample;
        return plan_by_tokens(corpus, prompts, config.target_tokens, est);
    }
    if (config.planner_mode == "samples") {
        if (config.samples_per_passage == 0)
            fail(ErrorKind::config, "planner.samples_per_passage is required in samples mode");
        return plan_by_samples(corpus, prompts, config.samples_per_passage);
    }
    fail(ErrorKind::config, "planner.mode must be tokens or samples");
}

GeneratorConfig generator_from(const RunConfig &config) {
    if (!config.generator)
        fail(ErrorKind::config, "generator endpoint settings are required (config file)");
    GeneratorConfig generator = *config.generator;
    if (config.variant) generator.variant = *config.variant;
    chat("endpoint " + generator.endpoint_url + ", model " + generator.model +
         ", variant " + std::string(variant_name(generator.variant)) + ", max in flight " +
         std::to_string(generator.max_in_flight));
    return generator;
}

void print_manifest_summary(const Manifest &manifest) {
    std::cout << "total: " << manifest.total << "\n"
              << "done: " << manifest.done_count() << "\n"
              << "failed: " << manifest.failed_count() << "\n"
              << "pending: " << manifest.pending_count() << "\n";
}

std::string format_metric(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", value);
    return buf;
}

std::string read_text_file(const std::string &path, const char *what) {
    std::ifstream f(path, std::ios::binary);
    if (!f) fail(ErrorKind::config, std::string("cannot open ") + what + ": " + path);
    return std::string(std::istreambuf_iterator<char>(f), {});
}

int cmd_ingest(const RunConfig &config) {
    Corpus corpus = load_corpus_from(config);
    uint64_t words = 0;
    for (const auto &doc : corpus.documents) words += doc.word_count;
    std::cout << "corpus: " << corpus.name << "\n"
              << "documents: " << corpus.size() << "\n"
              << "words: " << words << "\n";
    return 0;
}

int cmd_plan(const RunConfig &config, std::string out_path) {
    Corpus corpus = load_corpus_from(config);
    PromptSet prompts = prompts_from(config);
    GenerationPlan plan = make_plan(config, corpus, prompts);

    if (out_path.empty()) {
        fs::create_directories(config.output_dir);
        out_path = (fs::path(config.output_dir) / "plan.jsonl").string();
    }
    save_plan(plan, out_path);
    std::cout << "plan: " << out_path << "\n"
              << "assignments: " << plan.assignments.size() << "\n"
              << "estimated_tokens: " << estimate_total_tokens(plan) << "\n";
    for (const auto &[strategy, quota] : plan.quotas)
        std::cout << "quota[" << short_name(strategy) << "]: " << quota << "\n";
    return 0;
}

int cmd_generate(const RunConfig &config, const std::string &plan_path) {
    Corpus corpus = load_corpus_from(config);
    PromptSet prompts = prompts_from(config);
    GeneratorConfig generator = generator_from(config);
    GenerationPlan plan =
        plan_path.empty() ? make_plan(config, corpus, prompts) : load_plan(plan_path);
    chat("running " + std::to_string(plan.assignments.size()) + " assignments into " +
         config.output_dir);
    Manifest manifest =
        execute(plan, corpus, prompts, generator, config.output_dir, counter_from(config));
    print_manifest_summary(manifest);
    return 0;
}

int cmd_resume(const RunConfig &config) {
    Corpus corpus = load_corpus_from(config);
    PromptSet prompts = prompts_from(config);
    GeneratorConfig generator = generator_from(config);
    std::string manifest_path = (fs::path(config.output_dir) / "manifest.jsonl").string();
    Manifest before = load_manifest(manifest_path);
    bool nothing = before.total > 0 && before.done_count() == before.total;
    Manifest manifest = resume(manifest_path, corpus, prompts, generator,
                               config.output_dir, counter_from(config));
    if (nothing) std::cout << "nothing to do\n";
    print_manifest_summary(manifest);
    return 0;
}

int cmd_export(const RunConfig &config, std::string samples_path, std::string out_path) {
    if (samples_path.empty())
        samples_path = (fs::path(config.output_dir) / "samples.jsonl").string();
    if (out_path.empty())
        out_path = (fs::path(config.output_dir) / "corpus.jsonl").string();

    auto samples = read_samples_jsonl(samples_path);
    uint64_t removed = 0;
    if (config.dedup) {
        auto result = dedup_exact(samples);
        samples = std::move(result.samples);
        removed = result.removed;
    }
    TokenCounter counter = counter_from(config);
    ExportStats stats = export_jsonl(samples, config.shuffle_seed, out_path, counter);
    TokenStats tokens = token_stats(samples, counter);

    json sidecar = {{"schema_version", 1},
                    {"lines", stats.lines},
                    {"total_tokens", stats.total_tokens},
                    {"per_strategy", tokens.per_strategy},
                    {"removed_duplicates", removed},
                    {"shuffle_seed", config.shuffle_seed}};
    std::ofstream side(out_path + ".stats.json", std::ios::binary | std::ios::trunc);
    side << sidecar.dump(2) << "\n";

    std::cout << "exported: " << out_path << "\n"
              << "lines: " << stats.lines << "\n"
              << "total_tokens: " << stats.total_tokens << "\n"
              << "removed_duplicates: " << removed << "\n";
    return 0;
}

int cmd_diversity(const RunConfig &config, std::string samples_path,
                  const std::string &tagger_cmd) {
    if (samples_path.empty())
        samples_path = (fs::path(config.output_dir) / "samples.jsonl").string();

    auto samples = read_samples_jsonl(samples_path);
    std::map<std::string, std::vector<SyntheticSample>> by_article;
    for (auto &s : samples) by_article[s.doc_id].push_back(std::move(s));

    std::unique_ptr<SubprocessTagger> external;
    const PosTagger *tagger = &bundled_tagger();
    if (!tagger_cmd.empty()) {
        external = std::make_unique<SubprocessTagger>(tagger_cmd);
        tagger = external.get();
    }

    DiversityReport report = run_protocol(by_article, config.diversity, *tagger);

    fs::create_directories(config.output_dir);
    json out = {{"config",
                 {{"ngram_n", report.config.ngram_n},
                  {"min_words", report.config.min_words},
                  {"truncate_words", report.config.truncate_words},
                  {"samples_per_article", report.config.samples_per_article},
                  {"articles", report.config.articles},
                  {"seed", report.config.seed}}},
                {"averages",
                 {{"cr", report.averages.cr},
                  {"self_repetition", report.averages.self_rep},
                  {"self_bleu", report.averages.self_bleu},
                  {"cr_pos", report.averages.cr_pos}}}};
    json articles = json::object();
    for (const auto &[id, s] : report.per_article)
        articles[id] = {{"cr", s.cr},
                        {"self_repetition", s.self_rep},
                        {"self_bleu", s.self_bleu},
                        {"cr_pos", s.cr_pos}};
    out["per_article"] = articles;

    fs::path json_path = fs::path(config.output_dir) / "diversity.json";
    fs::path csv_path = fs::path(config.output_dir) / "diversity.csv";
    {
        std::ofstream f(json_path, std::ios::binary | std::ios::trunc);
        f << out.dump(2) << "\n";
    }
    {
        std::ofstream f(csv_path, std::ios::binary | std::ios::trunc);
        f << "unit,cr,self_repetition,self_bleu,cr_pos\n";
        for (const auto &[id, s] : report.per_article)
            f << id << ',' << format_metric(s.cr) << ',' << format_metric(s.self_rep)
              << ',' << format_metric(s.self_bleu) << ',' << format_metric(s.cr_pos)
              << "\n";
        f << "average," << format_metric(report.averages.cr) << ','
          << format_metric(report.averages.self_rep) << ','
          << format_metric(report.averages.self_bleu) << ','
          << format_metric(report.averages.cr_pos) << "\n";
    }

    std::cout << "articles: " << report.per_article.size() << "\n"
              << "avg_cr: " << format_metric(report.averages.cr) << "\n"
              << "avg_self_repetition: " << format_metric(report.averages.self_rep) << "\n"
              << "avg_self_bleu: " << format_metric(report.averages.self_bleu) << "\n"
              << "avg_cr_pos: " << format_metric(report.averages.cr_pos) << "\n"
              << "report: " << json_path.string() << "\n";
    return 0;
}

int cmd_eval(const RunConfig &config, const std::string &items_path,
             const std::string &mode_name, const std::string &exemplars_path,
             const std::string &judge_prompt_path, int64_t token_budget) {
    if (!config.generator)
        fail(ErrorKind::config, "generator (model under test) settings are required");
    if (!config.judge) fail(ErrorKind::config, "judge settings are required");

    PromptMode mode;
    if (mode_name == "multihop") {
        mode = PromptMode::zero_shot_multihop;
    } else if (mode_name == "squad") {
        mode = PromptMode::squad_qa;
    } else if (mode_name == "few-shot") {
        mode = PromptMode::few_shot;
    } else {
        fail(ErrorKind::config, "eval mode must be multihop, squad or few-shot");
    }

    std::string exemplars;
    if (!exemplars_path.empty())
        exemplars = read_text_file(exemplars_path, "exemplars file");
    std::string judge_prompt = kDefaultJudgePrompt;
    if (!judge_prompt_path.empty())
        judge_prompt = read_text_file(judge_prompt_path, "judge prompt file");

    auto items = load_qa_jsonl(items_path);
    auto records =
        run_eval(items, mode, *config.generator, *config.judge, exemplars, judge_prompt);

    std::vector<JudgeVerdict> verdicts;
    for (const auto &r : records) verdicts.push_back(r.verdict);
    AccuracySummary summary = accuracy(verdicts);

    fs::create_directories(config.output_dir);
    {
        std::ofstream f(fs::path(config.output_dir) / "records.jsonl",
                        std::ios::binary | std::ios::trunc);
        for (const auto &r : records) {
            json line = {{"id", r.item.id},
                         {"raw", r.raw_prediction},
                         {"extracted", r.extracted},
                         {"verdict",
                          {{"correct", r.verdict.correct},
                           {"parseable", r.verdict.parseable},
                           {"raw_response", r.verdict.raw_response}}}};
            f << line.dump() << "\n";
        }
    }
    json summary_json = {{"accuracy", summary.accuracy},
                         {"correct", summary.correct},
                         {"wrong", summary.wrong},
                         {"errored", summary.errored},
                         {"total", records.size()},
                         {"model_request", // parameters sent with every query
                          {{"endpoint_url", config.generator->endpoint_url},
                           {"model", config.generator->model},
                           {"variant", variant_name(config.generator->variant)},
                           {"temperature", config.generator->temperature},
                           {"top_p", config.generator->top_p},
                           {"max_output_tokens", config.generator->max_output_tokens}}},
                         {"judge_model", config.judge->model}};
    if (token_budget >= 0) summary_json["token_budget"] = token_budget;
    {
        std::ofstream f(fs::path(config.output_dir) / "summary.json",
                        std::ios::binary | std::ios::trunc);
        f << summary_json.dump(2) << "\n";
    }

    std::cout << "evaluated: " << records.size() << "\n"
              << "accuracy: " << format_metric(summary.accuracy) << "\n"
              << "correct: " << summary.correct << "\n"
              << "wrong: " << summary.wrong << "\n"
              << "errored: " << summary.errored << "\n";
    return 0;
}

int cmd_report(const std::string &dir, std::string out_path) {
    if (!fs::is_directory(dir))
        fail(ErrorKind::precondition, "not a directory: " + dir);
    if (out_path.empty()) out_path = (fs::path(dir) / "scaling.csv").string();

    std::vector<fs::path> files;
    for (const auto &entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".json")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());

    struct Row {
        int64_t budget;
        double accuracy;
    };
    std::vector<Row> rows;
    for (const auto &file : files) {
        std::ifstream f(file, std::ios::binary);
        json obj;
        try {
            obj = json::parse(f);
        } catch (const json::parse_error &) {
            continue;
        }
        if (obj.contains("token_budget") && obj.contains("accuracy"))
            rows.push_back({obj["token_budget"].get<int64_t>(),
                            obj["accuracy"].get<double>()});
    }
    if (rows.empty())
        fail(ErrorKind::precondition,
             dir + ": no eval summaries with token_budget and accuracy found");

    std::stable_sort(rows.begin(), rows.end(),
                     [](const Row &a, const Row &b) { return a.budget < b.budget; });

    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    out << "token_budget,accuracy\n";
    for (const auto &row : rows)
        out << row.budget << ',' << format_metric(row.accuracy) << "\n";

    std::cout << "rows: " << rows.size() << "\n"
              << "report: " << out_path << "\n";
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Prompt-set corpus augmentation pipeline"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    bool verbose = false;
    app.add_option("--config", config_path, "JSON run config");
    app.add_option("--out-dir", out_dir, "output directory (overrides config)");
    app.add_flag("--verbose", verbose, "chatty progress output");

    std::string corpus_format, corpus_path, variant_arg;
    std::vector<std::string> remove_arg;
    auto add_shared_flags = [&](CLI::App *cmd, bool with_prompts) {
        cmd->add_option("--format", corpus_format, "corpus format: squad|jsonl|txt-dir");
        cmd->add_option("--path", corpus_path, "corpus file or directory");
        if (with_prompts) {
            cmd->add_option("--variant", variant_arg, "prompt variant: instruct|base");
            cmd->add_option("--remove", remove_arg, "strategies to drop (short names)");
        }
    };

    auto *ingest = app.add_subcommand("ingest", "load a corpus and print counts");
    add_shared_flags(ingest, false);

    auto *plan_cmd = app.add_subcommand("plan", "build a generation plan");
    add_shared_flags(plan_cmd, true);
    std::string plan_out;
    uint64_t opt_target_tokens = 0, opt_est = 0, opt_spp = 0;
    plan_cmd->add_option("--out", plan_out, "plan file path");
    plan_cmd->add_option("--target-tokens", opt_target_tokens, "token budget D");
    plan_cmd->add_option("--est-tokens", opt_est, "estimated tokens per sample");
    plan_cmd->add_option("--samples-per-passage", opt_spp, "samples per passage");

    auto *generate = app.add_subcommand("generate", "run a plan against the endpoint");
    add_shared_flags(generate, true);
    std::string plan_path;
    generate->add_option("--plan", plan_path, "plan file (default: computed from config)");

    auto *resume_cmd = app.add_subcommand("resume", "continue an interrupted run");
    add_shared_flags(resume_cmd, true);

    auto *export_cmd = app.add_subcommand("export", "assemble samples into a training file");
    std::string samples_path, export_out;
    uint64_t opt_shuffle_seed = 0;
    bool opt_dedup = false;
    export_cmd->add_option("--samples", samples_path, "samples JSONL path");
    export_cmd->add_option("--out", export_out, "output corpus path");
    auto *seed_opt = export_cmd->add_option("--shuffle-seed", opt_shuffle_seed, "shuffle seed");
    export_cmd->add_flag("--dedup", opt_dedup, "drop exact duplicate texts");

    auto *diversity_cmd = app.add_subcommand("diversity", "score sample diversity");
    std::string div_samples, tagger_cmd;
    uint64_t opt_div_seed = 0, opt_articles = 0, opt_spa = 0, opt_min_words = 0,
             opt_trunc = 0, opt_ngram = 0;
    diversity_cmd->add_option("--samples", div_samples, "samples JSONL path");
    diversity_cmd->add_option("--tagger-cmd", tagger_cmd, "external tagger command");
    auto *div_seed_opt = diversity_cmd->add_option("--seed", opt_div_seed, "article sampling seed");
    auto *articles_opt = diversity_cmd->add_option("--articles", opt_articles, "articles to score");
    auto *spa_opt =
        diversity_cmd->add_option("--samples-per-article", opt_spa, "samples per article");
    auto *min_words_opt = diversity_cmd->add_option("--min-words", opt_min_words, "filter floor");
    auto *trunc_opt =
        diversity_cmd->add_option("--truncate-words", opt_trunc, "truncation length");
    auto *ngram_opt = diversity_cmd->add_option("--ngram", opt_ngram, "n-gram order");

    auto *eval_cmd = app.add_subcommand("eval", "QA evaluation through an LLM judge");
    std::string items_path, eval_mode = "multihop", exemplars_path, judge_prompt_path;
    int64_t token_budget = -1;
    eval_cmd->add_option("--items", items_path, "QA items JSONL")->required();
    eval_cmd->add_option("--mode", eval_mode, "multihop|squad|few-shot");
    eval_cmd->add_option("--exemplars", exemplars_path, "few-shot exemplars file");
    eval_cmd->add_option("--judge-prompt", judge_prompt_path, "judge prompt template file");
    eval_cmd->add_option("--token-budget", token_budget, "budget recorded in the summary");

    auto *report_cmd = app.add_subcommand("report", "collect eval summaries into a scaling CSV");
    std::string report_dir, report_out;
    report_cmd->add_option("--dir", report_dir, "directory of eval summary JSONs")->required();
    report_cmd->add_option("--out", report_out, "CSV output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        g_verbose = verbose;
        RunConfig config;
        if (!config_path.empty()) config = RunConfig::load(config_path);
        if (!out_dir.empty()) config.output_dir = out_dir;
        if (config.output_dir.empty()) config.output_dir = "runs/out";

        if (!corpus_format.empty()) config.corpus_format = corpus_format;
        if (!corpus_path.empty()) config.corpus_path = corpus_path;
        if (!variant_arg.empty()) {
            auto v = variant_from_name(variant_arg);
            if (!v) fail(ErrorKind::config, "--variant must be instruct or base");
            config.variant = *v;
        }
        for (const auto &name : remove_arg) {
            auto s = strategy_from_name(name);
            if (!s) fail(ErrorKind::config, "--remove: unknown strategy '" + name + "'");
            config.remove.push_back(*s);
        }
        if (opt_target_tokens) {
            config.planner_mode = "tokens";
            config.target_tokens = opt_target_tokens;
        }
        if (opt_est) config.est_tokens_per_sample = opt_est;
        if (opt_spp) {
            config.planner_mode = "samples";
            config.samples_per_passage = opt_spp;
        }
        if (!seed_opt->empty()) config.shuffle_seed = opt_shuffle_seed;
        if (opt_dedup) config.dedup = true;
        if (!div_seed_opt->empty()) config.diversity.seed = opt_div_seed;
        if (!articles_opt->empty()) config.diversity.articles = opt_articles;
        if (!spa_opt->empty()) config.diversity.samples_per_article = opt_spa;
        if (!min_words_opt->empty()) config.diversity.min_words = opt_min_words;
        if (!trunc_opt->empty()) config.diversity.truncate_words = opt_trunc;
        if (!ngram_opt->empty()) config.diversity.ngram_n = opt_ngram;

        if (ingest->parsed()) return cmd_ingest(config);
        if (plan_cmd->parsed()) return cmd_plan(config, plan_out);
        if (generate->parsed()) return cmd_generate(config, plan_path);
        if (resume_cmd->parsed()) return cmd_resume(config);
        if (export_cmd->parsed()) return cmd_export(config, samples_path, export_out);
        if (diversity_cmd->parsed()) return cmd_diversity(config, div_samples, tagger_cmd);
        if (eval_cmd->parsed())
            return cmd_eval(config, items_path, eval_mode, exemplars_path,
                            judge_prompt_path, token_budget);
        if (report_cmd->parsed()) return cmd_report(report_dir, report_out);
        return 2;
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception &e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
