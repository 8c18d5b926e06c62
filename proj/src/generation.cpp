#include "spa/generation.hpp"

#include "spa/errors.hpp"
#include "spa/hash.hpp"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <thread>
#include <unordered_map>
#include <unordered_set>

namespace spa {

namespace fs = std::filesystem;
using nlohmann::json;

std::string assignment_key(const Assignment &a) {
    return a.doc_id + '\x1f' + std::string(short_name(a.strategy)) + '\x1f' +
           std::to_string(a.sample_index);
}

uint64_t Manifest::done_count() const {
    uint64_t n = 0;
    for (const auto &[_, s] : statuses) n += s.status == AssignmentStatus::done;
    return n;
}

uint64_t Manifest::failed_count() const {
    uint64_t n = 0;
    for (const auto &[_, s] : statuses) n += s.status == AssignmentStatus::failed;
    return n;
}

uint64_t Manifest::pending_count() const {
    uint64_t n = 0;
    for (const auto &[_, s] : statuses) n += s.status == AssignmentStatus::pending;
    return n;
}

namespace {

json config_snapshot(const GeneratorConfig &config) {
    return {
        {"endpoint_url", config.endpoint_url},
        {"model", config.model},
        {"variant", variant_name(config.variant)},
        {"temperature", config.temperature},
        {"top_p", config.top_p},
        {"max_output_tokens", config.max_output_tokens},
        {"api_key_env", config.api_key_env},
        {"max_in_flight", config.max_in_flight},
        {"retry",
         {{"max_attempts", config.retry.max_attempts},
          {"base_delay_ms", config.retry.base_delay_ms},
          {"max_delay_ms", config.retry.max_delay_ms}}},
        {"request_timeout_ms", config.request_timeout_ms},
    };
}

json manifest_header_record(const Manifest &manifest) {
    return {{"type", "manifest"},
            {"version", 1},
            {"plan_fingerprint", manifest.plan_fingerprint},
            {"corpus_fingerprint", manifest.corpus_fingerprint},
            {"total", manifest.total},
            {"config", manifest.config_snapshot},
            {"created_at", utc_timestamp()}};
}

json done_event_record(const SyntheticSample &sample) {
    return {{"type", "done"},
            {"doc_id", sample.doc_id},
            {"strategy", short_name(sample.strategy)},
            {"sample_index", sample.sample_index},
            {"sample_id", sample.sample_id},
            {"attempts", sample.attempts}};
}

// True when the file holds at least one complete, parseable manifest record.
// A manifest that fails this (empty, or a single torn line from a crash
// before the first flush finished) is treated as if it never existed.
bool manifest_has_records(const fs::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        try {
            json obj = json::parse(line);
            std::string type = obj.value("type", "");
            if (type == "manifest" || type == "done" || type == "failed") return true;
        } catch (const json::exception &) {
        }
    }
    return false;
}

// Writes a manifest holding the header plus one done event per sample, then
// renames it into place, so an on-disk manifest always has a complete header.
void write_manifest_atomically(const fs::path &manifest_path, const Manifest &manifest,
                               const std::vector<SyntheticSample> &done_samples) {
    fs::path tmp = manifest_path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) fail(ErrorKind::internal, "cannot write " + tmp.string());
        out << manifest_header_record(manifest).dump() << '\n';
        for (const auto &s : done_samples) out << done_event_record(s).dump() << '\n';
        out.flush();
        if (!out) fail(ErrorKind::internal, "write failure on " + tmp.string());
    }
    fs::rename(tmp, manifest_path);
}

// Serialized writer for samples + manifest events. A sample line is flushed
// before its manifest event, so a sample on disk is always authoritative.
class RunLog {
  public:
    RunLog(const std::string &samples_path, const std::string &manifest_path,
           bool truncate_samples)
        : samples_(samples_path,
                   std::ios::binary | (truncate_samples ? std::ios::trunc : std::ios::app)),
          manifest_(manifest_path, std::ios::binary | std::ios::app) {
        if (!samples_) fail(ErrorKind::internal, "cannot open " + samples_path);
        if (!manifest_) fail(ErrorKind::internal, "cannot open " + manifest_path);
    }

    void write_done(const SyntheticSample &sample) {
        std::lock_guard lock(mutex_);
        samples_ << sample.to_jsonl() << '\n';
        samples_.flush();
        manifest_ << done_event_record(sample).dump() << '\n';
        manifest_.flush();
    }

    void write_failed(const Assignment &a, const std::string &reason, int attempts) {
        std::lock_guard lock(mutex_);
        json event = {{"type", "failed"},
                      {"doc_id", a.doc_id},
                      {"strategy", short_name(a.strategy)},
                      {"sample_index", a.sample_index},
                      {"reason", reason},
                      {"attempts", attempts}};
        manifest_ << event.dump() << '\n';
        manifest_.flush();
    }

  private:
    std::ofstream samples_;
    std::ofstream manifest_;
    std::mutex mutex_;
};

void check_plan_matches_corpus(const GenerationPlan &plan, const Corpus &corpus) {
    if (plan.corpus_fingerprint != corpus.fingerprint())
        fail(ErrorKind::precondition,
             "plan was built for a different corpus (fingerprint mismatch)");
    std::unordered_set<std::string> ids;
    for (const auto &doc : corpus.documents) ids.insert(doc.id);
    for (const auto &a : plan.assignments)
        if (!ids.count(a.doc_id))
            fail(ErrorKind::precondition,
                 "plan references doc_id '" + a.doc_id + "' missing from the corpus");
}

// The shared work loop behind execute() and resume().
Manifest run_engine(const GenerationPlan &plan, const Corpus &corpus,
                    const PromptSet &prompts, const GeneratorConfig &config,
                    const std::string &output_dir, const TokenCounter &counter,
                    const StopHook &stop, Manifest manifest, RunLog &log,
                    std::vector<const Assignment *> work) {
    if (work.empty()) return manifest;

    config.validate();
    for (const auto *a : work)
        if (!prompts.find(a->strategy))
            fail(ErrorKind::precondition,
                 "plan uses strategy '" + std::string(short_name(a->strategy)) +
                     "' missing from the prompt set");

    OpenAIClient client(config);

    std::unordered_map<std::string, const Document *> docs;
    for (const auto &doc : corpus.documents) docs.emplace(doc.id, &doc);

    std::mutex state_mutex;
    std::atomic<size_t> next_item{0};
    std::atomic<bool> abort_run{false};
    std::exception_ptr abort_error;
    const std::string plan_fp = plan.fingerprint();

    auto worker = [&]() {
        while (!abort_run.load()) {
            if (stop && stop()) return;
            size_t i = next_item.fetch_add(1);
            if (i >= work.size()) return;
            const Assignment &a = *work[i];
            const Document &doc = *docs.at(a.doc_id);
            const PromptTemplate &tpl = *prompts.find(a.strategy);

            try {
                RenderedPrompt prompt = render(tpl, doc);
                uint64_t jitter_seed =
                    Fnv1a64().field(assignment_key(a)).field(plan_fp).value();
                CompletionResult result = client.complete(prompt, jitter_seed);

                SyntheticSample sample;
                sample.sample_id = sample_id_for(a.doc_id, a.strategy, a.sample_index);
                sample.doc_id = a.doc_id;
                sample.strategy = a.strategy;
                sample.sample_index = a.sample_index;
                sample.variant = config.variant;
                sample.text = result.text;
                sample.token_count = counter.count(result.text);
                sample.model = result.model;
                sample.finish_reason = result.finish_reason;
                sample.created_at = utc_timestamp();
                sample.attempts = result.attempts;
                if (sample.text.empty())
                    fail(ErrorKind::internal, "endpoint returned an empty completion");

                log.write_done(sample);
                std::lock_guard lock(state_mutex);
                manifest.statuses[assignment_key(a)] = {AssignmentStatus::done, ""};
            } catch (const Error &e) {
                if (e.kind() == ErrorKind::auth) {
                    bool first = !abort_run.exchange(true);
                    if (first) abort_error = std::current_exception();
                    return;
                }
                log.write_failed(a, e.what(), config.retry.max_attempts);
                std::lock_guard lock(state_mutex);
                manifest.statuses[assignment_key(a)] = {AssignmentStatus::failed, e.what()};
            }
        }
    };

    size_t n_workers = std::min(static_cast<size_t>(config.max_in_flight), work.size());
    std::vector<std::thread> threads;
    threads.reserve(n_workers);
    for (size_t i = 0; i < n_workers; ++i) threads.emplace_back(worker);
    for (auto &t : threads) t.join();

    if (abort_error) std::rethrow_exception(abort_error);
    (void)output_dir;
    return manifest;
}

} // namespace

Manifest execute(const GenerationPlan &plan, const Corpus &corpus,
                 const PromptSet &prompts, const GeneratorConfig &config,
                 const std::string &output_dir, const TokenCounter &counter,
                 const StopHook &stop) {
    check_plan_matches_corpus(plan, corpus);
    fs::create_directories(output_dir);
    fs::path manifest_path = fs::path(output_dir) / "manifest.jsonl";
    if (manifest_has_records(manifest_path))
        fail(ErrorKind::precondition,
             output_dir + " already holds a manifest; use resume to continue it");

    save_plan(plan, (fs::path(output_dir) / "plan.jsonl").string());

    Manifest manifest;
    manifest.plan_fingerprint = plan.fingerprint();
    manifest.corpus_fingerprint = corpus.fingerprint();
    manifest.total = plan.assignments.size();
    manifest.config_snapshot = config_snapshot(config);
    for (const auto &a : plan.assignments)
        manifest.statuses[assignment_key(a)] = {AssignmentStatus::pending, ""};

    write_manifest_atomically(manifest_path, manifest, {});
    RunLog log((fs::path(output_dir) / "samples.jsonl").string(),
               manifest_path.string(), /*truncate_samples=*/true);

    std::vector<const Assignment *> work;
    work.reserve(plan.assignments.size());
    for (const auto &a : plan.assignments) work.push_back(&a);

    return run_engine(plan, corpus, prompts, config, output_dir, counter, stop,
                      std::move(manifest), log, std::move(work));
}

Manifest load_manifest(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::precondition, "cannot open manifest: " + path);

    Manifest manifest;
    std::string line;
    size_t line_number = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.empty()) continue;
        json obj;
        try {
            obj = json::parse(line);
        } catch (const json::exception &) {
            // A torn final line is what a crash leaves behind; drop it.
            if (in.peek() == std::ifstream::traits_type::eof()) break;
            fail(ErrorKind::precondition,
                 path + " line " + std::to_string(line_number) + ": malformed manifest line");
        }
        std::string type = obj.value("type", "");
        if (type == "manifest") {
            manifest.plan_fingerprint = obj.value("plan_fingerprint", "");
            manifest.corpus_fingerprint = obj.value("corpus_fingerprint", "");
            manifest.total = obj.value("total", uint64_t{0});
            if (obj.contains("config")) manifest.config_snapshot = obj["config"];
            header_seen = true;
        } else if (type == "done" || type == "failed") {
            auto strategy = strategy_from_name(obj.value("strategy", ""));
            if (!strategy)
                fail(ErrorKind::precondition,
                     path + " line " + std::to_string(line_number) + ": unknown strategy");
            Assignment a{obj.value("doc_id", ""), *strategy,
                         obj.value("sample_index", uint64_t{0})};
            auto &state = manifest.statuses[assignment_key(a)];
            if (type == "done") {
                state = {AssignmentStatus::done, ""};
            } else {
                state = {AssignmentStatus::failed, obj.value("reason", "")};
            }
        } else {
            fail(ErrorKind::precondition,
                 path + " line " + std::to_string(line_number) + ": unknown record type");
        }
    }
    if (!header_seen) fail(ErrorKind::precondition, path + ": missing manifest header");
    return manifest;
}

Manifest resume(const std::string &manifest_path, const Corpus &corpus,
                const PromptSet &prompts, const GeneratorConfig &config,
                const std::string &output_dir, const TokenCounter &counter,
                const StopHook &stop) {
    Manifest previous = load_manifest(manifest_path);

    GenerationPlan plan = load_plan((fs::path(output_dir) / "plan.jsonl").string());
    if (previous.plan_fingerprint != plan.fingerprint())
        fail(ErrorKind::integrity, "manifest does not match the plan file (fingerprint mismatch)");
    if (previous.corpus_fingerprint != corpus.fingerprint())
        fail(ErrorKind::integrity, "manifest does not match the corpus (fingerprint mismatch)");
    check_plan_matches_corpus(plan, corpus);

    std::unordered_set<std::string> plan_keys;
    for (const auto &a : plan.assignments) plan_keys.insert(assignment_key(a));

    // Reconcile the samples file: drop a torn tail, keep the first full record
    // per key, and treat every surviving sample as done regardless of whether
    // its manifest event survived.
    fs::path samples_path = fs::path(output_dir) / "samples.jsonl";
    std::vector<SyntheticSample> kept;
    std::unordered_set<std::string> done_keys;
    if (fs::exists(samples_path)) {
        auto samples = read_samples_jsonl(samples_path.string(), /*tolerate_torn_tail=*/true);
        for (auto &s : samples) {
            std::string key = assignment_key({s.doc_id, s.strategy, s.sample_index});
            if (!plan_keys.count(key)) continue;
            if (done_keys.insert(key).second) kept.push_back(std::move(s));
        }
    }
    {
        fs::path tmp = samples_path;
        tmp += ".tmp";
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) fail(ErrorKind::internal, "cannot write " + tmp.string());
        for (const auto &s : kept) out << s.to_jsonl() << '\n';
        out.flush();
        if (!out) fail(ErrorKind::internal, "write failure on " + tmp.string());
        out.close();
        fs::rename(tmp, samples_path);
    }

    Manifest manifest;
    manifest.plan_fingerprint = previous.plan_fingerprint;
    manifest.corpus_fingerprint = previous.corpus_fingerprint;
    manifest.total = plan.assignments.size();
    manifest.config_snapshot = config_snapshot(config);

    std::vector<const Assignment *> work;
    for (const auto &a : plan.assignments) {
        std::string key = assignment_key(a);
        if (done_keys.count(key)) {
            manifest.statuses[key] = {AssignmentStatus::done, ""};
        } else {
            manifest.statuses[key] = {AssignmentStatus::pending, ""};
            work.push_back(&a);
        }
    }

    // Rewrite the manifest from the reconciled state, atomically.
    write_manifest_atomically(manifest_path, manifest, kept);

    RunLog log(samples_path.string(), manifest_path, /*truncate_samples=*/false);
    return run_engine(plan, corpus, prompts, config, output_dir, counter, stop,
                      std::move(manifest), log, std::move(work));
}

} // namespace spa
