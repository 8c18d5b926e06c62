#include "spa/eval.hpp"

#include "spa/errors.hpp"
#include "spa/hash.hpp"
#include "spa/text.hpp"

#include <json.hpp>

#include <atomic>
#include <cctype>
#include <fstream>
#include <thread>

namespace spa {

using nlohmann::json;

std::vector<QAItem> load_qa_jsonl(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::precondition, "cannot open QA file: " + path);

    std::vector<QAItem> items;
    std::string line;
    size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (trim(line).empty()) continue;
        json obj;
        try {
            obj = json::parse(line);
        } catch (const json::parse_error &e) {
            fail(ErrorKind::precondition,
                 path + " line " + std::to_string(line_number) + ": " + e.what());
        }
        QAItem item;
        item.id = obj.contains("id") && obj["id"].is_string()
                      ? obj["id"].get<std::string>()
                      : path + "#" + std::to_string(line_number);
        item.question = obj.value("question", "");
        item.gold = obj.value("gold", "");
        item.topic = obj.value("topic", "");
        if (item.question.empty() || item.gold.empty())
            fail(ErrorKind::precondition,
                 path + " line " + std::to_string(line_number) +
                     ": question and gold must be non-empty");
        items.push_back(std::move(item));
    }
    if (items.empty()) fail(ErrorKind::precondition, path + ": no QA items");
    return items;
}

std::string extract_first_paragraph(std::string_view prediction) {
    size_t i = 0;
    while (i < prediction.size()) {
        char c = prediction[i];
        if (c == '\n' || (c == '\r' && i + 1 < prediction.size() && prediction[i + 1] == '\n')) {
            size_t j = i + (c == '\r' ? 2 : 1);
            while (j < prediction.size() &&
                   (prediction[j] == ' ' || prediction[j] == '\t' || prediction[j] == '\r'))
                ++j;
            if (j < prediction.size() && prediction[j] == '\n')
                return trim(prediction.substr(0, i));
        }
        ++i;
    }
    return trim(prediction);
}

std::string extract_first_sentence(std::string_view prediction) {
    std::string trimmed = trim(prediction);
    for (size_t i = 0; i < trimmed.size(); ++i) {
        char c = trimmed[i];
        if (c != '.' && c != '?' && c != '!') continue;
        if (i + 1 == trimmed.size()) return trimmed;
        if (std::isspace(static_cast<unsigned char>(trimmed[i + 1])))
            return trim(std::string_view(trimmed).substr(0, i + 1));
    }
    return trimmed;
}

std::string format_multihop_prompt(const std::string &question) {
    if (question.empty()) fail(ErrorKind::precondition, "empty question");
    return "Let's answer a question directly and concisely.\n\nQuestion: " + question +
           "\n\nAnswer:";
}

std::string format_eval_prompt(const QAItem &item, PromptMode mode,
                               const std::string &exemplars) {
    switch (mode) {
    case PromptMode::zero_shot_multihop:
        return format_multihop_prompt(item.question);
    case PromptMode::squad_qa:
        if (item.topic.empty()) return item.question;
        return "Topic: " + item.topic + "\n" + item.question;
    case PromptMode::few_shot:
        if (exemplars.empty())
            fail(ErrorKind::config, "few_shot mode needs an exemplars file");
        return exemplars + "\n\n" + item.question;
    }
    fail(ErrorKind::internal, "unreachable prompt mode");
}

std::string query_model(const QAItem &item, PromptMode mode,
                        const GeneratorConfig &model_config, const std::string &exemplars) {
    OpenAIClient client(model_config);
    RenderedPrompt prompt;
    prompt.has_system = false;
    prompt.user = format_eval_prompt(item, mode, exemplars);
    uint64_t seed = Fnv1a64().field(item.id).field("query").value();
    return client.complete(prompt, seed).text;
}

const char *const kDefaultJudgePrompt =
    "You are grading an answer to a question.\n"
    "Reply with exactly one word on the first line: CORRECT if the candidate answer "
    "matches the gold answer in meaning, or WRONG otherwise.\n"
    "\n"
    "Question: {question}\n"
    "Gold answer: {gold}\n"
    "Candidate answer: {candidate}\n"
    "\n"
    "Verdict:";

JudgeVerdict parse_judge_response(const std::string &response, const std::string &model) {
    JudgeVerdict verdict;
    verdict.raw_response = response;
    verdict.judge_model = model;

    std::string first_line = response.substr(0, response.find('\n'));
    std::string token;
    auto flush = [&](bool &decided) {
        if (token.empty()) return;
        std::string upper;
        for (char c : token) upper += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        if (upper == "CORRECT") {
            verdict.correct = true;
            decided = true;
        } else if (upper == "WRONG") {
            verdict.correct = false;
            decided = true;
        }
        token.clear();
    };
    bool decided = false;
    for (char c : first_line) {
        if (std::isalpha(static_cast<unsigned char>(c))) {
            token += c;
        } else {
            flush(decided);
            if (decided) break;
        }
    }
    if (!decided) flush(decided);
    verdict.parseable = decided;
    return verdict;
}

JudgeVerdict judge(const QAItem &item, const std::string &extracted,
                   const GeneratorConfig &judge_config, const std::string &judge_prompt) {
    if (trim(extracted).empty()) {
        JudgeVerdict verdict;
        verdict.correct = false;
        verdict.parseable = true;
        verdict.raw_response = "<empty candidate: auto-wrong, judge not called>";
        return verdict;
    }

    std::string text = judge_prompt;
    text = replace_all(text, "{question}", item.question);
    text = replace_all(text, "{gold}", item.gold);
    text = replace_all(text, "{candidate}", extracted);

    OpenAIClient client(judge_config);
    RenderedPrompt prompt;
    prompt.has_system = false;
    prompt.user = text;
    uint64_t seed = Fnv1a64().field(item.id).field("judge").value();
    try {
        CompletionResult result = client.complete(prompt, seed);
        return parse_judge_response(result.text, result.model);
    } catch (const Error &e) {
        if (e.kind() == ErrorKind::auth) throw;
        JudgeVerdict verdict;
        verdict.parseable = false;
        verdict.raw_response = std::string("<judge request failed: ") + e.what() + ">";
        return verdict;
    }
}

AccuracySummary accuracy(const std::vector<JudgeVerdict> &verdicts) {
    AccuracySummary summary;
    for (const auto &v : verdicts) {
        if (!v.parseable) {
            ++summary.errored;
        } else if (v.correct) {
            ++summary.correct;
        } else {
            ++summary.wrong;
        }
    }
    size_t parseable = summary.correct + summary.wrong;
    if (parseable == 0)
        fail(ErrorKind::precondition, "no parseable judge verdicts to aggregate");
    summary.accuracy = static_cast<double>(summary.correct) / static_cast<double>(parseable);
    return summary;
}

std::vector<EvalRecord> run_eval(const std::vector<QAItem> &items, PromptMode mode,
                                 const GeneratorConfig &model_config,
                                 const GeneratorConfig &judge_config,
                                 const std::string &exemplars,
                                 const std::string &judge_prompt) {
    if (items.empty()) fail(ErrorKind::precondition, "no items to evaluate");

    std::vector<EvalRecord> records(items.size());
    std::atomic<size_t> next{0};
    std::atomic<bool> abort_run{false};
    std::exception_ptr abort_error;
    std::mutex abort_mutex;

    auto extract = [mode](const std::string &raw) {
        return mode == PromptMode::squad_qa ? extract_first_paragraph(raw)
                                            : extract_first_sentence(raw);
    };

    auto worker = [&]() {
        while (!abort_run.load()) {
            size_t i = next.fetch_add(1);
            if (i >= items.size()) return;
            EvalRecord &record = records[i];
            record.item = items[i];
            try {
                record.raw_prediction = query_model(items[i], mode, model_config, exemplars);
                record.extracted = extract(record.raw_prediction);
                record.verdict = judge(items[i], record.extracted, judge_config, judge_prompt);
            } catch (const Error &e) {
                if (e.kind() == ErrorKind::auth || e.kind() == ErrorKind::config) {
                    std::lock_guard lock(abort_mutex);
                    if (!abort_run.exchange(true)) abort_error = std::current_exception();
                    return;
                }
                record.verdict.parseable = false;
                record.verdict.raw_response = std::string("<item failed: ") + e.what() + ">";
            }
        }
    };

    size_t n_workers = std::min(static_cast<size_t>(model_config.max_in_flight), items.size());
    std::vector<std::thread> threads;
    for (size_t i = 0; i < n_workers; ++i) threads.emplace_back(worker);
    for (auto &t : threads) t.join();
    if (abort_error) std::rethrow_exception(abort_error);
    return records;
}

} // namespace spa
