#pragma once

#include "spa/openai_client.hpp"

#include <string>
#include <vector>

namespace spa {

struct QAItem {
    std::string id;
    std::string question;
    std::string gold;
    std::string topic; // optional
};

std::vector<QAItem> load_qa_jsonl(const std::string &path);

// Prefix of the prediction up to (excluding) the first blank line - two line
// breaks with only spaces/tabs between them - trimmed. No blank line -> the
// whole trimmed prediction.
std::string extract_first_paragraph(std::string_view prediction);

// Prefix through the first '.', '?' or '!' that is followed by whitespace or
// end of text ("3.5" is not a boundary). None -> the whole trimmed prediction.
std::string extract_first_sentence(std::string_view prediction);

// "Let's answer a question directly and concisely.\n\nQuestion: <q>\n\nAnswer:"
std::string format_multihop_prompt(const std::string &question);

enum class PromptMode {
    zero_shot_multihop, // multihop template above, first-sentence extraction
    squad_qa,           // "Topic: <topic>\n<question>", first-paragraph extraction
    few_shot,           // user-supplied exemplars + "\n\n" + question
};

std::string format_eval_prompt(const QAItem &item, PromptMode mode,
                               const std::string &exemplars = "");

// Raw completion for one item; retry policy identical to the generation
// engine's.
std::string query_model(const QAItem &item, PromptMode mode,
                        const GeneratorConfig &model_config,
                        const std::string &exemplars = "");

struct JudgeVerdict {
    bool correct = false;
    bool parseable = true; // false -> excluded from accuracy, counted as errored
    std::string raw_response;
    std::string judge_model;
};

// Default judge prompt; {question}, {gold} and {candidate} are substituted.
// Swappable per run because no single judge wording is canonical.
extern const char *const kDefaultJudgePrompt;

// Parses CORRECT/WRONG (case-insensitive, whole token) from the first line of
// a judge response.
JudgeVerdict parse_judge_response(const std::string &response, const std::string &model);

// Sends question/gold/candidate to the judge endpoint. An empty candidate is
// auto-wrong without a network call. Transport failure after retries or an
// unparseable reply yields parseable = false.
JudgeVerdict judge(const QAItem &item, const std::string &extracted,
                   const GeneratorConfig &judge_config,
                   const std::string &judge_prompt = kDefaultJudgePrompt);

struct AccuracySummary {
    size_t correct = 0;
    size_t wrong = 0;
    size_t errored = 0;
    double accuracy = 0.0; // correct / (correct + wrong)
};

AccuracySummary accuracy(const std::vector<JudgeVerdict> &verdicts);

struct EvalRecord {
    QAItem item;
    std::string raw_prediction;
    std::string extracted;
    JudgeVerdict verdict;
};

// Full pipeline over an item list with bounded concurrency. A model transport
// failure becomes an errored verdict and evaluation continues.
std::vector<EvalRecord> run_eval(const std::vector<QAItem> &items, PromptMode mode,
                                 const GeneratorConfig &model_config,
                                 const GeneratorConfig &judge_config,
                                 const std::string &exemplars = "",
                                 const std::string &judge_prompt = kDefaultJudgePrompt);

} // namespace spa
