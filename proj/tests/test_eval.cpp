#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "spa/errors.hpp"
#include "spa/eval.hpp"
#include "spa/mock_openai.hpp"

#include <cstdlib>
#include <fstream>

using namespace spa;

namespace {

// The worked SQuAD-evaluation example: correct answer first, then rambling.
const char *kSquadCasePrediction =
    "1981\n"
    "\n"
    "Question: Topic: 1973 oil crisis\n"
    "What was the result of the 1973 oil crisis?\n"
    "Answer:\n"
    "The 1973 oil crisis led to a reduction in the demand for large cars and an\n"
    "increase in the demand for smaller, more fuel-efficient vehicles";

const char *kMultihopCasePrediction =
    "The company in question is FTX, a cryptocurrency exchange founded by Sam "
    "Bankman-Fried. The context indicates that FTX's largest assets were tied to "
    "\"unlocked FTT,\" which is a token associated with the FTT cryptocurrency.";

GeneratorConfig endpoint_config(const std::string &url) {
    GeneratorConfig config;
    config.endpoint_url = url;
    config.model = "mock-model";
    config.variant = Variant::Instruct;
    config.api_key_env = ""; // local mock, no auth header
    config.max_in_flight = 4;
    config.retry = {3, 1, 5};
    config.request_timeout_ms = 5000;
    return config;
}

} // namespace

TEST_CASE("first-paragraph extraction") {
    CHECK(extract_first_paragraph(kSquadCasePrediction) == "1981");
    CHECK(extract_first_paragraph("single paragraph only") == "single paragraph only");
    CHECK(extract_first_paragraph("") == "");
    CHECK(extract_first_paragraph("a\n \t \nb") == "a"); // spaces inside the blank line
    CHECK(extract_first_paragraph("x\r\n\r\ny") == "x");

    SUBCASE("idempotent and never longer") {
        for (const std::string &input :
             {std::string(kSquadCasePrediction), std::string("p1\n\np2\n\np3"),
              std::string("  padded  \n\nrest")}) {
            std::string once = extract_first_paragraph(input);
            CHECK(extract_first_paragraph(once) == once);
            CHECK(once.size() <= input.size());
        }
    }
}

TEST_CASE("first-sentence extraction") {
    CHECK(extract_first_sentence(kMultihopCasePrediction) ==
          "The company in question is FTX, a cryptocurrency exchange founded by Sam "
          "Bankman-Fried.");
    CHECK(extract_first_sentence("No terminator here") == "No terminator here");
    CHECK(extract_first_sentence("Answer. Second sentence.") == "Answer.");
    CHECK(extract_first_sentence("Is it so? Yes.") == "Is it so?");
    CHECK(extract_first_sentence("Pi is 3.14159 exactly. More.") ==
          "Pi is 3.14159 exactly.");
    CHECK(extract_first_sentence("") == "");

    SUBCASE("idempotent") {
        std::string once = extract_first_sentence(kMultihopCasePrediction);
        CHECK(extract_first_sentence(once) == once);
    }
}

TEST_CASE("multihop prompt format") {
    CHECK(format_multihop_prompt("Q?") ==
          "Let's answer a question directly and concisely.\n\nQuestion: Q?\n\nAnswer:");
    CHECK(format_multihop_prompt("Q?") == format_multihop_prompt("Q?"));
    CHECK(format_multihop_prompt("Who won?").find("{question}") == std::string::npos);
}

TEST_CASE("squad prompt renders the topic header") {
    QAItem item;
    item.id = "1";
    item.question = "By which year did Chrysler end its full sized luxury model?";
    item.gold = "1981";
    item.topic = "1973 oil crisis";
    CHECK(format_eval_prompt(item, PromptMode::squad_qa) ==
          "Topic: 1973 oil crisis\nBy which year did Chrysler end its full sized luxury model?");
    item.topic.clear();
    CHECK(format_eval_prompt(item, PromptMode::squad_qa) == item.question);
}

TEST_CASE("few-shot prompt mode") {
    QAItem item;
    item.id = "1";
    item.question = "Which year?";
    item.gold = "1900";
    CHECK_THROWS_AS(format_eval_prompt(item, PromptMode::few_shot), Error);
    std::string rendered =
        format_eval_prompt(item, PromptMode::few_shot, "Q: A?\nAnswer: B.");
    CHECK(rendered == "Q: A?\nAnswer: B.\n\nWhich year?");
}

TEST_CASE("judge verdict parsing") {
    CHECK(parse_judge_response("CORRECT", "m").correct);
    CHECK(parse_judge_response("correct", "m").correct);
    CHECK(parse_judge_response("  Correct.", "m").correct);
    CHECK(parse_judge_response("WRONG", "m").correct == false);
    CHECK(parse_judge_response("Wrong, the answer differs", "m").parseable);
    CHECK(parse_judge_response("CORRECT\nWRONG later", "m").correct);

    SUBCASE("non-verdicts are unparseable") {
        CHECK(!parse_judge_response("maybe", "m").parseable);
        CHECK(!parse_judge_response("", "m").parseable);
        CHECK(!parse_judge_response("INCORRECT", "m").parseable); // not a whole-token match
        CHECK(!parse_judge_response("\nCORRECT", "m").parseable); // verdict not on line one
    }
}

TEST_CASE("judge over a mock endpoint") {
    QAItem item;
    item.id = "q1";
    item.question = "Who wrote it?";
    item.gold = "Ada";
    item.topic = "";

    SUBCASE("scripted CORRECT") {
        MockOptions options;
        options.mode = MockOptions::Mode::judge_script;
        options.judge_script = {"CORRECT"};
        MockOpenAI mock(options);
        JudgeVerdict verdict = judge(item, "Ada", endpoint_config(mock.url()));
        CHECK(verdict.correct);
        CHECK(verdict.parseable);
        CHECK(mock.request_count() == 1);
    }

    SUBCASE("empty candidate short-circuits to wrong without a request") {
        MockOpenAI mock;
        JudgeVerdict verdict = judge(item, "", endpoint_config(mock.url()));
        CHECK(!verdict.correct);
        CHECK(verdict.parseable);
        CHECK(mock.request_count() == 0);
    }

    SUBCASE("unparseable reply is recorded as an error") {
        MockOptions options;
        options.mode = MockOptions::Mode::judge_script;
        options.judge_script = {"maybe"};
        MockOpenAI mock(options);
        JudgeVerdict verdict = judge(item, "Ada", endpoint_config(mock.url()));
        CHECK(!verdict.parseable);
    }

    SUBCASE("the judge prompt carries question, gold and candidate") {
        MockOptions options;
        options.mode = MockOptions::Mode::judge_contains_gold;
        MockOpenAI mock(options);
        CHECK(judge(item, "It was Ada of course", endpoint_config(mock.url())).correct);
        CHECK(!judge(item, "It was Bob", endpoint_config(mock.url())).correct);
    }
}

TEST_CASE("accuracy aggregation") {
    auto verdict = [](bool correct, bool parseable = true) {
        JudgeVerdict v;
        v.correct = correct;
        v.parseable = parseable;
        return v;
    };

    SUBCASE("3 of 4") {
        AccuracySummary s =
            accuracy({verdict(true), verdict(true), verdict(true), verdict(false)});
        CHECK(s.accuracy == doctest::Approx(0.75));
        CHECK(s.correct == 3);
        CHECK(s.wrong == 1);
    }
    SUBCASE("all correct") {
        CHECK(accuracy({verdict(true), verdict(true)}).accuracy == doctest::Approx(1.0));
    }
    SUBCASE("errored verdicts are excluded but counted") {
        AccuracySummary s =
            accuracy({verdict(true), verdict(false, false), verdict(false)});
        CHECK(s.accuracy == doctest::Approx(0.5));
        CHECK(s.errored == 1);
    }
    SUBCASE("zero parseable verdicts error") {
        CHECK_THROWS_AS(accuracy({verdict(false, false)}), Error);
        CHECK_THROWS_AS(accuracy({}), Error);
    }
    SUBCASE("order-invariant") {
        std::vector<JudgeVerdict> verdicts = {verdict(true), verdict(false), verdict(true)};
        AccuracySummary a = accuracy(verdicts);
        std::reverse(verdicts.begin(), verdicts.end());
        AccuracySummary b = accuracy(verdicts);
        CHECK(a.accuracy == b.accuracy);
    }
}

TEST_CASE("query_model echoes through a mock endpoint") {
    MockOptions options;
    options.mode = MockOptions::Mode::echo_prompt;
    MockOpenAI mock(options);
    QAItem item;
    item.id = "x";
    item.question = "What is north of the river?";
    item.gold = "the mill";
    std::string raw =
        query_model(item, PromptMode::zero_shot_multihop, endpoint_config(mock.url()));
    CHECK(raw == format_multihop_prompt(item.question));
}

TEST_CASE("end-to-end eval over mock model and judge is deterministic") {
    MockOptions model_options;
    model_options.mode = MockOptions::Mode::echo_prompt;
    MockOpenAI model(model_options);

    MockOptions judge_options;
    judge_options.mode = MockOptions::Mode::judge_script;
    judge_options.judge_script = {"CORRECT", "WRONG"};
    MockOpenAI judge_mock(judge_options);

    std::vector<QAItem> items;
    for (int i = 0; i < 6; ++i) {
        QAItem item;
        item.id = "item" + std::to_string(i);
        item.question = "Question " + std::to_string(i) + "?";
        item.gold = "gold";
        items.push_back(item);
    }

    GeneratorConfig model_config = endpoint_config(model.url());
    model_config.max_in_flight = 1; // serialize so the judge script order is fixed
    auto records = run_eval(items, PromptMode::zero_shot_multihop, model_config,
                            endpoint_config(judge_mock.url()));
    REQUIRE(records.size() == 6);
    std::vector<JudgeVerdict> verdicts;
    for (const auto &r : records) verdicts.push_back(r.verdict);
    AccuracySummary summary = accuracy(verdicts);
    CHECK(summary.correct + summary.wrong == 6);
    CHECK(summary.accuracy == doctest::Approx(0.5));
}

TEST_CASE("a 974-item run reports 974 evaluated items") {
    MockOptions model_options;
    model_options.mode = MockOptions::Mode::fixed;
    model_options.fixed_text = "Answer text.";
    MockOpenAI model(model_options);

    MockOptions judge_options;
    judge_options.mode = MockOptions::Mode::judge_script;
    judge_options.judge_script = {"CORRECT"};
    MockOpenAI judge_mock(judge_options);

    std::vector<QAItem> items;
    for (int i = 0; i < 974; ++i) {
        QAItem item;
        item.id = "q" + std::to_string(i);
        item.question = "Question " + std::to_string(i) + "?";
        item.gold = "gold";
        item.topic = "topic";
        items.push_back(item);
    }
    GeneratorConfig model_config = endpoint_config(model.url());
    model_config.max_in_flight = 8;
    auto records = run_eval(items, PromptMode::squad_qa, model_config,
                            endpoint_config(judge_mock.url()));
    REQUIRE(records.size() == 974);
    std::vector<JudgeVerdict> verdicts;
    for (const auto &r : records) verdicts.push_back(r.verdict);
    AccuracySummary summary = accuracy(verdicts);
    CHECK(summary.correct + summary.wrong + summary.errored == 974);
    CHECK(summary.accuracy == doctest::Approx(1.0));
    // squad mode extracts the first paragraph of the fixed completion.
    CHECK(records[0].extracted == "Answer text.");
}

TEST_CASE("qa items loader") {
    char tmpl[] = "/tmp/spa-eval-XXXXXX";
    REQUIRE(mkdtemp(tmpl) != nullptr);
    std::string path = std::string(tmpl) + "/items.jsonl";
    {
        std::ofstream f(path);
        f << R"({"id":"1","question":"Q1?","gold":"A1","topic":"T"})" << "\n";
        f << R"({"question":"Q2?","gold":"A2"})" << "\n";
    }
    auto items = load_qa_jsonl(path);
    REQUIRE(items.size() == 2);
    CHECK(items[0].topic == "T");
    CHECK(items[1].id == path + "#2");

    std::string bad = std::string(tmpl) + "/bad.jsonl";
    {
        std::ofstream f(bad);
        f << R"({"id":"1","question":"","gold":"A"})" << "\n";
    }
    CHECK_THROWS_AS(load_qa_jsonl(bad), Error);
}
