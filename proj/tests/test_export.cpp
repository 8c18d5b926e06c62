#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "spa/errors.hpp"
#include "spa/exporter.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

using namespace spa;
using nlohmann::json;

namespace {

std::vector<SyntheticSample> make_samples(size_t n) {
    std::vector<SyntheticSample> samples;
    for (size_t i = 0; i < n; ++i) {
        SyntheticSample s;
        s.doc_id = "doc" + std::to_string(i % 3);
        s.strategy = kCanonicalStrategies[i % 7];
        s.sample_index = i;
        s.sample_id = sample_id_for(s.doc_id, s.strategy, s.sample_index);
        s.text = "sample text number " + std::to_string(i);
        samples.push_back(s);
    }
    return samples;
}

std::string temp_path(const std::string &name) {
    char tmpl[] = "/tmp/spa-export-XXXXXX";
    REQUIRE(mkdtemp(tmpl) != nullptr);
    return std::string(tmpl) + "/" + name;
}

std::string slurp(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("export writes every sample once and round-trips ids") {
    auto samples = make_samples(14);
    std::string out = temp_path("corpus.jsonl");
    ExportStats stats = export_jsonl(samples, 9, out, TokenCounter::approximate());
    CHECK(stats.lines == 14);

    std::ifstream in(out);
    std::set<std::string> ids;
    std::string line;
    size_t lines = 0;
    while (std::getline(in, line)) {
        ++lines;
        json obj = json::parse(line);
        auto strategy = strategy_from_name(obj.at("strategy").get<std::string>());
        REQUIRE(strategy.has_value());
        ids.insert(sample_id_for(obj.at("doc_id").get<std::string>(), *strategy,
                                 obj.at("sample_index").get<uint64_t>()));
    }
    CHECK(lines == 14);
    CHECK(ids.size() == 14);
    for (const auto &s : samples) CHECK(ids.count(s.sample_id) == 1);
}

TEST_CASE("same seed gives byte-identical files, different seeds permute") {
    auto samples = make_samples(20);
    std::string out1 = temp_path("a.jsonl");
    std::string out2 = temp_path("b.jsonl");
    std::string out3 = temp_path("c.jsonl");
    export_jsonl(samples, 42, out1, TokenCounter::approximate());
    export_jsonl(samples, 42, out2, TokenCounter::approximate());
    export_jsonl(samples, 43, out3, TokenCounter::approximate());

    std::string bytes1 = slurp(out1);
    CHECK(bytes1 == slurp(out2));

    std::string bytes3 = slurp(out3);
    CHECK(bytes1 != bytes3);

    auto lines_of = [](const std::string &bytes) {
        std::multiset<std::string> lines;
        std::istringstream ss(bytes);
        std::string line;
        while (std::getline(ss, line)) lines.insert(line);
        return lines;
    };
    CHECK(lines_of(bytes1) == lines_of(bytes3)); // same multiset, different order
}

TEST_CASE("export preserves text bytes exactly") {
    SyntheticSample s;
    s.doc_id = "d";
    s.strategy = Strategy::MindMap;
    s.sample_index = 0;
    s.sample_id = sample_id_for("d", Strategy::MindMap, 0);
    s.text = "line1\nline2\ttab \"quoted\" \\backslash unicode \xc3\xa9";
    std::string out = temp_path("bytes.jsonl");
    export_jsonl({s}, 1, out, TokenCounter::approximate());
    json obj = json::parse(slurp(out).substr(0, slurp(out).find('\n')));
    CHECK(obj.at("text").get<std::string>() == s.text);
}

TEST_CASE("export of nothing is an error") {
    std::string out = temp_path("empty.jsonl");
    CHECK_THROWS_AS(export_jsonl({}, 1, out, TokenCounter::approximate()), Error);
}

TEST_CASE("dedup keeps the earliest occurrence") {
    auto samples = make_samples(6);
    samples[2].text = samples[0].text;
    samples[5].text = samples[0].text;
    DedupResult result = dedup_exact(samples);
    CHECK(result.removed == 2);
    REQUIRE(result.samples.size() == 4);
    CHECK(result.samples[0].sample_id == samples[0].sample_id);

    SUBCASE("all-unique stream is unchanged") {
        DedupResult again = dedup_exact(result.samples);
        CHECK(again.removed == 0);
        CHECK(again.samples.size() == result.samples.size());
    }
}

TEST_CASE("approximate token counting is ceil(bytes / 4)") {
    TokenCounter counter = TokenCounter::approximate();
    CHECK(counter.count("") == 0);
    CHECK(counter.count("abcd") == 1);
    CHECK(counter.count("abcde") == 2);
    CHECK(counter.count(std::string(400, 'x')) == 100);
}

TEST_CASE("vocabulary token counting applies merges by rank") {
    std::string merges = temp_path("merges.txt");
    {
        std::ofstream f(merges);
        f << "#version: test\n"
          << "a b\n"   // rank 0
          << "ab c\n"  // rank 1
          << "d e\n";
    }
    TokenCounter counter = TokenCounter::from_merges_file(merges);
    CHECK(counter.count("abc") == 1);   // a b -> ab, then ab c -> abc
    CHECK(counter.count("abcde") == 2); // abc + de
    CHECK(counter.count("xyz") == 3);   // no merges fire
    CHECK(counter.count("abc abc") == 2);
}

TEST_CASE("token stats partition the total per strategy") {
    auto samples = make_samples(21);
    TokenCounter counter = TokenCounter::approximate();
    TokenStats stats = token_stats(samples, counter);
    uint64_t sum = 0;
    for (const auto &[_, n] : stats.per_strategy) sum += n;
    CHECK(sum == stats.total);
    CHECK(stats.per_strategy.size() == 7);

    SUBCASE("empty stream totals zero") {
        TokenStats empty = token_stats({}, counter);
        CHECK(empty.total == 0);
        CHECK(empty.per_strategy.empty());
    }

    SUBCASE("additive over concatenation") {
        auto head = std::vector<SyntheticSample>(samples.begin(), samples.begin() + 10);
        auto tail = std::vector<SyntheticSample>(samples.begin() + 10, samples.end());
        CHECK(token_stats(head, counter).total + token_stats(tail, counter).total ==
              stats.total);
    }
}
