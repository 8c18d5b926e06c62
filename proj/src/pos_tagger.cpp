#include "spa/pos_tagger.hpp"

#include "spa/errors.hpp"
#include "spa/pos_tagger_data.hpp"
#include "spa/rng.hpp"
#include "spa/text.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <unistd.h>

namespace spa {

namespace {

constexpr int kEpochs = 12;
constexpr uint64_t kShuffleSeed = 0x5eedu;

bool is_split_punct(char c) {
    switch (c) {
    case '.': case ',': case ';': case ':': case '!': case '?':
    case '(': case ')': case '[': case ']': case '{': case '}':
    case '"': case '\'': case '`': case '-':
        return true;
    default:
        return false;
    }
}

bool all_punct(std::string_view token) {
    for (char c : token)
        if (!std::ispunct(static_cast<unsigned char>(c))) return false;
    return !token.empty();
}

// Fixed tags for tokens the model never sees.
const char *punct_tag(std::string_view token) {
    if (token == "." || token == "?" || token == "!") return ".";
    if (token == ",") return ",";
    if (token == ":" || token == ";" || token == "-" || token == "--") return ":";
    if (token == "(" || token == "[" || token == "{") return "-LRB-";
    if (token == ")" || token == "]" || token == "}") return "-RRB-";
    if (token == "\"" || token == "'" || token == "`" || token == "``" || token == "''")
        return "''";
    return "SYM";
}

bool starts_with_digit(std::string_view token) {
    return !token.empty() && std::isdigit(static_cast<unsigned char>(token[0]));
}

std::string normalize_word(std::string_view word) {
    if (starts_with_digit(word)) return "!digit";
    return lowercase(word);
}

std::string suffix3(const std::string &word) {
    return word.size() <= 3 ? word : word.substr(word.size() - 3);
}

bool is_title_case(std::string_view word) {
    if (word.empty() || !std::isupper(static_cast<unsigned char>(word[0]))) return false;
    for (size_t i = 1; i < word.size(); ++i)
        if (std::isupper(static_cast<unsigned char>(word[i]))) return false;
    return true;
}

bool is_all_upper(std::string_view word) {
    if (word.size() < 2) return false;
    for (char c : word)
        if (!std::isupper(static_cast<unsigned char>(c))) return false;
    return true;
}

std::vector<std::string> make_features(size_t i, const std::string &raw,
                                       const std::vector<std::string> &ctx,
                                       const std::string &prev, const std::string &prev2) {
    // ctx is the normalized token list padded with two -START-/-END- markers,
    // so ctx[i + 2] is the current token.
    const size_t c = i + 2;
    const std::string &word = ctx[c];
    std::vector<std::string> f;
    f.reserve(16);
    f.push_back("bias");
    f.push_back("i suffix " + suffix3(word));
    f.push_back("i pref1 " + word.substr(0, 1));
    f.push_back("i word " + word);
    f.push_back("i-1 tag " + prev);
    f.push_back("i-2 tag " + prev2);
    f.push_back("i-1 tag+i-2 tag " + prev + " " + prev2);
    f.push_back("i-1 word " + ctx[c - 1]);
    f.push_back("i-1 suffix " + suffix3(ctx[c - 1]));
    f.push_back("i-2 word " + ctx[c - 2]);
    f.push_back("i+1 word " + ctx[c + 1]);
    f.push_back("i+1 suffix " + suffix3(ctx[c + 1]));
    f.push_back("i+2 word " + ctx[c + 2]);
    if (is_title_case(raw) && i > 0) f.push_back("i istitle");
    if (is_all_upper(raw)) f.push_back("i isupper");
    return f;
}

std::vector<std::string> pad_context(const std::vector<std::string> &tokens) {
    std::vector<std::string> ctx;
    ctx.reserve(tokens.size() + 4);
    ctx.push_back("-START2-");
    ctx.push_back("-START-");
    for (const auto &t : tokens) ctx.push_back(normalize_word(t));
    ctx.push_back("-END-");
    ctx.push_back("-END2-");
    return ctx;
}

struct TaggedSentence {
    std::vector<std::string> words;
    std::vector<std::string> tags;
};

std::vector<TaggedSentence> parse_tagged_corpus(std::string_view raw) {
    std::vector<TaggedSentence> sentences;
    for (const auto &line : split_lines(raw)) {
        if (trim(line).empty()) continue;
        TaggedSentence s;
        for (auto token : split_words(line)) {
            size_t sep = token.rfind('_');
            if (sep == std::string_view::npos || sep == 0 || sep + 1 == token.size())
                fail(ErrorKind::internal, "bad embedded tagged token: " + std::string(token));
            s.words.emplace_back(token.substr(0, sep));
            s.tags.emplace_back(token.substr(sep + 1));
        }
        sentences.push_back(std::move(s));
    }
    return sentences;
}

} // namespace

PerceptronTagger::PerceptronTagger() { train(); }

int PerceptronTagger::predict(const std::vector<std::string> &features) const {
    std::vector<double> scores(tags_.size(), 0.0);
    for (const auto &f : features) {
        auto it = weights_.find(f);
        if (it == weights_.end()) continue;
        for (size_t t = 0; t < scores.size(); ++t) scores[t] += it->second[t];
    }
    int best = 0;
    for (size_t t = 1; t < scores.size(); ++t)
        if (scores[t] > scores[best]) best = static_cast<int>(t);
    return best;
}

void PerceptronTagger::train() {
    auto sentences = parse_tagged_corpus(detail::kTaggedCorpus);

    // Registration order fixes tag ids and thus tie-breaking.
    auto tag_id = [this](const std::string &tag) {
        auto it = tag_ids_.find(tag);
        if (it != tag_ids_.end()) return it->second;
        int id = static_cast<int>(tags_.size());
        tags_.push_back(tag);
        tag_ids_.emplace(tag, id);
        return id;
    };
    for (const auto &s : sentences)
        for (const auto &t : s.tags) tag_id(t);
    tag_id("CD");

    const size_t n_tags = tags_.size();
    std::unordered_map<std::string, std::vector<double>> totals, stamps;
    auto row = [n_tags](auto &map, const std::string &key) -> std::vector<double> & {
        auto [it, inserted] = map.try_emplace(key);
        if (inserted) it->second.assign(n_tags, 0.0);
        return it->second;
    };

    uint64_t step = 0;
    auto update = [&](const std::string &feature, int tag, double delta) {
        auto &w = row(weights_, feature);
        auto &tot = row(totals, feature);
        auto &st = row(stamps, feature);
        tot[tag] += (static_cast<double>(step) - st[tag]) * w[tag];
        st[tag] = static_cast<double>(step);
        w[tag] += delta;
    };

    std::vector<size_t> order(sentences.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    Rng rng(kShuffleSeed);

    for (int epoch = 0; epoch < kEpochs; ++epoch) {
        rng.shuffle(order);
        for (size_t si : order) {
            const auto &sentence = sentences[si];
            auto ctx = pad_context(sentence.words);
            std::string prev = "-START-", prev2 = "-START2-";
            for (size_t i = 0; i < sentence.words.size(); ++i) {
                const std::string &word = sentence.words[i];
                const std::string &gold = sentence.tags[i];
                std::string predicted;
                if (all_punct(word)) {
                    predicted = punct_tag(word);
                } else if (starts_with_digit(word)) {
                    predicted = "CD";
                } else {
                    ++step;
                    auto features = make_features(i, word, ctx, prev, prev2);
                    int guess = predict(features);
                    int truth = tag_id(gold);
                    if (guess != truth) {
                        for (const auto &f : features) {
                            update(f, truth, 1.0);
                            update(f, guess, -1.0);
                        }
                    }
                    // Feed the guess forward so decoding-time contexts are
                    // what the model trained on.
                    predicted = tags_[static_cast<size_t>(guess)];
                }
                prev2 = std::move(prev);
                prev = std::move(predicted);
            }
        }
    }

    // Averaging: replace each weight with its mean over all update steps.
    for (auto &[feature, w] : weights_) {
        auto &tot = totals[feature];
        auto &st = stamps[feature];
        for (size_t t = 0; t < n_tags; ++t) {
            tot[t] += (static_cast<double>(step) - st[t]) * w[t];
            w[t] = tot[t] / static_cast<double>(step);
        }
    }
}

std::vector<std::string> PerceptronTagger::tag_tokens(
    const std::vector<std::string> &tokens) const {
    std::vector<std::string> out;
    out.reserve(tokens.size());
    auto ctx = pad_context(tokens);
    std::string prev = "-START-", prev2 = "-START2-";
    for (size_t i = 0; i < tokens.size(); ++i) {
        const std::string &word = tokens[i];
        std::string tag;
        if (all_punct(word)) {
            tag = punct_tag(word);
        } else if (starts_with_digit(word)) {
            tag = "CD";
        } else {
            auto features = make_features(i, word, ctx, prev, prev2);
            tag = tags_[static_cast<size_t>(predict(features))];
        }
        out.push_back(tag);
        prev2 = std::move(prev);
        prev = out.back();
    }
    return out;
}

std::vector<std::string> PerceptronTagger::tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    for (auto word : split_words(text)) {
        size_t begin = 0, end = word.size();
        std::vector<std::string> trailing;
        while (begin < end && is_split_punct(word[begin]))
            tokens.emplace_back(1, word[begin++]);
        while (end > begin && is_split_punct(word[end - 1]))
            trailing.emplace_back(1, word[--end]);
        if (end > begin) tokens.emplace_back(word.substr(begin, end - begin));
        for (auto it = trailing.rbegin(); it != trailing.rend(); ++it)
            tokens.push_back(std::move(*it));
    }
    return tokens;
}

std::string PerceptronTagger::tag_text(std::string_view text) const {
    auto tags = tag_tokens(tokenize(text));
    std::string out;
    for (size_t i = 0; i < tags.size(); ++i) {
        if (i > 0) out += ' ';
        out += tags[i];
    }
    return out;
}

std::vector<std::string> PerceptronTagger::tag_lines(
    const std::vector<std::string> &lines) const {
    std::vector<std::string> out;
    out.reserve(lines.size());
    for (const auto &line : lines) out.push_back(tag_text(line));
    return out;
}

SubprocessTagger::SubprocessTagger(std::string command) : command_(std::move(command)) {
    if (trim(command_).empty()) fail(ErrorKind::config, "empty tagger command");
}

std::vector<std::string> SubprocessTagger::tag_lines(
    const std::vector<std::string> &lines) const {
    char in_path[] = "/tmp/spa-tagger-in-XXXXXX";
    char out_path[] = "/tmp/spa-tagger-out-XXXXXX";
    int in_fd = mkstemp(in_path);
    int out_fd = mkstemp(out_path);
    if (in_fd < 0 || out_fd < 0)
        fail(ErrorKind::internal, "cannot create tagger temp files");
    close(in_fd);
    close(out_fd);

    {
        std::ofstream in(in_path, std::ios::binary);
        for (const auto &line : lines) in << line << '\n';
    }
    std::string cmd = command_ + " < " + in_path + " > " + out_path;
    int rc = std::system(cmd.c_str());

    std::vector<std::string> out;
    {
        std::ifstream result(out_path, std::ios::binary);
        std::string line;
        while (std::getline(result, line)) out.push_back(line);
    }
    std::remove(in_path);
    std::remove(out_path);

    if (rc != 0)
        fail(ErrorKind::internal, "tagger command failed with status " + std::to_string(rc));
    if (out.size() != lines.size())
        fail(ErrorKind::internal,
             "tagger protocol violation: sent " + std::to_string(lines.size()) +
                 " lines, received " + std::to_string(out.size()));
    return out;
}

const PerceptronTagger &bundled_tagger() {
    static const PerceptronTagger tagger;
    return tagger;
}

} // namespace spa
