#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace spa {

// Maps whitespace-tokenized sentences to Penn-Treebank tag sequences.
// Implementations must be deterministic: same lines -> same tags, always.
class PosTagger {
  public:
    virtual ~PosTagger() = default;

    // One whitespace-tokenized sentence per input line; returns one
    // space-joined tag sequence per line.
    virtual std::vector<std::string> tag_lines(const std::vector<std::string> &lines) const = 0;
};

// Bundled averaged-perceptron tagger.
//
// Greedy left-to-right decoding over lexical/affix/context features, trained
// once at construction on the small embedded tagged corpus (fixed epoch
// count, fixed shuffle seed, ties broken by tag-list order), so the weights
// are identical on every construction. Punctuation-only tokens and tokens
// starting with a digit bypass the model via fixed rules. Accuracy is that of
// a compact model, which is acceptable here: the POS stream feeds a
// redundancy measure, not a linguistic analysis.
class PerceptronTagger : public PosTagger {
  public:
    PerceptronTagger();

    std::vector<std::string> tag_lines(const std::vector<std::string> &lines) const override;

    std::vector<std::string> tag_tokens(const std::vector<std::string> &tokens) const;

    // Whitespace split, then leading/trailing ASCII punctuation split into
    // their own tokens ("3.5" and "don't" stay whole).
    static std::vector<std::string> tokenize(std::string_view text);

    // tokenize + tag, space-joined.
    std::string tag_text(std::string_view text) const;

  private:
    std::vector<std::string> tags_;                       // id -> tag
    std::unordered_map<std::string, int> tag_ids_;
    std::unordered_map<std::string, std::vector<double>> weights_; // feature -> per-tag

    int predict(const std::vector<std::string> &features) const;
    void train();
};

// External tagger over the documented line protocol: the command reads
// sentences (one per line) on stdin and writes space-joined tag sequences
// (one per line) on stdout.
class SubprocessTagger : public PosTagger {
  public:
    explicit SubprocessTagger(std::string command);

    std::vector<std::string> tag_lines(const std::vector<std::string> &lines) const override;

  private:
    std::string command_;
};

const PerceptronTagger &bundled_tagger();

} // namespace spa
