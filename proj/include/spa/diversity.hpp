#pragma once

#include "spa/pos_tagger.hpp"
#include "spa/samples.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace spa {

struct DiversityConfig {
    size_t ngram_n = 4;
    size_t min_words = 100;        // texts below this are filtered out
    size_t truncate_words = 100;   // survivors cut to exactly this many words
    size_t samples_per_article = 105;
    size_t articles = 5;
    uint64_t seed = 42;

    void validate() const;
};

struct ArticleScores {
    double cr = 0.0;
    double self_rep = 0.0;
    double self_bleu = 0.0;
    double cr_pos = 0.0;
};

struct DiversityReport {
    std::vector<std::pair<std::string, ArticleScores>> per_article;
    ArticleScores averages;
    DiversityConfig config;
};

// gzip compression ratio (uncompressed/compressed bytes) of the corpus
// concatenated with single newlines, at the pinned compression level.
// Depends on text order; callers pass canonical order. Lower = more diverse.
double compression_ratio(const std::vector<std::string> &texts);

// mean over texts i of ln(1 + R_i), where R_i counts the word n-gram
// instances of text i whose n-gram also occurs in at least one other text.
// Repetition inside a single text does not count. Order-invariant.
double self_repetition(const std::vector<std::string> &texts, size_t ngram_n);

// Mean over texts of sentence BLEU (orders 1-4, uniform weights, clipped
// counts maxed across all sibling texts as references, standard brevity
// penalty with the closest reference length, ties to the shorter one, no
// smoothing: a zero precision at any order zeroes that hypothesis).
// Order-invariant.
double self_bleu(const std::vector<std::string> &texts);

// compression_ratio over the tagger's space-joined tag sequences, texts
// flattened to single lines and joined with newlines.
double pos_compress_ratio(const std::vector<std::string> &texts, const PosTagger &tagger);

// Filtering/ordering step of the evaluation protocol, exposed for tests and
// tools: orders an article's samples by (sample_index, canonical strategy
// rank), drops texts under min_words, requires at least samples_per_article
// survivors, keeps the first samples_per_article and truncates each to
// exactly truncate_words words.
std::vector<std::string> protocol_texts(const std::string &article_id,
                                        std::vector<SyntheticSample> samples,
                                        const DiversityConfig &config);

// Full protocol: selects config.articles articles (seeded draw over the
// lexicographically sorted article ids when more are present), applies
// protocol_texts per article, computes all four metrics, and averages.
DiversityReport run_protocol(
    const std::map<std::string, std::vector<SyntheticSample>> &samples_by_article,
    const DiversityConfig &config, const PosTagger &tagger);

} // namespace spa
