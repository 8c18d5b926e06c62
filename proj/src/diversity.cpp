#include "spa/diversity.hpp"

#include "spa/errors.hpp"
#include "spa/gzip.hpp"
#include "spa/rng.hpp"
#include "spa/text.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>
#include <unordered_set>

namespace spa {

namespace {

constexpr size_t kBleuMaxOrder = 4;

std::string ngram_key(const std::vector<std::string_view> &words, size_t start, size_t n) {
    std::string key;
    for (size_t i = 0; i < n; ++i) {
        if (i > 0) key += '\x1f';
        key.append(words[start + i]);
    }
    return key;
}

std::unordered_map<std::string, int> ngram_counts(
    const std::vector<std::string_view> &words, size_t n) {
    std::unordered_map<std::string, int> counts;
    if (words.size() >= n)
        for (size_t i = 0; i + n <= words.size(); ++i) ++counts[ngram_key(words, i, n)];
    return counts;
}

} // namespace

void DiversityConfig::validate() const {
    if (ngram_n < 1) fail(ErrorKind::config, "ngram_n must be at least 1");
    if (truncate_words < ngram_n)
        fail(ErrorKind::config, "truncate_words must be at least ngram_n");
    if (truncate_words > min_words)
        fail(ErrorKind::config, "truncate_words above min_words would keep short texts");
    if (samples_per_article < 2)
        fail(ErrorKind::config, "samples_per_article must be at least 2");
    if (articles < 1) fail(ErrorKind::config, "articles must be at least 1");
}

double compression_ratio(const std::vector<std::string> &texts) {
    if (texts.empty())
        fail(ErrorKind::precondition, "compression_ratio over an empty text list");
    return gzip_ratio(join_with_newlines(texts));
}

double self_repetition(const std::vector<std::string> &texts, size_t ngram_n) {
    if (texts.size() < 2)
        fail(ErrorKind::precondition, "self_repetition needs at least 2 texts");
    if (ngram_n < 1) fail(ErrorKind::precondition, "ngram_n must be at least 1");

    std::vector<std::vector<std::string_view>> words(texts.size());
    for (size_t i = 0; i < texts.size(); ++i) {
        words[i] = split_words(texts[i]);
        if (words[i].size() < ngram_n)
            fail(ErrorKind::precondition,
                 "self_repetition: text " + std::to_string(i) + " has fewer than " +
                     std::to_string(ngram_n) + " words");
    }

    // Document frequency per n-gram: in how many distinct texts it occurs.
    std::unordered_map<std::string, int> doc_freq;
    for (const auto &w : words) {
        std::unordered_set<std::string> seen;
        for (size_t i = 0; i + ngram_n <= w.size(); ++i)
            seen.insert(ngram_key(w, i, ngram_n));
        for (const auto &key : seen) ++doc_freq[key];
    }

    double sum = 0.0;
    for (const auto &w : words) {
        uint64_t shared_instances = 0;
        for (size_t i = 0; i + ngram_n <= w.size(); ++i)
            if (doc_freq[ngram_key(w, i, ngram_n)] >= 2) ++shared_instances;
        sum += std::log1p(static_cast<double>(shared_instances));
    }
    return sum / static_cast<double>(texts.size());
}

double self_bleu(const std::vector<std::string> &texts) {
    if (texts.size() < 2)
        fail(ErrorKind::precondition, "self_bleu needs at least 2 texts");

    const size_t n_texts = texts.size();
    std::vector<std::vector<std::string_view>> words(n_texts);
    for (size_t i = 0; i < n_texts; ++i) words[i] = split_words(texts[i]);

    // Per order, track the largest and second-largest per-text count of each
    // n-gram, so the reference clip for hypothesis i is max over j != i
    // without an inner loop over texts.
    struct TopTwo {
        int best = 0;
        size_t best_text = 0;
        int second = 0;
    };
    std::vector<std::unordered_map<std::string, TopTwo>> clip(kBleuMaxOrder);
    std::vector<std::vector<std::unordered_map<std::string, int>>> counts(
        kBleuMaxOrder, std::vector<std::unordered_map<std::string, int>>(n_texts));

    for (size_t n = 1; n <= kBleuMaxOrder; ++n) {
        for (size_t i = 0; i < n_texts; ++i) {
            counts[n - 1][i] = ngram_counts(words[i], n);
            for (const auto &[key, count] : counts[n - 1][i]) {
                TopTwo &t = clip[n - 1][key];
                if (count > t.best) {
                    if (t.best > 0 && t.best_text != i) t.second = t.best;
                    t.best = count;
                    t.best_text = i;
                } else if (t.best_text != i && count > t.second) {
                    t.second = count;
                }
            }
        }
    }

    std::vector<size_t> lengths(n_texts);
    for (size_t i = 0; i < n_texts; ++i) lengths[i] = words[i].size();

    double sum = 0.0;
    for (size_t i = 0; i < n_texts; ++i) {
        const size_t hyp_len = lengths[i];

        double log_precision_sum = 0.0;
        bool zero = false;
        for (size_t n = 1; n <= kBleuMaxOrder && !zero; ++n) {
            const size_t total = hyp_len >= n ? hyp_len - n + 1 : 0;
            if (total == 0) {
                zero = true;
                break;
            }
            uint64_t clipped = 0;
            for (const auto &[key, count] : counts[n - 1][i]) {
                const TopTwo &t = clip[n - 1].at(key);
                int ref_max = t.best_text == i ? t.second : t.best;
                clipped += static_cast<uint64_t>(std::min(count, ref_max));
            }
            if (clipped == 0) {
                zero = true;
                break;
            }
            log_precision_sum += std::log(static_cast<double>(clipped) /
                                          static_cast<double>(total));
        }
        if (zero) continue; // contributes 0 to the mean

        // Closest reference length; ties toward the shorter reference.
        size_t closest = 0;
        size_t best_diff = std::numeric_limits<size_t>::max();
        for (size_t j = 0; j < n_texts; ++j) {
            if (j == i) continue;
            size_t r = lengths[j];
            size_t diff = r > hyp_len ? r - hyp_len : hyp_len - r;
            if (diff < best_diff || (diff == best_diff && r < closest)) {
                closest = r;
                best_diff = diff;
            }
        }
        double bp = hyp_len >= closest
                        ? 1.0
                        : std::exp(1.0 - static_cast<double>(closest) /
                                             static_cast<double>(hyp_len));
        sum += bp * std::exp(log_precision_sum / static_cast<double>(kBleuMaxOrder));
    }
    return sum / static_cast<double>(n_texts);
}

double pos_compress_ratio(const std::vector<std::string> &texts, const PosTagger &tagger) {
    if (texts.empty())
        fail(ErrorKind::precondition, "pos_compress_ratio over an empty text list");

    // One single-spaced line per text so the tag stream mirrors the text stream.
    std::vector<std::string> lines;
    lines.reserve(texts.size());
    for (const auto &text : texts)
        lines.push_back(truncate_words(text, std::numeric_limits<size_t>::max()));

    auto tag_lines = tagger.tag_lines(lines);
    for (size_t i = 0; i < tag_lines.size(); ++i)
        if (tag_lines[i].empty() && !trim(lines[i]).empty())
            fail(ErrorKind::internal,
                 "tagger produced no tags for text " + std::to_string(i));
    return gzip_ratio(join_with_newlines(tag_lines));
}

std::vector<std::string> protocol_texts(const std::string &article_id,
                                        std::vector<SyntheticSample> samples,
                                        const DiversityConfig &config) {
    std::stable_sort(samples.begin(), samples.end(),
                     [](const SyntheticSample &a, const SyntheticSample &b) {
                         if (a.sample_index != b.sample_index)
                             return a.sample_index < b.sample_index;
                         return static_cast<int>(a.strategy) < static_cast<int>(b.strategy);
                     });

    std::vector<std::string> kept;
    for (const auto &s : samples) {
        if (count_words(s.text) < config.min_words) continue;
        kept.push_back(truncate_words(s.text, config.truncate_words));
        if (kept.size() == config.samples_per_article) break;
    }
    if (kept.size() < config.samples_per_article)
        fail(ErrorKind::protocol,
             "article '" + article_id + "' has only " + std::to_string(kept.size()) +
                 " qualifying samples; protocol needs " +
                 std::to_string(config.samples_per_article) + " (short by " +
                 std::to_string(config.samples_per_article - kept.size()) + ")");
    return kept;
}

DiversityReport run_protocol(
    const std::map<std::string, std::vector<SyntheticSample>> &samples_by_article,
    const DiversityConfig &config, const PosTagger &tagger) {
    config.validate();

    std::vector<std::string> article_ids;
    for (const auto &[id, _] : samples_by_article) article_ids.push_back(id);
    if (article_ids.size() < config.articles)
        fail(ErrorKind::protocol,
             "protocol needs " + std::to_string(config.articles) + " articles, got " +
                 std::to_string(article_ids.size()));
    if (article_ids.size() > config.articles) {
        Rng rng(config.seed);
        auto picks = rng.sample(article_ids.size(), config.articles);
        std::vector<std::string> chosen;
        for (size_t idx : picks) chosen.push_back(article_ids[idx]);
        std::sort(chosen.begin(), chosen.end());
        article_ids = std::move(chosen);
    }

    DiversityReport report;
    report.config = config;
    for (const auto &id : article_ids) {
        auto texts = protocol_texts(id, samples_by_article.at(id), config);
        ArticleScores scores;
        scores.cr = compression_ratio(texts);
        scores.self_rep = self_repetition(texts, config.ngram_n);
        scores.self_bleu = self_bleu(texts);
        scores.cr_pos = pos_compress_ratio(texts, tagger);
        report.per_article.emplace_back(id, scores);
    }

    const double n = static_cast<double>(report.per_article.size());
    for (const auto &[_, s] : report.per_article) {
        report.averages.cr += s.cr;
        report.averages.self_rep += s.self_rep;
        report.averages.self_bleu += s.self_bleu;
        report.averages.cr_pos += s.cr_pos;
    }
    report.averages.cr /= n;
    report.averages.self_rep /= n;
    report.averages.self_bleu /= n;
    report.averages.cr_pos /= n;
    return report;
}

} // namespace spa
