#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace spa {

// Token accounting for budgets and export stats.
//
// approximate mode: count = ceil(bytes / 4). Crude but tokenizer-free; see
// the README warning before comparing totals across tokenizers.
//
// vocabulary mode: loads a byte-pair merges file (one "left right" pair per
// line, rank = line order, optional leading "#..." header line). Each
// whitespace word is split into single-byte symbols and adjacent pairs are
// merged lowest-rank-first until no listed pair remains; the count is the
// number of surviving symbols summed over words. Merge entries whose symbols
// never co-occur simply never fire.
class TokenCounter {
  public:
    enum class Mode { Approximate, Vocabulary };

    static TokenCounter approximate();
    static TokenCounter from_merges_file(const std::string &path);

    Mode mode() const { return mode_; }
    uint64_t count(std::string_view text) const;

  private:
    TokenCounter() = default;

    Mode mode_ = Mode::Approximate;
    std::unordered_map<std::string, size_t> merge_rank_; // "left\x1fright" -> rank

    uint64_t count_word(std::string_view word) const;
};

} // namespace spa
