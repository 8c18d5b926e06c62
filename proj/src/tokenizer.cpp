#include "spa/tokenizer.hpp"

#include "spa/errors.hpp"
#include "spa/text.hpp"

#include <fstream>
#include <limits>

namespace spa {

namespace {
std::string pair_key(std::string_view a, std::string_view b) {
    std::string key;
    key.reserve(a.size() + b.size() + 1);
    key.append(a);
    key += '\x1f';
    key.append(b);
    return key;
}
} // namespace

TokenCounter TokenCounter::approximate() {
    TokenCounter c;
    c.mode_ = Mode::Approximate;
    return c;
}

TokenCounter TokenCounter::from_merges_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::config, "cannot open merges file: " + path);

    TokenCounter c;
    c.mode_ = Mode::Vocabulary;
    std::string line;
    size_t rank = 0;
    bool first = true;
    while (std::getline(in, line)) {
        if (first && starts_with(line, "#")) {
            first = false;
            continue;
        }
        first = false;
        if (trim(line).empty()) continue;
        auto parts = split_words(line);
        if (parts.size() != 2)
            fail(ErrorKind::config, path + ": merges line must hold exactly two symbols: '" + line + "'");
        c.merge_rank_.emplace(pair_key(parts[0], parts[1]), rank++);
    }
    if (c.merge_rank_.empty())
        fail(ErrorKind::config, path + ": merges file holds no merge rules");
    return c;
}

uint64_t TokenCounter::count_word(std::string_view word) const {
    std::vector<std::string> symbols;
    symbols.reserve(word.size());
    for (char ch : word) symbols.emplace_back(1, ch);

    while (symbols.size() > 1) {
        size_t best_rank = std::numeric_limits<size_t>::max();
        size_t best_pos = 0;
        for (size_t i = 0; i + 1 < symbols.size(); ++i) {
            auto it = merge_rank_.find(pair_key(symbols[i], symbols[i + 1]));
            if (it != merge_rank_.end() && it->second < best_rank) {
                best_rank = it->second;
                best_pos = i;
            }
        }
        if (best_rank == std::numeric_limits<size_t>::max()) break;
        symbols[best_pos] += symbols[best_pos + 1];
        symbols.erase(symbols.begin() + static_cast<ptrdiff_t>(best_pos) + 1);
    }
    return symbols.size();
}

uint64_t TokenCounter::count(std::string_view text) const {
    if (mode_ == Mode::Approximate) return (text.size() + 3) / 4;
    uint64_t total = 0;
    for (auto word : split_words(text)) total += count_word(word);
    return total;
}

} // namespace spa
