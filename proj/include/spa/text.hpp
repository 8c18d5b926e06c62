#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace spa {

// A "word" is a maximal run of non-whitespace bytes throughout this project.
std::vector<std::string_view> split_words(std::string_view text);

size_t count_words(std::string_view text);

// First k words rejoined with single spaces. Asks for more words than the
// text has -> the whole text, space-normalized.
std::string truncate_words(std::string_view text, size_t k);

std::string trim(std::string_view text);

// CR and CRLF collapsed to LF.
std::string normalize_newlines(std::string_view text);

bool starts_with(std::string_view text, std::string_view prefix);
bool ends_with(std::string_view text, std::string_view suffix);

std::string lowercase(std::string_view text);

std::vector<std::string> split_lines(std::string_view text);

// Replaces every occurrence of `token` in `text`. Plain textual substitution.
std::string replace_all(std::string_view text, std::string_view token,
                        std::string_view value);

} // namespace spa
