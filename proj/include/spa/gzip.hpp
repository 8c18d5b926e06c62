#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace spa {

// Compression level is pinned to 6 so that ratios are reproducible across
// machines and match golden values.
inline constexpr int kGzipLevel = 6;

// gzip-wrapped DEFLATE stream (zlib, windowBits 15+16, memLevel 8, level 6).
std::string gzip_compress(std::string_view bytes, int level = kGzipLevel);

// uncompressed bytes / compressed bytes of the gzip stream above.
double gzip_ratio(std::string_view bytes, int level = kGzipLevel);

// Joins with a single '\n' between elements (no trailing newline).
std::string join_with_newlines(const std::vector<std::string> &texts);

} // namespace spa
