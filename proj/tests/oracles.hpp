#pragma once

// Independent reference implementations used only by tests. These are written
// from the documented definitions, separately from the library code paths
// they check: straightforward nested loops, no shared helpers.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace oracles {

inline std::vector<std::string> words_of(const std::string &text) {
    std::vector<std::string> out;
    std::istringstream ss(text);
    std::string w;
    while (ss >> w) out.push_back(w);
    return out;
}

inline std::vector<std::vector<std::string>> ngrams_of(const std::vector<std::string> &words,
                                                       size_t n) {
    std::vector<std::vector<std::string>> out;
    if (words.size() < n) return out;
    for (size_t i = 0; i + n <= words.size(); ++i)
        out.emplace_back(words.begin() + static_cast<ptrdiff_t>(i),
                         words.begin() + static_cast<ptrdiff_t>(i + n));
    return out;
}

// mean over i of ln(1 + #instances of text i's n-grams found in some j != i)
inline double self_repetition(const std::vector<std::string> &texts, size_t n) {
    std::vector<std::vector<std::string>> tokenized;
    for (const auto &t : texts) tokenized.push_back(words_of(t));

    double total = 0.0;
    for (size_t i = 0; i < texts.size(); ++i) {
        size_t shared = 0;
        for (const auto &gram : ngrams_of(tokenized[i], n)) {
            bool found = false;
            for (size_t j = 0; j < texts.size() && !found; ++j) {
                if (j == i) continue;
                auto other = ngrams_of(tokenized[j], n);
                found = std::find(other.begin(), other.end(), gram) != other.end();
            }
            if (found) ++shared;
        }
        total += std::log(1.0 + static_cast<double>(shared));
    }
    return total / static_cast<double>(texts.size());
}

// Sentence BLEU of each text against all siblings, orders 1-4, uniform
// weights, clipped counts, closest-length brevity penalty (ties shorter),
// no smoothing.
inline double self_bleu(const std::vector<std::string> &texts) {
    std::vector<std::vector<std::string>> tokenized;
    for (const auto &t : texts) tokenized.push_back(words_of(t));

    double total = 0.0;
    for (size_t i = 0; i < texts.size(); ++i) {
        const auto &hyp = tokenized[i];
        double log_sum = 0.0;
        bool zero = false;
        for (size_t n = 1; n <= 4 && !zero; ++n) {
            auto hyp_grams = ngrams_of(hyp, n);
            if (hyp_grams.empty()) {
                zero = true;
                break;
            }
            std::map<std::vector<std::string>, int> hyp_counts;
            for (const auto &g : hyp_grams) ++hyp_counts[g];

            double clipped = 0.0;
            for (const auto &[gram, count] : hyp_counts) {
                int best = 0;
                for (size_t j = 0; j < texts.size(); ++j) {
                    if (j == i) continue;
                    int c = 0;
                    for (const auto &g : ngrams_of(tokenized[j], n))
                        if (g == gram) ++c;
                    best = std::max(best, c);
                }
                clipped += std::min(count, best);
            }
            if (clipped == 0.0) {
                zero = true;
                break;
            }
            log_sum += std::log(clipped / static_cast<double>(hyp_grams.size()));
        }
        if (zero) continue;

        long long c = static_cast<long long>(hyp.size());
        long long r = -1;
        for (size_t j = 0; j < texts.size(); ++j) {
            if (j == i) continue;
            long long len = static_cast<long long>(tokenized[j].size());
            if (r < 0 || std::llabs(len - c) < std::llabs(r - c) ||
                (std::llabs(len - c) == std::llabs(r - c) && len < r))
                r = len;
        }
        double bp = c >= r ? 1.0 : std::exp(1.0 - static_cast<double>(r) / static_cast<double>(c));
        total += bp * std::exp(log_sum / 4.0);
    }
    return total / static_cast<double>(texts.size());
}

// Reference gzip byte count via the system python3's zlib binding at the same
// settings (level 6, gzip container). Returns -1 if python3 is unavailable.
inline long long gzip_size_via_python(const std::string &bytes) {
    char path[] = "/tmp/spa-gzip-oracle-XXXXXX";
    int fd = mkstemp(path);
    if (fd < 0) return -1;
    {
        std::ofstream out(path, std::ios::binary);
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    }
    std::string out_path = std::string(path) + ".len";
    std::string cmd =
        "python3 -c \"import sys,zlib; d=open(sys.argv[1],'rb').read(); "
        "c=zlib.compressobj(6, zlib.DEFLATED, 31); b=c.compress(d)+c.flush(); "
        "open(sys.argv[1]+'.len','w').write(str(len(b)))\" " +
        std::string(path);
    int rc = std::system(cmd.c_str());
    long long size = -1;
    if (rc == 0) {
        std::ifstream in(out_path);
        in >> size;
    }
    std::remove(path);
    std::remove(out_path.c_str());
    return size;
}

// Reference reimplementation of the documented seeded generator:
// splitmix64 seeding, xoshiro256**, multiply-shift bounding, partial
// Fisher-Yates. Written out independently of the library.
struct ReferenceRng {
    uint64_t s[4];

    explicit ReferenceRng(uint64_t seed) {
        uint64_t x = seed;
        for (int i = 0; i < 4; ++i) {
            x += 0x9e3779b97f4a7c15ULL;
            uint64_t z = x;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            s[i] = z ^ (z >> 31);
        }
    }

    static uint64_t rot(uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

    uint64_t next() {
        uint64_t out = rot(s[1] * 5, 7) * 9;
        uint64_t t = s[1] << 17;
        s[2] ^= s[0];
        s[3] ^= s[1];
        s[1] ^= s[2];
        s[0] ^= s[3];
        s[2] ^= t;
        s[3] = rot(s[3], 45);
        return out;
    }

    uint64_t below(uint64_t n) {
        return static_cast<uint64_t>((static_cast<__uint128_t>(next()) * n) >> 64);
    }

    std::vector<size_t> pick(size_t population, size_t k) {
        std::vector<size_t> a(population);
        for (size_t i = 0; i < population; ++i) a[i] = i;
        for (size_t i = 0; i < k; ++i) {
            size_t j = i + static_cast<size_t>(below(population - i));
            std::swap(a[i], a[j]);
        }
        a.resize(k);
        return a;
    }
};

} // namespace oracles
