#include "spa/rng.hpp"

#include "spa/errors.hpp"

#include <numeric>

namespace spa {

namespace {

uint64_t splitmix64(uint64_t &x) {
    x += 0x9e3779b97f4a7c15ULL;
    uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

} // namespace

Rng::Rng(uint64_t seed) {
    for (auto &word : s_) word = splitmix64(seed);
}

uint64_t Rng::next() {
    uint64_t result = rotl(s_[1] * 5, 7) * 9;
    uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

uint64_t Rng::bounded(uint64_t n) {
    if (n == 0) fail(ErrorKind::internal, "Rng::bounded called with n = 0");
    return static_cast<uint64_t>((static_cast<__uint128_t>(next()) * n) >> 64);
}

std::vector<size_t> Rng::sample(size_t n, size_t k) {
    if (k > n) fail(ErrorKind::precondition, "sample: k exceeds population size");
    std::vector<size_t> idx(n);
    std::iota(idx.begin(), idx.end(), size_t{0});
    for (size_t i = 0; i < k; ++i) {
        size_t j = i + static_cast<size_t>(bounded(n - i));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(k);
    return idx;
}

} // namespace spa
