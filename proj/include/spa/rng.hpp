#pragma once

#include <cstdint>
#include <vector>

namespace spa {

// Deterministic generator used everywhere a seed appears in this project.
//
// Algorithm (documented so it can be reimplemented independently):
//   - State: xoshiro256** (Blackman/Vigna). The four 64-bit state words are
//     produced by four successive calls of splitmix64 on the user seed.
//   - next() is the standard xoshiro256** output function.
//   - bounded(n) maps next() into [0, n) with the multiply-shift reduction
//     (uint128(next()) * n) >> 64.
//   - sample(n, k): partial Fisher-Yates over the identity permutation of
//     [0, n): for i in 0..k-1, j = i + bounded(n - i), swap(a[i], a[j]);
//     the result is the first k entries.
//   - shuffle(v): the same loop with k = n.
class Rng {
  public:
    explicit Rng(uint64_t seed);

    uint64_t next();

    // Uniform-ish value in [0, n); n must be > 0.
    uint64_t bounded(uint64_t n);

    // k distinct indices drawn without replacement from [0, n), in draw order.
    std::vector<size_t> sample(size_t n, size_t k);

    template <typename T>
    void shuffle(std::vector<T> &v) {
        if (v.empty()) return;
        for (size_t i = 0; i + 1 < v.size(); ++i) {
            size_t j = i + static_cast<size_t>(bounded(v.size() - i));
            std::swap(v[i], v[j]);
        }
    }

  private:
    uint64_t s_[4];
};

} // namespace spa
