#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace spa {

// 64-bit FNV-1a. Used for corpus/plan fingerprints and sample ids; these are
// stable identifiers, not cryptographic digests.
class Fnv1a64 {
  public:
    Fnv1a64 &update(std::string_view bytes) {
        for (unsigned char c : bytes) {
            state_ ^= c;
            state_ *= 0x100000001b3ULL;
        }
        return *this;
    }

    // Field separator so that ("ab","c") and ("a","bc") hash differently.
    Fnv1a64 &field(std::string_view bytes) {
        update(bytes);
        state_ ^= 0xff;
        state_ *= 0x100000001b3ULL;
        return *this;
    }

    uint64_t value() const { return state_; }

  private:
    uint64_t state_ = 0xcbf29ce484222325ULL;
};

std::string to_hex(uint64_t v);

inline std::string fnv1a64_hex(std::string_view bytes) {
    return to_hex(Fnv1a64().update(bytes).value());
}

} // namespace spa
