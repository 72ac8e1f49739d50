#pragma once
// Counter-based splittable RNG. Each (key, counter) pair maps to an
// independent 64-bit word through a SplitMix64-style finalizer, so streams
// derived from distinct keys never share state and a stream can be cloned
// just by picking a fresh key.

#include <cstdint>
#include <limits>

namespace cosco {

inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Combine words into a single stream key (order-sensitive).
inline std::uint64_t hash_combine(std::uint64_t a, std::uint64_t b) {
    return mix64(a ^ (mix64(b) + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2)));
}

class RngStream {
public:
    explicit RngStream(std::uint64_t key = 0) : key_(mix64(key ^ 0x2545f4914f6cdd1dULL)) {}

    std::uint64_t next_u64() { return mix64(key_ + 0x9e3779b97f4a7c15ULL * ++counter_); }

    // Uniform in [0, 1).
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, n).
    std::uint64_t next_below(std::uint64_t n) {
        // n is tiny here (scenario counts); modulo bias is negligible.
        return next_u64() % n;
    }

    // +1 or -1 with equal probability.
    double rademacher() { return (next_u64() & 1u) ? 1.0 : -1.0; }

    std::uint64_t key() const { return key_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace cosco
