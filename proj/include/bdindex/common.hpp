#pragma once

#include <cstdint>
#include <cstddef>
#include <span>

// Position convention used across the library: public interfaces speak
// 1-based positions and inclusive ranges [i, j]; each module converts to
// 0-based storage in exactly one place.

namespace bdindex {

using Pos = std::uint64_t;

using byte_span = std::span<const std::uint8_t>;

// Fixed 64-bit scrambler (splitmix64 finalizer). Used to derive the
// fingerprint base from a user seed and as the portable RNG kernel, so
// seeded runs are bit-identical across platforms.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Minimal deterministic RNG: a splitmix64 stream.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() { return splitmix64(state_++); }

    // uniform in [0, bound), bound >= 1; Lemire-style reduction
    std::uint64_t next_below(std::uint64_t bound) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next()) * bound) >> 64);
    }

private:
    std::uint64_t state_;
};

} // namespace bdindex
