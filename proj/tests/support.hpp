#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "bdindex/common.hpp"
#include "bdindex/text.hpp"

namespace testsupport {

using bdindex::Pos;
using bdindex::byte_span;

inline std::vector<std::uint8_t> random_bytes(std::uint64_t seed,
                                              std::size_t n, unsigned sigma,
                                              std::uint8_t base = 'a') {
    bdindex::SplitMix64 rng(seed);
    std::vector<std::uint8_t> s(n);
    for (auto& c : s) c = base + static_cast<std::uint8_t>(rng.next_below(sigma));
    return s;
}

inline bdindex::Text random_text(std::uint64_t seed, std::size_t n,
                                 unsigned sigma) {
    return bdindex::Text(random_bytes(seed, n, sigma));
}

inline std::uint64_t naive_lcp(byte_span a, byte_span b) {
    std::uint64_t m = 0;
    while (m < a.size() && m < b.size() && a[m] == b[m]) ++m;
    return m;
}

// positions ordered by the suffix s[p..n] they start
inline std::vector<Pos> sort_by_suffix(byte_span s, std::vector<Pos> pos) {
    std::sort(pos.begin(), pos.end(), [&](Pos a, Pos b) {
        return std::lexicographical_compare(s.begin() + a - 1, s.end(),
                                            s.begin() + b - 1, s.end());
    });
    return pos;
}

// positions ordered by the reversed prefix rev(s[1..p])
inline std::vector<Pos> sort_by_rev_prefix(byte_span s, std::vector<Pos> pos) {
    const auto rev_prefix = [&](Pos p) {
        std::vector<std::uint8_t> r(s.begin(), s.begin() + p);
        std::reverse(r.begin(), r.end());
        return r;
    };
    std::sort(pos.begin(), pos.end(), [&](Pos a, Pos b) {
        const auto ra = rev_prefix(a), rb = rev_prefix(b);
        return std::lexicographical_compare(ra.begin(), ra.end(), rb.begin(),
                                            rb.end());
    });
    return pos;
}

inline std::vector<std::uint8_t> to_bytes(const std::string& s) {
    return std::vector<std::uint8_t>(s.begin(), s.end());
}

} // namespace testsupport
