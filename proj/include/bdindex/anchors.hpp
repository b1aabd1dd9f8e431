#pragma once

#include <vector>

#include "bdindex/common.hpp"
#include "bdindex/text.hpp"

namespace bdindex {

enum class AnchorKind : std::uint8_t { lex = 0, randomized = 1 };

// Reduced bidirectional anchor parameters. For every window W of length ell,
// the anchor is a rotation start in [1, ell - r]:
//  - lex: leftmost start of the lexicographically minimal rotation;
//  - randomized: start c of the minimal-fingerprint (r+1)-fragment, ties
//    among fragments broken by the rotations at c + r + 1 (wrapping past
//    ell to 1), leftmost c on full ties; reported anchor is that c.
struct AnchorScheme {
    std::uint64_t ell = 0;
    std::uint64_t r = 0;
    AnchorKind kind = AnchorKind::randomized;
    std::uint64_t seed = 0;
};

struct AnchorSet {
    AnchorScheme scheme;
    std::uint64_t n = 0;               // text length the set was built from
    std::vector<Pos> positions;        // ascending, distinct, in [1, n - r]
};

struct AnchorStats {
    std::uint64_t blocks = 0;
    std::uint64_t peak_block_words = 0; // largest per-block working set
};

// r = ceil(4 log_sigma ell), clamped to [0, ell - 1]
std::uint64_t default_r(std::uint64_t ell, unsigned sigma);

// Anchor of one window, window coordinates [1, ell - r].
Pos naive_window_anchor(byte_span window, const AnchorScheme& scheme);

// Per-window scan with materialized rotations / re-hashed fragments. Oracle.
AnchorSet naive_anchors(const Text& text, const AnchorScheme& scheme);

// Block-decomposed computation: overlapping blocks of length block_len
// (>= 2 ell), each owning the windows that start in its first
// block_len - ell + 1 positions; candidates are the block's minimizers with
// (w, k) = (ell - r, r + 1), resolved per window by rotation comparisons.
// The result does not depend on block_len or threads.
AnchorSet fast_anchors(const Text& text, const AnchorScheme& scheme,
                       std::uint64_t block_len, unsigned threads = 1,
                       AnchorStats* stats = nullptr);

// Anchor of the pattern's first window; window must have length ell.
Pos pattern_anchor(byte_span window, const AnchorScheme& scheme);

} // namespace bdindex
