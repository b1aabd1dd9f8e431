#pragma once

#include <vector>

#include "bdindex/common.hpp"
#include "bdindex/kr_fingerprint.hpp"
#include "bdindex/lce.hpp"

namespace bdindex {

// (w, k)-minimizers: for every window of w consecutive k-mers, ALL tied
// minimal positions under the chosen order. Union over windows, positions
// ascending and distinct.

// One integer key per k-mer start; keys[q] describes position q+1. Any two
// k-mers compare like their keys. The deque keeps tied keys, so a window's
// whole tie run is reported.
std::vector<Pos> minimizers_by_key(std::span<const std::uint64_t> keys,
                                   std::uint64_t w);

// Lexicographic k-mer keys: dense ranks read off the suffix array; two
// starts get equal keys iff their k-mers are equal byte strings.
std::vector<std::uint64_t> lex_kmer_keys(const LceIndex& idx, std::uint64_t k);

// Fingerprint k-mer keys for starts lo..hi (positions in kr's fragment).
std::vector<std::uint64_t> kr_kmer_keys(const KrContext& kr, Pos lo, Pos hi,
                                        std::uint64_t k);

std::vector<Pos> lex_minimizers(byte_span s, std::uint64_t w, std::uint64_t k);

// kr covers an enclosing fragment; s starts at `offset` inside it (1-based).
std::vector<Pos> ran_minimizers(byte_span s, std::uint64_t w, std::uint64_t k,
                                const KrContext& kr, Pos offset = 1);

} // namespace bdindex
