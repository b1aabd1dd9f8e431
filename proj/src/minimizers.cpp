#include "bdindex/minimizers.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace bdindex {

std::vector<Pos> minimizers_by_key(std::span<const std::uint64_t> keys,
                                   std::uint64_t w) {
    const std::size_t nk = keys.size();
    if (w < 1) throw std::invalid_argument("window must be positive");
    if (nk < w) throw std::invalid_argument("string shorter than one window");
    std::deque<std::size_t> dq; // key indices, keys nondecreasing front->back
    std::vector<bool> reported(nk, false);
    std::vector<Pos> out;
    for (std::size_t q = 0; q < nk; ++q) {
        while (!dq.empty() && keys[dq.back()] > keys[q]) dq.pop_back();
        dq.push_back(q);
        if (q + 1 < w) continue;
        const std::size_t win_lo = q + 1 - w;
        while (dq.front() < win_lo) dq.pop_front();
        // the tie run is a prefix of the deque; unreported entries are a
        // suffix of that run (new members join at its end)
        const std::uint64_t mk = keys[dq.front()];
        auto run_end = std::partition_point(
            dq.begin(), dq.end(),
            [&](std::size_t idx) { return keys[idx] == mk; });
        const std::size_t tail_at = out.size();
        for (auto it = run_end; it != dq.begin();) {
            --it;
            if (reported[*it]) break;
            reported[*it] = true;
            out.push_back(*it + 1);
        }
        std::reverse(out.begin() + tail_at, out.end());
    }
    return out; // ascending by first-report order
}

std::vector<std::uint64_t> lex_kmer_keys(const LceIndex& idx,
                                         std::uint64_t k) {
    const std::size_t m = idx.size();
    if (k < 1 || k > m) throw std::invalid_argument("k-mer length out of range");
    const std::size_t nk = m - k + 1;
    std::vector<std::uint64_t> keys(nk);
    // walk the suffix array; a new rank starts when the running lcp since
    // the previous kept suffix drops below k
    std::uint64_t rank = 0, run = ~0ull;
    bool first = true;
    for (std::size_t t = 1; t <= m; ++t) {
        run = std::min<std::uint64_t>(run, t > 1 ? idx.lcp_entry(t) : ~0ull);
        const Pos pos = idx.sa_at(t);
        if (pos > nk) continue;
        if (!first && run < k) ++rank;
        keys[pos - 1] = rank;
        first = false;
        run = ~0ull;
    }
    return keys;
}

std::vector<std::uint64_t> kr_kmer_keys(const KrContext& kr, Pos lo, Pos hi,
                                        std::uint64_t k) {
    if (lo < 1 || hi < lo || hi + k - 1 > kr.n())
        throw std::out_of_range("k-mer range out of range");
    std::vector<std::uint64_t> keys;
    keys.reserve(hi - lo + 1);
    for (Pos q = lo; q <= hi; ++q)
        keys.push_back(kr.fragment_hash(q, q + k - 1));
    return keys;
}

std::vector<Pos> lex_minimizers(byte_span s, std::uint64_t w,
                                std::uint64_t k) {
    if (s.size() < w + k - 1)
        throw std::invalid_argument("string shorter than one window");
    LceIndex idx(s);
    const auto keys = lex_kmer_keys(idx, k);
    return minimizers_by_key(keys, w);
}

std::vector<Pos> ran_minimizers(byte_span s, std::uint64_t w, std::uint64_t k,
                                const KrContext& kr, Pos offset) {
    if (s.size() < w + k - 1)
        throw std::invalid_argument("string shorter than one window");
    if (offset < 1 || offset + s.size() - 1 > kr.n())
        throw std::out_of_range("fragment not inside fingerprint context");
    const auto keys = kr_kmer_keys(kr, offset, offset + s.size() - k, k);
    return minimizers_by_key(keys, w);
}

} // namespace bdindex
