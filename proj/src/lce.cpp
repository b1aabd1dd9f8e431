#include "bdindex/lce.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace bdindex {

std::vector<std::uint32_t> build_suffix_array(byte_span s) {
    const std::uint32_t m = static_cast<std::uint32_t>(s.size());
    std::vector<std::uint32_t> sa(m), rank(m), tmp(m), cnt;
    // rank by first letter
    cnt.assign(257, 0);
    for (std::uint32_t i = 0; i < m; ++i) ++cnt[s[i] + 1];
    for (std::uint32_t c = 1; c < 257; ++c) cnt[c] += cnt[c - 1];
    for (std::uint32_t i = 0; i < m; ++i) sa[cnt[s[i]]++] = i;
    rank[sa[0]] = 0;
    for (std::uint32_t t = 1; t < m; ++t)
        rank[sa[t]] = rank[sa[t - 1]] + (s[sa[t]] != s[sa[t - 1]] ? 1 : 0);

    for (std::uint32_t k = 1; k < m && rank[sa[m - 1]] + 1 < m; k <<= 1) {
        // order by second key: suffixes i >= m-k have empty second half
        std::uint32_t w = 0;
        for (std::uint32_t i = m - k; i < m; ++i) tmp[w++] = i;
        for (std::uint32_t t = 0; t < m; ++t)
            if (sa[t] >= k) tmp[w++] = sa[t] - k;
        // stable counting sort by first key
        cnt.assign(rank[sa[m - 1]] + 2, 0);
        for (std::uint32_t i = 0; i < m; ++i) ++cnt[rank[i] + 1];
        for (std::size_t c = 1; c < cnt.size(); ++c) cnt[c] += cnt[c - 1];
        for (std::uint32_t t = 0; t < m; ++t) sa[cnt[rank[tmp[t]]]++] = tmp[t];
        // re-rank
        std::vector<std::uint32_t> next(m);
        next[sa[0]] = 0;
        for (std::uint32_t t = 1; t < m; ++t) {
            const std::uint32_t a = sa[t - 1], b = sa[t];
            const bool same = rank[a] == rank[b] &&
                              (a + k < m ? rank[a + k] : ~0u) ==
                                  (b + k < m ? rank[b + k] : ~0u);
            next[b] = next[a] + (same ? 0 : 1);
        }
        rank.swap(next);
    }
    return sa;
}

std::vector<std::uint32_t> lcp_from_suffix_array(
    byte_span s, const std::vector<std::uint32_t>& sa) {
    const std::uint32_t m = static_cast<std::uint32_t>(s.size());
    std::vector<std::uint32_t> rank(m), lcp(m, 0);
    for (std::uint32_t t = 0; t < m; ++t) rank[sa[t]] = t;
    std::uint32_t h = 0;
    for (std::uint32_t i = 0; i < m; ++i) {
        if (rank[i] == 0) {
            h = 0;
            continue;
        }
        const std::uint32_t j = sa[rank[i] - 1];
        if (h > 0) --h;
        while (i + h < m && j + h < m && s[i + h] == s[j + h]) ++h;
        lcp[rank[i]] = h;
    }
    return lcp;
}

LceIndex::LceIndex(byte_span s) : s_(s) {
    if (s_.empty()) throw std::invalid_argument("empty fragment");
    sa_ = build_suffix_array(s_);
    lcp_ = lcp_from_suffix_array(s_, sa_);
    rank_.resize(sa_.size());
    for (std::uint32_t t = 0; t < sa_.size(); ++t) rank_[sa_[t]] = t;
    rmq_ = BlockRmq<std::uint32_t>(std::span<const std::uint32_t>(lcp_));
}

std::uint64_t LceIndex::lcp(Pos i, Pos j) const {
    const std::size_t m = s_.size();
    if (i < 1 || i > m || j < 1 || j > m)
        throw std::out_of_range("suffix start out of range");
    if (i == j) return m - i + 1;
    std::size_t a = rank_[i - 1], b = rank_[j - 1];
    if (a > b) std::swap(a, b);
    return rmq_.min(a + 1, b);
}

std::uint64_t LceIndex::words() const {
    return (sa_.size() + rank_.size() + lcp_.size()) / 2 + rmq_.words() + 2;
}

std::strong_ordering compare_rotations(const LceIndex& idx, Pos i, Pos j) {
    const std::size_t len = idx.size();
    if (i < 1 || i > len || j < 1 || j > len)
        throw std::out_of_range("rotation start out of range");
    return compare_rotations_with(
        len, i, j, [&](Pos x, Pos y) { return idx.lcp(x, y); },
        [&](Pos x) { return idx.fragment()[x - 1]; });
}

std::strong_ordering compare_rotations_in_window(const LceIndex& idx,
                                                 Pos win_start,
                                                 std::size_t len, Pos i,
                                                 Pos j) {
    const byte_span frag = idx.fragment();
    if (win_start < 1 || win_start + len - 1 > frag.size())
        throw std::out_of_range("window out of range");
    const auto lcp = [&](Pos x, Pos y) {
        const std::uint64_t room = len - std::max(x, y) + 1;
        const std::uint64_t raw =
            idx.lcp(win_start + x - 1, win_start + y - 1);
        return std::min(raw, room);
    };
    const auto at = [&](Pos x) { return frag[win_start + x - 2]; };
    return compare_rotations_with(len, i, j, lcp, at);
}

} // namespace bdindex
